#include "bdqn/replay.hpp"

#include <cmath>
#include <string>

#include "bdqn/error.hpp"

namespace bdqn {

void validate(const Transition& t, int d_max) {
  auto fail = [](const std::string& what) { throw ValidationError("transition: " + what); };
  if (t.duration < 1 || t.duration > d_max) fail("duration outside 1..d_max");
  if (t.frames_elapsed < 1 || t.frames_elapsed > t.duration) {
    fail("frames_elapsed outside 1..duration");
  }
  if (t.frames_elapsed < t.duration && !t.terminal && !t.truncated) {
    fail("short duration without terminal or truncation");
  }
  if (t.action < 0) fail("negative action");
  if (t.state.empty() || t.state.size() != t.next_state.size()) fail("state width mismatch");
  if (!std::isfinite(t.reward)) fail("non-finite reward");
}

ReplayMemory::ReplayMemory(std::size_t capacity, int d_max) : capacity_(capacity), d_max_(d_max) {
  if (capacity == 0) throw ConfigError("replay capacity must be positive");
  if (d_max < 1) throw ConfigError("d_max must be at least 1");
  items_.reserve(capacity);
}

void ReplayMemory::push(Transition t) {
  validate(t, d_max_);
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
  } else {
    items_[cursor_] = std::move(t);
  }
  cursor_ = (cursor_ + 1) % capacity_;
}

std::optional<std::vector<Transition>> ReplayMemory::sample(std::size_t batch_size,
                                                            Rng& rng) const {
  if (batch_size == 0) throw UsageError("sample: batch_size must be positive");
  if (items_.size() < batch_size) return std::nullopt;
  std::vector<Transition> batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) {
    batch.push_back(items_[uniform_index(rng, items_.size())]);
  }
  return batch;
}

}  // namespace bdqn
