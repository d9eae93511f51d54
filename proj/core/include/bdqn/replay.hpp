#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bdqn/rng.hpp"

namespace bdqn {

// One decision step: action held for `duration` frames, of which
// `frames_elapsed` actually ran before the episode ended or was cut off.
struct Transition {
  std::vector<double> state;
  int action = 0;
  int duration = 1;
  // Discounted per frame: sum_k gamma^k r_k over the frames that ran.
  double reward = 0.0;
  std::vector<double> next_state;
  int frames_elapsed = 1;
  bool terminal = false;
  // Hit the episode frame limit without terminating; bootstraps normally.
  bool truncated = false;
  // Bandit reward recorded when the transition was collected.
  double bandit_reward = 0.0;
  // Index into the Q head that produced `action` (differs from `action` only
  // for agents whose Q head covers action/duration pairs).
  int q_index = 0;

  bool operator==(const Transition&) const = default;
};

// Throws ValidationError when the transition violates its invariants.
void validate(const Transition& t, int d_max);

// Fixed-capacity ring buffer; once full, each push overwrites the oldest entry.
class ReplayMemory {
 public:
  ReplayMemory(std::size_t capacity, int d_max);

  void push(Transition t);

  // Uniform draws with replacement. std::nullopt when fewer than batch_size
  // transitions are stored.
  std::optional<std::vector<Transition>> sample(std::size_t batch_size, Rng& rng) const;

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return items_.empty(); }

  // Storage order (not insertion order once the ring wraps).
  const std::vector<Transition>& items() const { return items_; }

 private:
  std::size_t capacity_;
  int d_max_;
  std::size_t cursor_ = 0;
  std::vector<Transition> items_;
};

}  // namespace bdqn
