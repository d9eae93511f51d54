#include "bdqn/corridor_world.hpp"

#include <algorithm>

#include "bdqn/error.hpp"

namespace bdqn {

namespace {

constexpr int kRows = static_cast<int>(CorridorWorld::kLayout.size());
constexpr int kCols = static_cast<int>(CorridorWorld::kLayout[0].size());
constexpr std::array<CorridorWorld::Cell, 4> kMoves = {{{-1, 0}, {0, 1}, {1, 0}, {0, -1}}};

}  // namespace

CorridorWorld::CorridorWorld(int max_frames, double living_cost, double bump_cost)
    : max_frames_(max_frames), living_cost_(living_cost), bump_cost_(bump_cost) {
  if (max_frames < 1) throw ConfigError("corridor: max_frames must be positive");
  if (living_cost < 0.0 || bump_cost < 0.0) throw ConfigError("corridor: costs must be >= 0");
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      const char ch = kLayout[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (ch == '#') continue;
      open_cells_.push_back({r, c});
      if (ch == 'G') goal_ = {r, c};
    }
  }
  pos_ = kStarts[0];
}

EnvSpec CorridorWorld::spec() const {
  return {4, static_cast<int>(open_cells_.size()) + 2, max_frames_};
}

std::unique_ptr<Environment> CorridorWorld::clone() const {
  return std::make_unique<CorridorWorld>(*this);
}

bool CorridorWorld::is_open(Cell c) const {
  return std::find(open_cells_.begin(), open_cells_.end(), c) != open_cells_.end();
}

CorridorWorld::Cell CorridorWorld::start_for_seed(std::uint64_t seed) {
  return kStarts[seed % kStarts.size()];
}

void CorridorWorld::place(Cell c) {
  if (!is_open(c) || c == goal_) throw UsageError("corridor: cannot place agent there");
  pos_ = c;
}

int CorridorWorld::cell_index(Cell c) const {
  auto it = std::find(open_cells_.begin(), open_cells_.end(), c);
  return static_cast<int>(it - open_cells_.begin());
}

std::vector<double> CorridorWorld::observe() const {
  std::vector<double> obs(open_cells_.size() + 2, 0.0);
  obs[static_cast<std::size_t>(cell_index(pos_))] = 1.0;
  obs[open_cells_.size()] = static_cast<double>(pos_.first) / (kRows - 1);
  obs[open_cells_.size() + 1] = static_cast<double>(pos_.second) / (kCols - 1);
  return obs;
}

std::vector<double> CorridorWorld::do_reset(std::uint64_t seed) {
  pos_ = start_for_seed(seed);
  return observe();
}

EnvFrame CorridorWorld::do_step(int action) {
  const auto [dr, dc] = kMoves[static_cast<std::size_t>(action)];
  const Cell next{pos_.first + dr, pos_.second + dc};
  if (!is_open(next)) return {observe(), -bump_cost_, false, false};
  pos_ = next;
  if (pos_ == goal_) return {observe(), 1.0, true, false};
  return {observe(), -living_cost_, false, false};
}

}  // namespace bdqn
