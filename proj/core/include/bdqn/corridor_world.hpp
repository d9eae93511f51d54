#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "bdqn/envs.hpp"

namespace bdqn {

// Fixed grid of long straight corridors joined by T-junctions. Past every
// turn the corridor continues into a two-cell dead end, so holding a move past
// the junction costs a detour. Segment lengths are 7, 9, 7 and 9 moves.
//
// Actions: 0 up, 1 right, 2 down, 3 left. Rewards per frame: +1 on entering
// the goal (terminal), -bump_cost when the move hits a wall (position
// unchanged), -living_cost otherwise.
//
// Observation: one-hot over open cells (row-major order) followed by row and
// column normalized to [0, 1].
//
// Start pose for reset(seed) is kStarts[seed % 8]; the poses lie along the
// route to the goal:
//   0 -> (1, 1)    start of the first corridor
//   1 -> (1, 4)    inside the first corridor
//   2 -> (1, 8)    first junction
//   3 -> (5, 8)    inside the second corridor
//   4 -> (10, 8)   second junction
//   5 -> (10, 12)  inside the third corridor
//   6 -> (10, 15)  third junction
//   7 -> (14, 15)  inside the last corridor
class CorridorWorld final : public Environment {
 public:
  using Cell = std::pair<int, int>;

  static constexpr std::array<std::string_view, 21> kLayout = {
      "###################",
      "#..........########",
      "########.##########",
      "########.##########",
      "########.##########",
      "########.##########",
      "########.##########",
      "########.##########",
      "########.##########",
      "########.##########",
      "########..........#",
      "########.######.###",
      "########.######.###",
      "###############.###",
      "###############.###",
      "###############.###",
      "###############.###",
      "###############.###",
      "###############.###",
      "###############G###",
      "###################",
  };
  static constexpr std::array<Cell, 8> kStarts = {
      {{1, 1}, {1, 4}, {1, 8}, {5, 8}, {10, 8}, {10, 12}, {10, 15}, {14, 15}}};

  CorridorWorld(int max_frames = 200, double living_cost = 0.01, double bump_cost = 0.1);

  std::string name() const override { return "corridor"; }
  EnvSpec spec() const override;
  std::unique_ptr<Environment> clone() const override;

  Cell position() const { return pos_; }
  Cell goal() const { return goal_; }
  const std::vector<Cell>& open_cells() const { return open_cells_; }
  bool is_open(Cell c) const;
  static Cell start_for_seed(std::uint64_t seed);

  // Places the agent directly; used by analysis code enumerating states.
  void place(Cell c);

 protected:
  std::vector<double> do_reset(std::uint64_t seed) override;
  EnvFrame do_step(int action) override;

 private:
  std::vector<double> observe() const;
  int cell_index(Cell c) const;

  int max_frames_;
  double living_cost_;
  double bump_cost_;
  std::vector<Cell> open_cells_;
  Cell goal_{};
  Cell pos_{};
};

}  // namespace bdqn
