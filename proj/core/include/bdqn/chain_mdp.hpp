#pragma once

#include "bdqn/envs.hpp"

namespace bdqn {

// Deterministic chain of cells 0..length-1. The agent starts in cell 0;
// LEFT (0) and RIGHT (1) move one cell, LEFT at cell 0 stays put. Entering the
// last cell pays 1 and ends the episode; every other frame pays 0.
// Observation: one-hot of the current cell. Reset ignores the seed.
class ChainMdp final : public Environment {
 public:
  static constexpr int kLeft = 0;
  static constexpr int kRight = 1;

  explicit ChainMdp(int length = 6, int max_frames = 50);

  std::string name() const override { return "chain"; }
  EnvSpec spec() const override;
  std::unique_ptr<Environment> clone() const override;

  int cell() const { return cell_; }
  int length() const { return length_; }

 protected:
  std::vector<double> do_reset(std::uint64_t seed) override;
  EnvFrame do_step(int action) override;

 private:
  std::vector<double> observe() const;

  int length_;
  int max_frames_;
  int cell_ = 0;
};

}  // namespace bdqn
