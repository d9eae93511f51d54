#include "bdqn/chain_mdp.hpp"

#include "bdqn/error.hpp"

namespace bdqn {

ChainMdp::ChainMdp(int length, int max_frames) : length_(length), max_frames_(max_frames) {
  if (length < 2) throw ConfigError("chain: length must be at least 2");
  if (max_frames < 1) throw ConfigError("chain: max_frames must be positive");
}

EnvSpec ChainMdp::spec() const { return {2, length_, max_frames_}; }

std::unique_ptr<Environment> ChainMdp::clone() const { return std::make_unique<ChainMdp>(*this); }

std::vector<double> ChainMdp::observe() const {
  std::vector<double> obs(static_cast<std::size_t>(length_), 0.0);
  obs[static_cast<std::size_t>(cell_)] = 1.0;
  return obs;
}

std::vector<double> ChainMdp::do_reset(std::uint64_t) {
  cell_ = 0;
  return observe();
}

EnvFrame ChainMdp::do_step(int action) {
  if (action == kRight) {
    ++cell_;
  } else if (cell_ > 0) {
    --cell_;
  }
  const bool goal = cell_ == length_ - 1;
  return {observe(), goal ? 1.0 : 0.0, goal, false};
}

}  // namespace bdqn
