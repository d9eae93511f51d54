#include "bdqn/reflex_target.hpp"

#include <algorithm>

#include "bdqn/error.hpp"

namespace bdqn {

ReflexTarget::ReflexTarget(Params p) : p_(p) {
  if (p.min_delay < 1 || p.max_delay < p.min_delay) {
    throw ConfigError("reflex: need 1 <= min_delay <= max_delay");
  }
  if (p.window < 1) throw ConfigError("reflex: window must be positive");
  if (p.wait_cost < 0.0) throw ConfigError("reflex: wait_cost must be >= 0");
  if (p.max_frames < 1) throw ConfigError("reflex: max_frames must be positive");
}

EnvSpec ReflexTarget::spec() const { return {2, 1 + p_.window + p_.max_delay + 1, p_.max_frames}; }

std::unique_ptr<Environment> ReflexTarget::clone() const {
  return std::make_unique<ReflexTarget>(*this);
}

int ReflexTarget::draw_delay() {
  return p_.min_delay +
         static_cast<int>(uniform_index(rng_, static_cast<std::size_t>(p_.max_delay - p_.min_delay + 1)));
}

std::vector<double> ReflexTarget::observe() const {
  std::vector<double> obs(static_cast<std::size_t>(spec().observation_width), 0.0);
  if (visible_) {
    obs[0] = 1.0;
    obs[1 + static_cast<std::size_t>(age_)] = 1.0;
  }
  obs[1 + static_cast<std::size_t>(p_.window) + static_cast<std::size_t>(std::min(since_, p_.max_delay))] = 1.0;
  return obs;
}

std::vector<double> ReflexTarget::do_reset(std::uint64_t seed) {
  rng_.seed(seed);
  visible_ = false;
  age_ = 0;
  since_ = 0;
  countdown_ = draw_delay();
  return observe();
}

EnvFrame ReflexTarget::do_step(int action) {
  if (action == kFire) {
    if (!visible_) return {observe(), 0.0, true, false};
    visible_ = false;
    age_ = 0;
    since_ = 0;
    countdown_ = draw_delay();
    return {observe(), 1.0, false, false};
  }
  ++since_;
  if (visible_) {
    ++age_;
    if (age_ >= p_.window) {
      visible_ = false;
      age_ = 0;
      return {observe(), -p_.wait_cost, true, false};
    }
  } else if (--countdown_ == 0) {
    visible_ = true;
    age_ = 0;
  }
  return {observe(), -p_.wait_cost, false, false};
}

}  // namespace bdqn
