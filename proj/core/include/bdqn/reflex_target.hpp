#pragma once

#include "bdqn/envs.hpp"
#include "bdqn/rng.hpp"

namespace bdqn {

// A target appears after a random delay and stays visible for `window`
// frames. Actions: WAIT (0) and FIRE (1).
//   FIRE while visible: +1, target disappears, next delay is drawn.
//   FIRE while hidden:  0 and the episode ends (misfire).
//   WAIT:               -wait_cost; if the target was on its last visible
//                       frame it escapes and the episode ends.
// Delays are uniform in [min_delay, max_delay], drawn from a generator seeded
// by reset(seed).
//
// Observation: [visible, one-hot target age (window), one-hot frames since
// the last hit or reset, capped at max_delay (max_delay + 1)].
struct ReflexParams {
  int min_delay = 1;
  int max_delay = 10;
  int window = 3;
  double wait_cost = 0.01;
  int max_frames = 200;
};

class ReflexTarget final : public Environment {
 public:
  static constexpr int kWait = 0;
  static constexpr int kFire = 1;

  using Params = ReflexParams;

  explicit ReflexTarget(Params p = {});

  std::string name() const override { return "reflex"; }
  EnvSpec spec() const override;
  std::unique_ptr<Environment> clone() const override;

  bool target_visible() const { return visible_; }
  int target_age() const { return age_; }
  int countdown() const { return countdown_; }

 protected:
  std::vector<double> do_reset(std::uint64_t seed) override;
  EnvFrame do_step(int action) override;

 private:
  std::vector<double> observe() const;
  int draw_delay();

  Params p_;
  Rng rng_;
  bool visible_ = false;
  int age_ = 0;
  int since_ = 0;
  int countdown_ = 0;
};

}  // namespace bdqn
