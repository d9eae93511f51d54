#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>

namespace bdqn {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits; independent of the
// standard library's distribution implementations.
double uniform01(Rng& rng);

// Uniform integer in [0, n). n must be positive.
std::size_t uniform_index(Rng& rng, std::size_t n);

// Inverse-CDF draw from a discrete distribution; returns an index into probs.
std::size_t sample_categorical(Rng& rng, std::span<const double> probs);

// Deterministically derives an independent generator for (master seed, name).
Rng derive_stream(std::uint64_t master_seed, std::string_view name);

// Stream names used by the training loop. Each consumer draws only from its
// own stream, so enabling or disabling one consumer never shifts another.
namespace stream {
inline constexpr std::string_view kEnv = "env";
inline constexpr std::string_view kAction = "action";
inline constexpr std::string_view kDuration = "duration";
inline constexpr std::string_view kReplay = "replay";
inline constexpr std::string_view kInitTrunk = "init.trunk";
inline constexpr std::string_view kInitQHead = "init.q_head";
inline constexpr std::string_view kInitDurationHead = "init.duration_head";
}  // namespace stream

// A set of named generators derived from one master seed.
class RngStreams {
 public:
  RngStreams() = default;
  explicit RngStreams(std::uint64_t master_seed);

  std::uint64_t master_seed() const { return master_seed_; }

  // Creates the stream on first use.
  Rng& get(std::string_view name);

  // Textual engine states keyed by stream name, for checkpoints.
  std::map<std::string, std::string> save_state() const;
  void restore_state(const std::map<std::string, std::string>& states);

 private:
  std::uint64_t master_seed_ = 0;
  std::map<std::string, Rng, std::less<>> streams_;
};

}  // namespace bdqn
