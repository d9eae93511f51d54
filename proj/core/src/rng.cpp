#include "bdqn/rng.hpp"

#include <sstream>
#include <vector>

#include "bdqn/error.hpp"

namespace bdqn {

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw UsageError("uniform_index: empty range");
  auto k = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  return k < n ? k : n - 1;
}

std::size_t sample_categorical(Rng& rng, std::span<const double> probs) {
  if (probs.empty()) throw UsageError("sample_categorical: empty distribution");
  const double u = uniform01(rng);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  // Rounding left u above the final partial sum.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return probs.size() - 1;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Rng derive_stream(std::uint64_t master_seed, std::string_view name) {
  const std::uint64_t h = fnv1a(name);
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32)};
  return Rng(seq);
}

RngStreams::RngStreams(std::uint64_t master_seed) : master_seed_(master_seed) {}

Rng& RngStreams::get(std::string_view name) {
  auto it = streams_.find(name);
  if (it == streams_.end()) {
    it = streams_.emplace(std::string(name), derive_stream(master_seed_, name)).first;
  }
  return it->second;
}

std::map<std::string, std::string> RngStreams::save_state() const {
  std::map<std::string, std::string> out;
  for (const auto& [name, engine] : streams_) {
    std::ostringstream os;
    os << engine;
    out.emplace(name, os.str());
  }
  return out;
}

void RngStreams::restore_state(const std::map<std::string, std::string>& states) {
  for (const auto& [name, text] : states) {
    Rng engine;
    std::istringstream is(text);
    is >> engine;
    if (is.fail()) throw FormatError("corrupt RNG state for stream '" + name + "'");
    streams_.insert_or_assign(name, engine);
  }
}

}  // namespace bdqn
