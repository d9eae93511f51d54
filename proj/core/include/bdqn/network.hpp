#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "bdqn/nnet.hpp"
#include "bdqn/rng.hpp"

namespace bdqn {

// Hidden-layer widths for the shared trunk and the two heads. The trunk's
// last hidden width is the feature width both heads consume.
struct NetworkShape {
  std::size_t input_width = 0;
  std::vector<std::size_t> trunk{64};
  std::vector<std::size_t> q_head{64};
  std::vector<std::size_t> duration_head{32};
  std::size_t q_outputs = 0;
  // 0 means no duration head (baseline agents).
  std::size_t duration_outputs = 0;
};

// Shared trunk feeding a Q head and an optional duration head.
struct NetworkParams {
  LayerStack trunk;
  LayerStack q_head;
  LayerStack duration_head;

  std::size_t input_width() const { return bdqn::input_width(trunk); }
  std::size_t feature_width() const { return output_width(trunk); }
  std::size_t q_width() const { return output_width(q_head); }
  std::size_t duration_width() const { return output_width(duration_head); }
  bool has_duration_head() const { return !duration_head.empty(); }

  // Throws DimensionError unless trunk output feeds both heads.
  void validate() const;

  bool operator==(const NetworkParams&) const = default;
};

// Builds and initializes a network. Each part draws from its own named
// stream so that adding or removing the duration head does not change the
// trunk or Q head. The duration head's output layer starts at zero, giving a
// uniform initial duration policy.
NetworkParams build_network(const NetworkShape& shape, RngStreams& streams);

// Forward through the trunk only. The trunk ends in a relu layer of the last
// trunk width; an empty trunk list yields the identity features.
std::vector<double> trunk_features(const NetworkParams& net, std::span<const double> state,
                                   ForwardCache* cache = nullptr);
std::vector<double> q_values(const NetworkParams& net, std::span<const double> state);
std::vector<double> duration_logits(const NetworkParams& net, std::span<const double> state);

// Copies the trunk and Q head (the parts a target network needs).
void copy_q_path(const NetworkParams& from, NetworkParams& to);

nlohmann::ordered_json to_json(const NetworkParams& net);
NetworkParams network_from_json(const nlohmann::json& j);

}  // namespace bdqn
