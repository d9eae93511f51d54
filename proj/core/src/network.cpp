#include "bdqn/network.hpp"

#include "bdqn/error.hpp"

namespace bdqn {

namespace {

LayerStack make_trunk(std::size_t in, const std::vector<std::size_t>& widths) {
  LayerStack layers;
  std::size_t width = in;
  for (std::size_t w : widths) {
    layers.emplace_back(width, w, Activation::relu);
    width = w;
  }
  return layers;
}

}  // namespace

void NetworkParams::validate() const {
  if (trunk.empty()) throw DimensionError("network: trunk must have at least one layer");
  for (std::size_t i = 1; i < trunk.size(); ++i) {
    if (trunk[i].in_size() != trunk[i - 1].out_size()) {
      throw DimensionError("network: trunk layer chain mismatch");
    }
  }
  if (q_head.empty() || q_head.front().in_size() != feature_width()) {
    throw DimensionError("network: Q head input must equal trunk output width");
  }
  if (!duration_head.empty() && duration_head.front().in_size() != feature_width()) {
    throw DimensionError("network: duration head input must equal trunk output width");
  }
}

NetworkParams build_network(const NetworkShape& shape, RngStreams& streams) {
  if (shape.input_width == 0 || shape.q_outputs == 0) {
    throw DimensionError("network: input width and Q outputs must be positive");
  }
  if (shape.trunk.empty()) throw ConfigError("network: trunk needs at least one hidden layer");
  NetworkParams net;
  net.trunk = make_trunk(shape.input_width, shape.trunk);
  const std::size_t features = shape.trunk.back();
  net.q_head = make_stack(features, shape.q_head, shape.q_outputs);
  init_uniform(net.trunk, streams.get(stream::kInitTrunk));
  init_uniform(net.q_head, streams.get(stream::kInitQHead));
  if (shape.duration_outputs > 0) {
    net.duration_head = make_stack(features, shape.duration_head, shape.duration_outputs);
    init_uniform(net.duration_head, streams.get(stream::kInitDurationHead));
    zero_layer(net.duration_head.back());
  }
  net.validate();
  return net;
}

std::vector<double> trunk_features(const NetworkParams& net, std::span<const double> state,
                                   ForwardCache* cache) {
  return forward(net.trunk, state, cache);
}

std::vector<double> q_values(const NetworkParams& net, std::span<const double> state) {
  return forward(net.q_head, trunk_features(net, state));
}

std::vector<double> duration_logits(const NetworkParams& net, std::span<const double> state) {
  if (!net.has_duration_head()) throw UsageError("network has no duration head");
  return forward(net.duration_head, trunk_features(net, state));
}

void copy_q_path(const NetworkParams& from, NetworkParams& to) {
  to.trunk = from.trunk;
  to.q_head = from.q_head;
}

nlohmann::ordered_json to_json(const NetworkParams& net) {
  nlohmann::ordered_json j;
  j["trunk"] = to_json(net.trunk);
  j["q_head"] = to_json(net.q_head);
  j["duration_head"] = to_json(net.duration_head);
  return j;
}

NetworkParams network_from_json(const nlohmann::json& j) {
  NetworkParams net;
  net.trunk = layers_from_json(j.at("trunk"));
  net.q_head = layers_from_json(j.at("q_head"));
  net.duration_head = layers_from_json(j.at("duration_head"));
  net.validate();
  return net;
}

}  // namespace bdqn
