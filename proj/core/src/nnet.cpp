#include "bdqn/nnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bdqn/error.hpp"

namespace bdqn {

std::string to_string(Activation a) {
  return a == Activation::relu ? "relu" : "identity";
}

Activation activation_from_string(const std::string& name) {
  if (name == "relu") return Activation::relu;
  if (name == "identity") return Activation::identity;
  throw FormatError("unknown activation '" + name + "'");
}

DenseLayer::DenseLayer(std::size_t in, std::size_t out, Activation act)
    : in_(in), out_(out), act_(act), weights_(in * out, 0.0), biases_(out, 0.0) {
  if (in == 0 || out == 0) throw DimensionError("DenseLayer: zero-sized dimension");
}

bool DenseLayer::all_finite() const {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(weights_.begin(), weights_.end(), finite) &&
         std::all_of(biases_.begin(), biases_.end(), finite);
}

LayerStack make_stack(std::size_t in, const std::vector<std::size_t>& hidden, std::size_t out) {
  LayerStack layers;
  std::size_t width = in;
  for (std::size_t h : hidden) {
    layers.emplace_back(width, h, Activation::relu);
    width = h;
  }
  layers.emplace_back(width, out, Activation::identity);
  return layers;
}

void init_uniform(LayerStack& layers, Rng& rng) {
  for (auto& layer : layers) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in_size()));
    for (double& w : layer.weights()) w = (2.0 * uniform01(rng) - 1.0) * bound;
    for (double& b : layer.biases()) b = (2.0 * uniform01(rng) - 1.0) * bound;
  }
}

void zero_layer(DenseLayer& layer) {
  std::fill(layer.weights().begin(), layer.weights().end(), 0.0);
  std::fill(layer.biases().begin(), layer.biases().end(), 0.0);
}

std::size_t input_width(const LayerStack& layers) {
  return layers.empty() ? 0 : layers.front().in_size();
}

std::size_t output_width(const LayerStack& layers) {
  return layers.empty() ? 0 : layers.back().out_size();
}

GradientBundle zeros_like(const LayerStack& layers) {
  GradientBundle grads;
  grads.reserve(layers.size());
  for (const auto& layer : layers) {
    grads.push_back({std::vector<double>(layer.weights().size(), 0.0),
                     std::vector<double>(layer.biases().size(), 0.0)});
  }
  return grads;
}

bool congruent(const LayerStack& layers, const GradientBundle& grads) {
  if (layers.size() != grads.size()) return false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (grads[i].weights.size() != layers[i].weights().size() ||
        grads[i].biases.size() != layers[i].biases().size()) {
      return false;
    }
  }
  return true;
}

void scale(GradientBundle& grads, double factor) {
  for (auto& g : grads) {
    for (double& v : g.weights) v *= factor;
    for (double& v : g.biases) v *= factor;
  }
}

bool all_finite(const GradientBundle& grads) {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(grads.begin(), grads.end(), [&](const LayerGrad& g) {
    return std::all_of(g.weights.begin(), g.weights.end(), finite) &&
           std::all_of(g.biases.begin(), g.biases.end(), finite);
  });
}

std::vector<double> forward(const LayerStack& layers, std::span<const double> input,
                            ForwardCache* cache) {
  if (layers.empty()) throw DimensionError("forward: empty layer stack");
  if (input.size() != layers.front().in_size()) {
    throw DimensionError("forward: input width " + std::to_string(input.size()) +
                         " does not match layer input " +
                         std::to_string(layers.front().in_size()));
  }
  if (cache) {
    cache->inputs.clear();
    cache->preactivations.clear();
  }
  std::vector<double> x(input.begin(), input.end());
  for (const auto& layer : layers) {
    if (x.size() != layer.in_size()) {
      throw DimensionError("forward: layer chain width mismatch");
    }
    std::vector<double> z(layer.out_size());
    const auto w = layer.weights();
    const auto b = layer.biases();
    const std::size_t in = layer.in_size();
    for (std::size_t r = 0; r < layer.out_size(); ++r) {
      double acc = b[r];
      const double* row = w.data() + r * in;
      for (std::size_t c = 0; c < in; ++c) acc += row[c] * x[c];
      z[r] = acc;
    }
    std::vector<double> y = z;
    if (layer.activation() == Activation::relu) {
      for (double& v : y) v = v > 0.0 ? v : 0.0;
    }
    if (cache) {
      cache->inputs.push_back(std::move(x));
      cache->preactivations.push_back(std::move(z));
    }
    x = std::move(y);
  }
  return x;
}

std::vector<double> backward(const LayerStack& layers, const ForwardCache& cache,
                             std::span<const double> grad_output, GradientBundle& grads) {
  if (cache.inputs.size() != layers.size() || cache.preactivations.size() != layers.size()) {
    throw InternalError("backward: cache does not match layer stack");
  }
  if (!congruent(layers, grads)) throw InternalError("backward: gradient bundle shape mismatch");
  if (grad_output.size() != output_width(layers)) {
    throw DimensionError("backward: grad_output width mismatch");
  }

  std::vector<double> delta(grad_output.begin(), grad_output.end());
  for (std::size_t li = layers.size(); li-- > 0;) {
    const auto& layer = layers[li];
    const auto& x = cache.inputs[li];
    const auto& z = cache.preactivations[li];
    if (x.size() != layer.in_size() || z.size() != layer.out_size()) {
      throw InternalError("backward: cached activation width mismatch");
    }
    if (layer.activation() == Activation::relu) {
      for (std::size_t r = 0; r < delta.size(); ++r) {
        if (z[r] <= 0.0) delta[r] = 0.0;
      }
    }
    const std::size_t in = layer.in_size();
    auto& g = grads[li];
    std::vector<double> grad_in(in, 0.0);
    const auto w = layer.weights();
    for (std::size_t r = 0; r < layer.out_size(); ++r) {
      const double d = delta[r];
      if (d == 0.0) continue;
      g.biases[r] += d;
      double* grow = g.weights.data() + r * in;
      const double* wrow = w.data() + r * in;
      for (std::size_t c = 0; c < in; ++c) {
        grow[c] += d * x[c];
        grad_in[c] += wrow[c] * d;
      }
    }
    delta = std::move(grad_in);
  }
  return delta;
}

bool sgd_step(LayerStack& layers, const GradientBundle& grads, double learning_rate) {
  if (!congruent(layers, grads)) throw DimensionError("sgd_step: gradient shape mismatch");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("sgd_step: learning rate must be finite and non-negative");
  }
  if (!all_finite(grads)) return false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    auto w = layers[i].weights();
    auto b = layers[i].biases();
    for (std::size_t k = 0; k < w.size(); ++k) w[k] -= learning_rate * grads[i].weights[k];
    for (std::size_t k = 0; k < b.size(); ++k) b[k] -= learning_rate * grads[i].biases[k];
  }
  return true;
}

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw std::domain_error("softmax: empty logits");
  double top = logits[0];
  for (double v : logits) {
    if (!std::isfinite(v)) throw std::domain_error("softmax: non-finite logit");
    top = std::max(top, v);
  }
  std::vector<double> p(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - top);
    total += p[i];
  }
  for (double& v : p) {
    v /= total;
    // exp underflow would break strict positivity.
    if (v < std::numeric_limits<double>::min()) v = std::numeric_limits<double>::min();
  }
  return p;
}

nlohmann::ordered_json to_json(const LayerStack& layers) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& layer : layers) {
    nlohmann::ordered_json j;
    j["in"] = layer.in_size();
    j["out"] = layer.out_size();
    j["activation"] = to_string(layer.activation());
    j["weights"] = std::vector<double>(layer.weights().begin(), layer.weights().end());
    j["biases"] = std::vector<double>(layer.biases().begin(), layer.biases().end());
    arr.push_back(std::move(j));
  }
  return arr;
}

LayerStack layers_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw FormatError("layer list must be an array");
  LayerStack layers;
  for (const auto& item : j) {
    const auto in = item.at("in").get<std::size_t>();
    const auto out = item.at("out").get<std::size_t>();
    DenseLayer layer(in, out, activation_from_string(item.at("activation").get<std::string>()));
    const auto w = item.at("weights").get<std::vector<double>>();
    const auto b = item.at("biases").get<std::vector<double>>();
    if (w.size() != in * out || b.size() != out) {
      throw FormatError("layer weight/bias arrays do not match declared dimensions");
    }
    std::copy(w.begin(), w.end(), layer.weights().begin());
    std::copy(b.begin(), b.end(), layer.biases().begin());
    if (!layers.empty() && layers.back().out_size() != in) {
      throw FormatError("layer chain width mismatch in serialized stack");
    }
    layers.push_back(std::move(layer));
  }
  return layers;
}

}  // namespace bdqn
