#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bdqn/rng.hpp"

namespace bdqn {

enum class Activation { relu, identity };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& name);

// Fully connected layer y = act(W x + b). W is stored row-major, out x in.
// Dimensions are fixed at construction.
class DenseLayer {
 public:
  DenseLayer(std::size_t in, std::size_t out, Activation act);

  std::size_t in_size() const { return in_; }
  std::size_t out_size() const { return out_; }
  Activation activation() const { return act_; }

  double& weight(std::size_t row, std::size_t col) { return weights_[row * in_ + col]; }
  double weight(std::size_t row, std::size_t col) const { return weights_[row * in_ + col]; }

  std::span<double> weights() { return weights_; }
  std::span<const double> weights() const { return weights_; }
  std::span<double> biases() { return biases_; }
  std::span<const double> biases() const { return biases_; }

  bool all_finite() const;

  bool operator==(const DenseLayer&) const = default;

 private:
  std::size_t in_;
  std::size_t out_;
  Activation act_;
  std::vector<double> weights_;
  std::vector<double> biases_;
};

using LayerStack = std::vector<DenseLayer>;

// Builds hidden relu layers of the given widths followed by an identity
// output layer. All parameters start at zero.
LayerStack make_stack(std::size_t in, const std::vector<std::size_t>& hidden, std::size_t out);

// Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)] for weights and biases.
void init_uniform(LayerStack& layers, Rng& rng);
void zero_layer(DenseLayer& layer);

std::size_t input_width(const LayerStack& layers);
std::size_t output_width(const LayerStack& layers);

// Per-layer inputs and pre-activations recorded by forward.
struct ForwardCache {
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> preactivations;
};

struct LayerGrad {
  std::vector<double> weights;
  std::vector<double> biases;
  bool operator==(const LayerGrad&) const = default;
};

// Gradients shaped like the LayerStack they were computed for.
using GradientBundle = std::vector<LayerGrad>;

GradientBundle zeros_like(const LayerStack& layers);
bool congruent(const LayerStack& layers, const GradientBundle& grads);
void scale(GradientBundle& grads, double factor);
bool all_finite(const GradientBundle& grads);

// Throws DimensionError when input width does not match the first layer.
std::vector<double> forward(const LayerStack& layers, std::span<const double> input,
                            ForwardCache* cache = nullptr);

// Adds d(loss)/d(params) into grads and returns d(loss)/d(input).
// grads must be congruent with layers and the cache must come from a forward
// pass through the same layers.
std::vector<double> backward(const LayerStack& layers, const ForwardCache& cache,
                             std::span<const double> grad_output, GradientBundle& grads);

// p <- p - learning_rate * g. A non-finite gradient leaves the parameters
// untouched and returns false.
bool sgd_step(LayerStack& layers, const GradientBundle& grads, double learning_rate);

// Max-subtracted softmax. Throws std::domain_error on non-finite logits.
std::vector<double> softmax(std::span<const double> logits);

nlohmann::ordered_json to_json(const LayerStack& layers);
LayerStack layers_from_json(const nlohmann::json& j);

}  // namespace bdqn
