#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace oracle {

std::vector<double> matrix_forward(const bdqn::LayerStack& layers, const std::vector<double>& x) {
  std::vector<double> v = x;
  for (const auto& layer : layers) {
    std::vector<double> out;
    for (std::size_t r = 0; r < layer.out_size(); ++r) {
      long double s = layer.biases()[r];
      for (std::size_t c = 0; c < layer.in_size(); ++c) s += layer.weight(r, c) * v[c];
      double y = static_cast<double>(s);
      if (layer.activation() == bdqn::Activation::relu) y = std::max(0.0, y);
      out.push_back(y);
    }
    v = out;
  }
  return v;
}

double central_difference(const std::function<double()>& f, double* param, double step) {
  const double saved = *param;
  *param = saved + step;
  const double up = f();
  *param = saved - step;
  const double down = f();
  *param = saved;
  return (up - down) / (2.0 * step);
}

double relative_error(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

bool within_sigmas(long count, long n, double p, double sigmas) {
  const double freq = static_cast<double>(count) / static_cast<double>(n);
  return std::abs(freq - p) <= sigmas * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double min_relu_margin(const bdqn::LayerStack& layers, const std::vector<double>& x) {
  double margin = INFINITY;
  std::vector<double> v = x;
  for (const auto& layer : layers) {
    std::vector<double> out;
    for (std::size_t r = 0; r < layer.out_size(); ++r) {
      double s = layer.biases()[r];
      for (std::size_t c = 0; c < layer.in_size(); ++c) s += layer.weight(r, c) * v[c];
      if (layer.activation() == bdqn::Activation::relu) {
        margin = std::min(margin, std::abs(s));
        s = std::max(0.0, s);
      }
      out.push_back(s);
    }
    v = out;
  }
  return margin;
}

bdqn::LayerStack random_stack(const std::vector<std::size_t>& widths, bdqn::Rng& rng,
                              double scale) {
  bdqn::LayerStack layers;
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
    const bool last = i + 2 == widths.size();
    layers.emplace_back(widths[i], widths[i + 1],
                        last ? bdqn::Activation::identity : bdqn::Activation::relu);
    for (double& w : layers.back().weights()) w = scale * (2.0 * bdqn::uniform01(rng) - 1.0);
    for (double& b : layers.back().biases()) b = scale * (2.0 * bdqn::uniform01(rng) - 1.0);
  }
  return layers;
}

std::vector<double> random_vector(std::size_t n, bdqn::Rng& rng, double scale) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * (2.0 * bdqn::uniform01(rng) - 1.0);
  return v;
}

namespace {

// Frame dynamics of the chain: returns (next cell, reward, terminal).
struct ChainStep {
  int cell;
  double reward;
  bool terminal;
};
ChainStep chain_step(int cell, int action, int length) {
  const int next = action == 1 ? cell + 1 : std::max(0, cell - 1);
  const bool goal = next == length - 1;
  return {next, goal ? 1.0 : 0.0, goal};
}

}  // namespace

std::vector<std::array<double, 2>> chain_value_iteration(
    int length, double gamma, const std::vector<std::vector<double>>& duration_probs, int sweeps) {
  std::vector<std::array<double, 2>> q(static_cast<std::size_t>(length), {0.0, 0.0});
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    auto next_q = q;
    for (int cell = 0; cell < length - 1; ++cell) {
      const auto& probs = duration_probs[static_cast<std::size_t>(cell)];
      for (int a = 0; a < 2; ++a) {
        double value = 0.0;
        for (std::size_t k = 0; k < probs.size(); ++k) {
          const int d = static_cast<int>(k) + 1;
          int c = cell;
          double ret = 0.0;
          double disc = 1.0;
          bool terminal = false;
          for (int f = 0; f < d && !terminal; ++f) {
            const auto s = chain_step(c, a, length);
            ret += disc * s.reward;
            disc *= gamma;
            c = s.cell;
            terminal = s.terminal;
          }
          if (!terminal) {
            const auto& qc = q[static_cast<std::size_t>(c)];
            ret += disc * std::max(qc[0], qc[1]);
          }
          value += probs[k] * ret;
        }
        next_q[static_cast<std::size_t>(cell)][static_cast<std::size_t>(a)] = value;
      }
    }
    q = next_q;
  }
  return q;
}

std::vector<double> chain_optimal_values(int length, double gamma) {
  std::vector<double> v(static_cast<std::size_t>(length), 0.0);
  for (int cell = 0; cell < length - 1; ++cell) {
    v[static_cast<std::size_t>(cell)] = std::pow(gamma, length - 2 - cell);
  }
  return v;
}

std::pair<double, int> frame_level_return(bdqn::Environment& env, std::uint64_t reset_seed,
                                          const std::vector<std::pair<int, int>>& decisions,
                                          double gamma) {
  env.reset(reset_seed);
  double ret = 0.0;
  double disc = 1.0;
  int frames = 0;
  for (const auto& [action, d] : decisions) {
    for (int k = 0; k < d; ++k) {
      if (env.episode_over()) return {ret, frames};
      const auto frame = env.step(action);
      ret += disc * frame.reward;
      disc *= gamma;
      ++frames;
    }
  }
  return {ret, frames};
}

}  // namespace oracle
