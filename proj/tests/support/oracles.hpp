#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these call into the code under test except to read parameters.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "bdqn/envs.hpp"
#include "bdqn/nnet.hpp"
#include "bdqn/rng.hpp"

namespace oracle {

// y = act(W x + b) layer by layer, with W read through DenseLayer::weight.
std::vector<double> matrix_forward(const bdqn::LayerStack& layers, const std::vector<double>& x);

// Central difference of f with respect to *param.
double central_difference(const std::function<double()>& f, double* param, double step);

// |a - b| / max(|a|, |b|, floor)
double relative_error(double a, double b, double floor = 1e-6);

// True when |count/n - p| <= sigmas * sqrt(p (1 - p) / n).
bool within_sigmas(long count, long n, double p, double sigmas);

// Smallest |pre-activation| of any relu unit for this input; finite
// differences are only meaningful when it exceeds the step.
double min_relu_margin(const bdqn::LayerStack& layers, const std::vector<double>& x);

// Random layer stack with the given widths (relu hidden, identity output),
// weights uniform in [-scale, scale].
bdqn::LayerStack random_stack(const std::vector<std::size_t>& widths, bdqn::Rng& rng,
                              double scale = 1.0);
std::vector<double> random_vector(std::size_t n, bdqn::Rng& rng, double scale = 1.0);

// Exact Q values of the chain (cells 0..length-1, LEFT/RIGHT, +1 on entering
// the last cell) when each decision holds its action for a duration drawn
// from duration_probs[cell], with frame-level discounting and a
// gamma^frames bootstrap. Index: q[cell][action]; the terminal cell is 0.
std::vector<std::array<double, 2>> chain_value_iteration(
    int length, double gamma, const std::vector<std::vector<double>>& duration_probs,
    int sweeps = 2000);

// Optimal frame-level chain values with durations fixed to 1.
std::vector<double> chain_optimal_values(int length, double gamma);

// Discounted return of a decision sequence computed one frame at a time:
// sum_t gamma^t r_t over every frame until the episode ends or the
// decisions run out. Returns (return, frames).
std::pair<double, int> frame_level_return(bdqn::Environment& env, std::uint64_t reset_seed,
                                          const std::vector<std::pair<int, int>>& decisions,
                                          double gamma);

}  // namespace oracle
