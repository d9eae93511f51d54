#include <gtest/gtest.h>

#include "bdqn/error.hpp"
#include "bdqn/network.hpp"
#include "oracles.hpp"

using namespace bdqn;

namespace {

NetworkShape shape(std::size_t duration_outputs) {
  NetworkShape s;
  s.input_width = 5;
  s.trunk = {8};
  s.q_head = {6};
  s.duration_head = {4};
  s.q_outputs = 3;
  s.duration_outputs = duration_outputs;
  return s;
}

}  // namespace

TEST(Network, HeadWidthsFollowShape) {
  RngStreams streams(1);
  const auto net = build_network(shape(10), streams);
  EXPECT_EQ(net.input_width(), 5u);
  EXPECT_EQ(net.feature_width(), 8u);
  EXPECT_EQ(net.q_width(), 3u);
  EXPECT_EQ(net.duration_width(), 10u);
  EXPECT_NO_THROW(net.validate());
}

TEST(Network, DurationHeadStartsUniform) {
  RngStreams streams(2);
  const auto net = build_network(shape(4), streams);
  Rng rng(3);
  const auto logits = duration_logits(net, oracle::random_vector(5, rng));
  for (double l : logits) EXPECT_EQ(l, 0.0);
}

TEST(Network, DurationHeadDoesNotShiftOtherInitStreams) {
  RngStreams a(4);
  RngStreams b(4);
  const auto with = build_network(shape(10), a);
  const auto without = build_network(shape(0), b);
  EXPECT_EQ(with.trunk, without.trunk);
  EXPECT_EQ(with.q_head, without.q_head);
  EXPECT_FALSE(without.has_duration_head());
}

TEST(Network, QValuesMatchMatrixOracle) {
  RngStreams streams(5);
  const auto net = build_network(shape(0), streams);
  Rng rng(6);
  const auto x = oracle::random_vector(5, rng);
  LayerStack whole = net.trunk;
  whole.insert(whole.end(), net.q_head.begin(), net.q_head.end());
  const auto want = oracle::matrix_forward(whole, x);
  const auto got = q_values(net, x);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
}

TEST(Network, ValidateRejectsMismatchedHeads) {
  RngStreams streams(7);
  auto net = build_network(shape(3), streams);
  net.q_head = make_stack(9, {}, 3);
  EXPECT_THROW(net.validate(), DimensionError);
}

TEST(Network, CopyQPathLeavesDurationHead) {
  RngStreams s1(8);
  RngStreams s2(9);
  const auto from = build_network(shape(3), s1);
  auto to = build_network(shape(3), s2);
  const auto head = to.duration_head;
  copy_q_path(from, to);
  EXPECT_EQ(to.trunk, from.trunk);
  EXPECT_EQ(to.q_head, from.q_head);
  EXPECT_EQ(to.duration_head, head);
}

TEST(Network, JsonRoundTrip) {
  RngStreams streams(10);
  const auto net = build_network(shape(6), streams);
  const auto back = network_from_json(nlohmann::json::parse(to_json(net).dump()));
  EXPECT_EQ(back, net);
}
