#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bdqn/error.hpp"
#include "bdqn/replay.hpp"
#include "oracles.hpp"

using namespace bdqn;

namespace {

// Tag stored in the reward so stored items can be identified.
Transition tagged(int tag) {
  Transition t;
  t.state = {0.0};
  t.next_state = {1.0};
  t.reward = tag;
  return t;
}

std::multiset<int> tags(const ReplayMemory& m) {
  std::multiset<int> out;
  for (const auto& t : m.items()) out.insert(static_cast<int>(t.reward));
  return out;
}

}  // namespace

TEST(Replay, OnePushGivesSizeOne) {
  ReplayMemory m(4, 1);
  m.push(tagged(0));
  EXPECT_EQ(m.size(), 1u);
}

TEST(Replay, CapacityTwoKeepsLastTwo) {
  ReplayMemory m(2, 1);
  for (int i = 1; i <= 3; ++i) m.push(tagged(i));
  EXPECT_EQ(tags(m), (std::multiset<int>{2, 3}));
}

TEST(Replay, RingMatchesEnumeration) {
  for (std::size_t cap : {1u, 3u, 8u}) {
    for (int extra : {0, 1, 5, 17}) {
      ReplayMemory m(cap, 1);
      const int total = static_cast<int>(cap) + extra;
      for (int i = 1; i <= total; ++i) {
        m.push(tagged(i));
        ASSERT_LE(m.size(), cap);
      }
      std::multiset<int> want;
      for (int i = extra + 1; i <= total; ++i) want.insert(i);
      EXPECT_EQ(tags(m), want) << cap << " " << extra;
    }
  }
}

TEST(Replay, RejectsInvalidTransitions) {
  ReplayMemory m(4, 3);
  Transition t = tagged(0);
  t.duration = 4;
  t.frames_elapsed = 4;
  EXPECT_THROW(m.push(t), ValidationError);
  t.duration = 3;
  t.frames_elapsed = 0;
  EXPECT_THROW(m.push(t), ValidationError);
  t.frames_elapsed = 2;  // cut short without terminal or cutoff
  EXPECT_THROW(m.push(t), ValidationError);
  t.terminal = true;
  EXPECT_NO_THROW(m.push(t));
  t.terminal = false;
  t.truncated = true;
  EXPECT_NO_THROW(m.push(t));
  EXPECT_EQ(m.size(), 2u);
}

TEST(Replay, SampleFromSingleItem) {
  ReplayMemory m(4, 1);
  m.push(tagged(7));
  Rng rng(1);
  const auto batch = m.sample(1, rng);
  ASSERT_TRUE(batch);
  EXPECT_EQ(batch->front().reward, 7.0);
}

TEST(Replay, NotReadyBelowBatch) {
  ReplayMemory m(8, 1);
  m.push(tagged(1));
  Rng rng(2);
  EXPECT_FALSE(m.sample(2, rng).has_value());
}

TEST(Replay, CopiedRngGivesSameBatch) {
  ReplayMemory m(16, 1);
  for (int i = 0; i < 16; ++i) m.push(tagged(i));
  Rng a(3);
  Rng b = a;
  EXPECT_EQ(*m.sample(8, a), *m.sample(8, b));
}

TEST(Replay, SamplingIsUniform) {
  ReplayMemory m(4, 1);
  for (int i = 0; i < 4; ++i) m.push(tagged(i));
  Rng rng(4);
  const long n = 100000;
  std::vector<long> counts(4, 0);
  for (long k = 0; k < n; ++k) ++counts[static_cast<std::size_t>(m.sample(1, rng)->front().reward)];
  for (long c : counts) EXPECT_TRUE(oracle::within_sigmas(c, n, 0.25, 4.0)) << c;
}

TEST(Replay, SamplesOnlyCurrentContents) {
  ReplayMemory m(5, 1);
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    m.push(tagged(i));
    const auto present = tags(m);
    const auto batch = m.sample(std::min<std::size_t>(m.size(), 3), rng);
    for (const auto& t : *batch) EXPECT_TRUE(present.count(static_cast<int>(t.reward)));
  }
}
