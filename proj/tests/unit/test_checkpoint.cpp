#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "bdqn/baselines.hpp"
#include "bdqn/checkpoint.hpp"
#include "bdqn/error.hpp"
#include "bdqn/harness.hpp"
#include "oracles.hpp"

using namespace bdqn;

namespace {

EnvConfig chain_env() {
  EnvConfig e;
  e.name = "chain";
  e.chain_length = 6;
  return e;
}

AgentConfig small_config(AgentFamily family) {
  AgentConfig c;
  c.family = family;
  c.d_max = 4;
  c.arr = 2;
  c.duration_options = {1, 3};
  c.trunk = {8};
  c.q_head = {8};
  c.duration_head = {8};
  c.batch_size = 4;
  c.replay_capacity = 64;
  c.epsilon = {1.0, 0.2, 100};
  return c;
}

Agent trained(AgentFamily family) {
  auto env = make_env(chain_env());
  Agent agent = make_agent(small_config(family), env->spec(), 13);
  agent.train(*env, {200, 0, 1, 0});
  return agent;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bdqn_test_" + name);
}

}  // namespace

class CheckpointRoundTrip : public ::testing::TestWithParam<AgentFamily> {};

TEST_P(CheckpointRoundTrip, ReproducesOutputsExactly) {
  Agent agent = trained(GetParam());
  const auto path = temp_file("ckpt_" + to_string(GetParam()) + ".json");
  save_checkpoint(agent, chain_env(), path);
  const auto loaded = load_checkpoint(path);
  std::filesystem::remove(path);

  EXPECT_EQ(loaded.env, chain_env());
  EXPECT_EQ(loaded.agent.config(), agent.config());
  EXPECT_EQ(loaded.agent.online(), agent.online());
  EXPECT_EQ(loaded.agent.target(), agent.target());
  EXPECT_EQ(loaded.agent.decisions(), agent.decisions());
  EXPECT_EQ(loaded.agent.episodes(), agent.episodes());
  EXPECT_EQ(loaded.agent.epsilon(), agent.epsilon());
  EXPECT_EQ(loaded.agent.streams().save_state(), agent.streams().save_state());

  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto s = oracle::random_vector(6, rng);
    EXPECT_EQ(loaded.agent.q_values(s), agent.q_values(s));
    if (GetParam() == AgentFamily::bandit) {
      EXPECT_EQ(loaded.agent.duration_policy(s).probs, agent.duration_policy(s).probs);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Families, CheckpointRoundTrip,
                         ::testing::Values(AgentFamily::bandit, AgentFamily::static_arr,
                                           AgentFamily::discrete),
                         [](const auto& info) { return to_string(info.param); });

TEST(Checkpoint, CarriesFormatVersion) {
  const auto j = checkpoint_to_json(trained(AgentFamily::bandit), chain_env());
  EXPECT_EQ(j.begin().key(), "format_version");
  EXPECT_EQ(j["format_version"], kCheckpointFormatVersion);
}

TEST(Checkpoint, UnsupportedVersionRejected) {
  auto j = checkpoint_to_json(trained(AgentFamily::bandit), chain_env());
  j["format_version"] = 2;
  EXPECT_THROW(checkpoint_from_json(j), FormatError);
}

TEST(Checkpoint, MissingSectionRejected) {
  auto j = checkpoint_to_json(trained(AgentFamily::bandit), chain_env());
  j.erase("online");
  EXPECT_THROW(checkpoint_from_json(j), FormatError);
}

TEST(Checkpoint, TruncatedFileRejected) {
  const auto path = temp_file("truncated.json");
  {
    std::ofstream out(path);
    out << checkpoint_to_json(trained(AgentFamily::bandit), chain_env()).dump().substr(0, 200);
  }
  EXPECT_THROW(load_checkpoint(path), FormatError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_checkpoint(path), FormatError);
}

TEST(Checkpoint, EvaluationOnMismatchedEnvironmentRejected) {
  const auto path = temp_file("mismatch.json");
  save_checkpoint(trained(AgentFamily::bandit), chain_env(), path);
  EnvConfig corridor;
  corridor.name = "corridor";
  EXPECT_THROW(evaluate_checkpoint(path, corridor, 2, 0), DimensionError);
  EXPECT_NO_THROW(evaluate_checkpoint(path, chain_env(), 2, 0));
  std::filesystem::remove(path);
}

TEST(Checkpoint, EvaluationMatchesInMemoryAgent) {
  Agent agent = trained(AgentFamily::bandit);
  const auto path = temp_file("eval.json");
  save_checkpoint(agent, chain_env(), path);
  const auto from_file = evaluate_checkpoint(path, chain_env(), 4, 77);
  auto env = make_env(chain_env());
  const auto in_memory = agent.evaluate(*env, 4, 77);
  EXPECT_EQ(from_file.mean_score, in_memory.mean_score);
  EXPECT_EQ(from_file.episodes, in_memory.episodes);
  std::filesystem::remove(path);
}
