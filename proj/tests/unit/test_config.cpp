#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "bdqn/config.hpp"

using namespace bdqn;

namespace {

const char* kMinimal = R"(
format_version: 1
env:
  name: chain
  chain_length: 5
agent:
  family: static
  arr: 2
  d_max: 4
training:
  decisions: 100
seeds: [3, 4]
output_dir: out
)";

std::vector<std::string> problems_of(const std::string& yaml) {
  try {
    parse_config(yaml);
  } catch (const ConfigViolations& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& field) {
  for (const auto& p : problems) {
    if (p.find(field) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Config, ParsesMinimalFile) {
  const auto c = parse_config(kMinimal);
  EXPECT_EQ(c.env.name, "chain");
  EXPECT_EQ(c.env.chain_length, 5);
  EXPECT_EQ(c.agent.family, AgentFamily::static_arr);
  EXPECT_EQ(c.agent.arr, 2);
  EXPECT_EQ(c.training.decisions, 100);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{3, 4}));
  EXPECT_EQ(c.output_dir, "out");
}

TEST(Config, DefaultsFillMissingFields) {
  const auto c = parse_config("env: {name: corridor}\n");
  EXPECT_EQ(c.agent, AgentConfig{});
  EXPECT_EQ(c.seeds, std::vector<std::uint64_t>{0});
}

TEST(Config, CollectsEveryProblem) {
  const auto problems = problems_of(R"(
env: {name: chain}
agent:
  gamma: 1.5
  lr_qq: 0.1
  batch_size: 0
training: {decisions: 0}
seeds: []
)");
  EXPECT_TRUE(mentions(problems, "agent.gamma"));
  EXPECT_TRUE(mentions(problems, "agent.lr_qq"));
  EXPECT_TRUE(mentions(problems, "agent.batch_size"));
  EXPECT_TRUE(mentions(problems, "training.decisions"));
  EXPECT_TRUE(mentions(problems, "seeds"));
}

TEST(Config, UnknownKeysAtEveryLevel) {
  const auto problems = problems_of(R"(
env: {name: reflex, colour: red}
agent: {network: {trunk: [4], depth: 2}}
extra: 1
)");
  EXPECT_TRUE(mentions(problems, "env.colour"));
  EXPECT_TRUE(mentions(problems, "agent.network.depth"));
  EXPECT_TRUE(mentions(problems, "extra"));
}

TEST(Config, EnvKeysDependOnEnvironment) {
  EXPECT_TRUE(mentions(problems_of("env: {name: chain, window: 3}\n"), "env.window"));
  EXPECT_TRUE(problems_of("env: {name: reflex, window: 3}\n").empty());
}

TEST(Config, WrongTypeReported) {
  EXPECT_TRUE(mentions(problems_of("env: {name: chain}\nagent: {d_max: lots}\n"), "agent.d_max"));
}

TEST(Config, FamilySpecificChecks) {
  EXPECT_TRUE(mentions(problems_of("env: {name: chain}\nagent: {family: static, arr: 12, d_max: 10}\n"),
                       "agent.arr"));
  EXPECT_TRUE(mentions(problems_of("env: {name: chain}\nagent: {family: dfdqn, duration_options: [4, 2]}\n"),
                       "agent.duration_options"));
  EXPECT_TRUE(mentions(problems_of("env: {name: chain}\nagent: {family: greedy}\n"), "agent.family"));
}

TEST(Config, FormatVersionChecked) {
  EXPECT_TRUE(mentions(problems_of("format_version: 7\nenv: {name: chain}\n"), "format_version"));
}

TEST(Config, SyntaxErrorIsFormatError) {
  EXPECT_THROW(parse_config("env: [unclosed\n"), FormatError);
  EXPECT_THROW(parse_config("- a list\n"), FormatError);
}

TEST(Config, MissingFileIsFormatError) {
  EXPECT_THROW(load_config("/nonexistent/config.yaml"), FormatError);
}

TEST(Config, OutputDirOverride) {
  auto c = parse_config(kMinimal);
  ::setenv(kOutputDirEnvVar, "/tmp/elsewhere", 1);
  apply_env_overrides(c);
  ::unsetenv(kOutputDirEnvVar);
  EXPECT_EQ(c.output_dir, "/tmp/elsewhere");
  apply_env_overrides(c);
  EXPECT_EQ(c.output_dir, "/tmp/elsewhere");
}

TEST(Config, JsonRoundTrip) {
  auto c = parse_config(kMinimal);
  c.agent.duration_options = {1, 3};
  c.agent.joint_bandit_training = true;
  EXPECT_EQ(agent_config_from_json(to_json(c.agent)), c.agent);
  EXPECT_EQ(env_config_from_json(to_json(c.env)), c.env);
  EXPECT_EQ(to_json(c)["format_version"], kConfigFormatVersion);
}

TEST(Config, ShippedConfigsLoad) {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(BDQN_CONFIG_DIR)) {
    if (entry.path().extension() != ".yaml") continue;
    EXPECT_NO_THROW(load_config(entry.path())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 5);
}
