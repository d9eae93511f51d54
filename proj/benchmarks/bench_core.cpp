#include <benchmark/benchmark.h>

#include "bdqn/agent.hpp"
#include "bdqn/corridor_world.hpp"

using namespace bdqn;

namespace {

AgentConfig bench_config(std::size_t width) {
  AgentConfig c;
  c.trunk = {width};
  c.q_head = {width};
  c.duration_head = {width};
  c.batch_size = 32;
  return c;
}

std::vector<Transition> random_batch(const EnvSpec& spec, Rng& rng, std::size_t n) {
  std::vector<Transition> batch(n);
  for (auto& t : batch) {
    t.state.resize(static_cast<std::size_t>(spec.observation_width));
    t.next_state.resize(t.state.size());
    for (double& x : t.state) x = uniform01(rng);
    for (double& x : t.next_state) x = uniform01(rng);
    t.action = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(spec.action_count)));
    t.q_index = t.action;
    t.reward = uniform01(rng);
    t.duration = 4;
    t.frames_elapsed = 4;
  }
  return batch;
}

}  // namespace

static void BM_QValues(benchmark::State& state) {
  CorridorWorld env;
  Agent agent(bench_config(static_cast<std::size_t>(state.range(0))), env.spec(), 1);
  const auto s = env.reset(0).observation;
  for (auto _ : state) benchmark::DoNotOptimize(agent.q_values(s));
}
BENCHMARK(BM_QValues)->Arg(32)->Arg(64)->Arg(128);

static void BM_DurationPolicy(benchmark::State& state) {
  CorridorWorld env;
  Agent agent(bench_config(static_cast<std::size_t>(state.range(0))), env.spec(), 1);
  const auto s = env.reset(0).observation;
  for (auto _ : state) benchmark::DoNotOptimize(agent.duration_policy(s));
}
BENCHMARK(BM_DurationPolicy)->Arg(32)->Arg(128);

static void BM_TdUpdate(benchmark::State& state) {
  CorridorWorld env;
  Agent agent(bench_config(static_cast<std::size_t>(state.range(0))), env.spec(), 1);
  agent.set_epsilon(0.0);
  Rng rng(2);
  const auto batch = random_batch(env.spec(), rng, 32);
  for (auto _ : state) benchmark::DoNotOptimize(agent.td_update(batch));
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_TdUpdate)->Arg(32)->Arg(64)->Arg(128);

static void BM_BanditUpdate(benchmark::State& state) {
  CorridorWorld env;
  Agent agent(bench_config(32), env.spec(), 1);
  const auto s = env.reset(0).observation;
  for (auto _ : state) benchmark::DoNotOptimize(agent.bandit_update(s, 3, 0.01));
}
BENCHMARK(BM_BanditUpdate);

static void BM_ExecuteDuration(benchmark::State& state) {
  CorridorWorld env;
  const DurationSet durations(10);
  const int d = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  env.reset(seed);
  for (auto _ : state) {
    if (env.episode_over()) env.reset(++seed);
    benchmark::DoNotOptimize(execute_duration(env, 1, d, 0.95, durations));
  }
}
BENCHMARK(BM_ExecuteDuration)->Arg(1)->Arg(10);

static void BM_TrainDecisions(benchmark::State& state) {
  CorridorWorld env;
  for (auto _ : state) {
    Agent agent(bench_config(32), env.spec(), 3);
    agent.train(env, {1000, 0, 1, 0});
    benchmark::DoNotOptimize(agent.decisions());
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_TrainDecisions)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
