#include <benchmark/benchmark.h>

#include <vector>

#include "fairmab/experiment.hpp"
#include "fairmab/oracle.hpp"
#include "fairmab/policy.hpp"

namespace {

using namespace fairmab;

void BM_SelectTopK(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t k = n / 2;
  Rng rng(1);
  std::vector<double> values(n);
  for (double& v : values) v = uniform01(rng);
  const ArmSet all = ArmSet::all(n);
  for (auto _ : state) benchmark::DoNotOptimize(select_top_k(values, all, k));
}
BENCHMARK(BM_SelectTopK)->Arg(3)->Arg(10)->Arg(64);

void BM_LfgRound(benchmark::State& state) {
  const auto env = preset("scenario-i").environment;
  LfgPolicy policy(env, 100.0);
  Rng env_rng = make_stream(1, 0);
  Rng policy_rng = make_stream(1, 1);
  RoundDraw draw;
  for (auto _ : state) {
    sample_round(env, env_rng, draw);
    benchmark::DoNotOptimize(policy_round(policy, draw, env.max_plays, policy_rng));
  }
}
BENCHMARK(BM_LfgRound);

void BM_SimulateRun(benchmark::State& state) {
  const auto env = preset("scenario-i").environment;
  const auto horizon = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    LfgPolicy policy(env, 100.0);
    benchmark::DoNotOptimize(simulate_run(env, policy, "lfg", horizon, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(horizon));
}
BENCHMARK(BM_SimulateRun)->Arg(20000)->Unit(benchmark::kMillisecond);

EnvironmentConfig uniform_instance(std::size_t n, std::size_t m) {
  EnvironmentConfig env;
  env.n_arms = n;
  env.max_plays = m;
  for (std::size_t i = 0; i < n; ++i) {
    env.means.push_back(0.3 + 0.5 * static_cast<double>(i) / static_cast<double>(n));
    env.weights.push_back(1.0);
    env.min_fractions.push_back(0.2);
  }
  env.availability = IndependentBernoulli{std::vector<double>(n, 0.8)};
  return env;
}

void BM_OfflineLp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto env = uniform_instance(n, (n + 1) / 2);
  for (auto _ : state) benchmark::DoNotOptimize(solve_offline_lp(env));
}
BENCHMARK(BM_OfflineLp)->DenseRange(3, 8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
