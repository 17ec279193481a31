#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairmab/config_io.hpp"
#include "fairmab/errors.hpp"
#include "fairmab/experiment.hpp"
#include "fairmab/report.hpp"

namespace fairmab {
namespace {

namespace fs = std::filesystem;

TEST(Preset, ScenarioOne) {
  const auto s = preset("scenario-i");
  EXPECT_EQ(s.environment.n_arms, 3u);
  EXPECT_EQ(s.environment.max_plays, 2u);
  EXPECT_EQ(s.environment.means, (std::vector<double>{0.4, 0.5, 0.7}));
  EXPECT_EQ(s.environment.weights, (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(s.environment.min_fractions, (std::vector<double>{0.5, 0.6, 0.4}));
  EXPECT_EQ(std::get<IndependentBernoulli>(s.environment.availability).p,
            (std::vector<double>{0.9, 0.8, 0.7}));
  EXPECT_TRUE(std::holds_alternative<BernoulliRewards>(s.environment.reward_model));
  EXPECT_EQ(s.horizon, 20000u);
  std::vector<double> etas;
  bool has_llrs = false;
  for (const auto& p : s.policies) {
    if (p.kind == PolicyKind::kLfg) etas.push_back(p.eta);
    has_llrs = has_llrs || p.kind == PolicyKind::kLlrs;
  }
  EXPECT_EQ(etas, (std::vector<double>{1, 10, 100, 1000}));
  EXPECT_TRUE(has_llrs);
  EXPECT_NO_THROW(s.validate());
}

TEST(Preset, FigureSeven) {
  const auto s = preset("fig7");
  EXPECT_EQ(s.runs, 100u);
  EXPECT_EQ(s.horizon, 1000u);
  ASSERT_EQ(s.policies.size(), 1u);
  EXPECT_EQ(s.policies[0].eta, 100.0);
  EXPECT_EQ(s.checkpoints.back(), 1000u);
  EXPECT_EQ(s.environment.means, preset("scenario-i").environment.means);
}

TEST(Preset, ScenarioTwoIsATemplate) {
  const auto s = preset("scenario-ii");
  EXPECT_EQ(s.environment.n_arms, 10u);
  EXPECT_EQ(s.environment.max_plays, 6u);
  EXPECT_THROW(s.validate(), InvalidConfig);
}

TEST(Preset, Unknown) {
  EXPECT_THROW(preset("scenario-iii"), UnknownPreset);
  EXPECT_EQ(preset_names().size(), 3u);
}

TEST(PolicyKind, RoundTrip) {
  for (auto k : {PolicyKind::kLfg, PolicyKind::kLlrs, PolicyKind::kAOnlyPlayback,
                 PolicyKind::kEmptyAction}) {
    EXPECT_EQ(parse_policy_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_policy_kind("ucb"), InvalidConfig);
  EXPECT_EQ(PolicySpec::lfg(100).label, "LFG(eta=100)");
}

TEST(ExperimentSpec, ValidateRejectsBadSpecs) {
  auto s = preset("scenario-i");
  s.horizon = 0;
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = preset("scenario-i");
  s.runs = 0;
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = preset("scenario-i");
  s.checkpoints = {10, 30000};
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = preset("scenario-i");
  s.policies.push_back(s.policies.front());
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = preset("scenario-i");
  s.policies = {PolicySpec::lfg(0.0)};
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = preset("scenario-i");
  s.policies.clear();
  EXPECT_THROW(s.validate(), InvalidConfig);
}

ExperimentSpec small_spec() {
  auto s = preset("scenario-i");
  s.horizon = 500;
  s.runs = 5;
  s.checkpoints.clear();
  return s;
}

std::string csv_bundle(const ExperimentResult& r) {
  std::ostringstream out;
  write_regret_csv(out, r);
  write_fractions_csv(out, r);
  write_queues_csv(out, r);
  return out.str();
}

TEST(RunExperiment, DeterministicAcrossWorkerCounts) {
  auto spec = small_spec();
  spec.workers = 1;
  const std::string one = csv_bundle(run_experiment(spec));
  spec.workers = 4;
  const std::string four = csv_bundle(run_experiment(spec));
  const std::string again = csv_bundle(run_experiment(spec));
  EXPECT_EQ(one, four);
  EXPECT_EQ(four, again);
  spec.base_seed = 2;
  EXPECT_NE(csv_bundle(run_experiment(spec)), one);
}

TEST(RunExperiment, SingleRoundFractionsAreBinary) {
  for (const auto& policy : preset("scenario-i").policies) {
    auto spec = preset("scenario-i");
    spec.policies = {policy};
    spec.horizon = 1;
    spec.runs = 1;
    spec.checkpoints.clear();
    spec.emit_traces = true;
    const auto r = run_experiment(spec);
    ASSERT_EQ(r.checkpoints, (std::vector<std::size_t>{1}));
    const auto& pr = r.policies[0];
    EXPECT_EQ(pr.traces[0].horizon(), 1u);
    for (double f : pr.fractions[0].mean) EXPECT_TRUE(f == 0.0 || f == 1.0);
  }
}

TEST(RunExperiment, ReportsOracleAndBounds) {
  const auto r = run_experiment(small_spec());
  ASSERT_TRUE(r.optimal_reward && r.epsilon && r.bounds);
  EXPECT_NEAR(*r.optimal_reward, 1.038, 1e-9);
  EXPECT_GT(*r.epsilon, 0.0);
  EXPECT_EQ(r.bounds->stability.size(), 4u);
  EXPECT_TRUE(r.warnings.empty());
  for (const auto& pr : r.policies) {
    EXPECT_EQ(pr.runs.size(), 5u);
    EXPECT_TRUE(pr.traces.empty());
    ASSERT_TRUE(pr.pseudo_regret);
    EXPECT_EQ(pr.pseudo_regret->points.size(), r.checkpoints.size());
  }
}

TEST(RunExperiment, InfeasibleTargetsSuppressRegret) {
  auto spec = small_spec();
  spec.environment.min_fractions = {0.9, 0.9, 0.9};
  const auto r = run_experiment(spec);
  EXPECT_FALSE(r.optimal_reward);
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_LT(*r.epsilon, 0.0);
  for (const auto& pr : r.policies) {
    EXPECT_FALSE(pr.pseudo_regret);
    EXPECT_FALSE(pr.fractions.empty());
    EXPECT_FALSE(pr.queues.empty());
  }
  std::ostringstream regret;
  write_regret_csv(regret, r);
  EXPECT_EQ(regret.str(), std::string(kRegretHeader) + "\n");
}

TEST(RunExperiment, PlaybackNeedsFeasibleOracle) {
  auto spec = small_spec();
  spec.environment.min_fractions = {0.9, 0.9, 0.9};
  spec.policies = {PolicySpec::aonly_playback()};
  EXPECT_THROW(run_experiment(spec), OracleInfeasible);
}

TEST(RunExperiment, CapExceededPropagates) {
  auto spec = small_spec();
  auto& env = spec.environment;
  env.n_arms = 17;
  env.max_plays = 2;
  env.means.assign(17, 0.5);
  env.weights.assign(17, 1.0);
  env.min_fractions.assign(17, 0.01);
  env.availability = IndependentBernoulli{std::vector<double>(17, 0.5)};
  EXPECT_THROW(run_experiment(spec), CapExceeded);
}

TEST(RunExperiment, EmptyPolicyRegretIsOptimum) {
  auto spec = small_spec();
  spec.policies = {PolicySpec::empty_action()};
  const auto r = run_experiment(spec);
  for (const auto& p : r.policies[0].pseudo_regret->points) {
    EXPECT_DOUBLE_EQ(p.mean, *r.optimal_reward);
  }
}

TEST(ResolveWorkers, EnvironmentOverride) {
  EXPECT_EQ(resolve_workers(3), 3u);
  ::setenv("FAIRMAB_WORKERS", "5", 1);
  EXPECT_EQ(resolve_workers(0), 5u);
  EXPECT_EQ(resolve_workers(2), 2u);
  ::unsetenv("FAIRMAB_WORKERS");
  EXPECT_GE(resolve_workers(0), 1u);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t columns(const std::string& line) {
  std::size_t count = 1;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) ++count;
  }
  return count;
}

void expect_schema(const std::string& csv, const char* header) {
  const auto lines = lines_of(csv);
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines.front(), header);
  const std::size_t width = columns(header);
  for (const auto& line : lines) EXPECT_EQ(columns(line), width) << line;
}

TEST(Report, CsvHeadersAndShapes) {
  auto spec = small_spec();
  spec.policies.push_back(PolicySpec::aonly_playback());
  const auto r = run_experiment(spec);
  std::ostringstream regret, fractions, queues, table;
  write_regret_csv(regret, r);
  write_fractions_csv(fractions, r);
  write_queues_csv(queues, r);
  expect_schema(regret.str(), kRegretHeader);
  expect_schema(fractions.str(), kFractionsHeader);
  expect_schema(queues.str(), kQueuesHeader);
  const std::size_t cps = r.checkpoints.size();
  EXPECT_EQ(lines_of(regret.str()).size(), 1 + 6 * cps);
  EXPECT_EQ(lines_of(fractions.str()).size(), 1 + 6 * 3 * cps);
  EXPECT_EQ(lines_of(queues.str()).size(), 1 + 6 * cps);
  EXPECT_EQ(lines_of(regret.str())[1].rfind("LFG(eta=1),1,10,", 0), 0u);
  EXPECT_NE(regret.str().find("\nLLRS,,10,"), std::string::npos);

  const auto sol = solve_offline_lp(spec.environment);
  write_policy_table_csv(table, sol.policy);
  expect_schema(table.str(), kPolicyTableHeader);
  EXPECT_NE(table.str().find("\"{1,2,3}\",\"{2,3}\","), std::string::npos);
}

TEST(Report, NumberFormatting) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(100.0), "100");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Report, ArtifactsOnDisk) {
  const fs::path dir = fs::temp_directory_path() / ("fairmab_artifacts_test_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  auto spec = small_spec();
  spec.runs = 2;
  spec.emit_traces = true;
  const auto r = run_experiment(spec);
  const auto written = write_artifacts(r, dir);
  for (const char* name : {"regret.csv", "fractions.csv", "queues.csv", "bounds.json"}) {
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  }
  EXPECT_TRUE(fs::exists(dir / "traces"));
  std::size_t traces = 0;
  for (const auto& entry : fs::directory_iterator(dir / "traces")) {
    traces += entry.path().extension() == ".csv";
  }
  EXPECT_EQ(traces, 10u);
  std::ifstream bounds(dir / "bounds.json");
  const auto j = nlohmann::json::parse(bounds);
  EXPECT_DOUBLE_EQ(j.at("optimal_reward").get<double>(), *r.optimal_reward);
  fs::remove_all(dir);
  EXPECT_THROW(write_artifacts(r, "/proc/fairmab/not-writable"), IoError);
}

const char* kConfig = R"({
  "n_arms": 2,
  "max_plays": 1,
  "means": [0.9, 0.1],
  "min_fractions": [0.2, 0.2],
  "availability": {"type": "categorical",
                   "entries": [{"arms": [1, 2], "probability": 1.0}]},
  "experiment": {"name": "two", "horizon": 300, "runs": 3, "seed": 9,
                 "checkpoints": [100, 300],
                 "policies": [{"kind": "lfg", "eta": 50}, {"kind": "aonly", "label": "opt"}]}
})";

TEST(ConfigIo, ParsesEnvironmentAndExperiment) {
  const auto j = nlohmann::json::parse(kConfig);
  const auto env = environment_from_json(j);
  EXPECT_EQ(env.n_arms, 2u);
  EXPECT_EQ(env.weights, (std::vector<double>{1.0, 1.0}));
  const auto& cat = std::get<CategoricalAvailability>(env.availability);
  EXPECT_EQ(cat.entries.front().first, ArmSet::all(2));
  const auto spec = experiment_from_json(j, preset("scenario-i"));
  EXPECT_EQ(spec.name, "two");
  EXPECT_EQ(spec.horizon, 300u);
  EXPECT_EQ(spec.runs, 3u);
  EXPECT_EQ(spec.base_seed, 9u);
  ASSERT_EQ(spec.policies.size(), 2u);
  EXPECT_EQ(spec.policies[0].eta, 50.0);
  EXPECT_EQ(spec.policies[1].label, "opt");
  const auto r = run_experiment(spec);
  EXPECT_NEAR(*r.optimal_reward, 0.74, 1e-9);
}

TEST(ConfigIo, RoundTrip) {
  auto env = preset("scenario-i").environment;
  env.reward_model = BetaRewards{4.0};
  const auto back = environment_from_json(environment_to_json(env));
  EXPECT_EQ(back.means, env.means);
  EXPECT_EQ(back.min_fractions, env.min_fractions);
  EXPECT_EQ(std::get<IndependentBernoulli>(back.availability).p,
            std::get<IndependentBernoulli>(env.availability).p);
  EXPECT_EQ(std::get<BetaRewards>(back.reward_model).concentration, 4.0);
}

TEST(ConfigIo, RejectsMalformedConfigs) {
  const auto base = nlohmann::json::parse(kConfig);
  auto expect_invalid = [&](auto mutate) {
    auto j = base;
    mutate(j);
    EXPECT_THROW(experiment_from_json(j), InvalidConfig) << j.dump();
  };
  expect_invalid([](auto& j) { j.erase("means"); });
  expect_invalid([](auto& j) { j["means"] = "0.5"; });
  expect_invalid([](auto& j) { j["means"] = {0.5, "x"}; });
  expect_invalid([](auto& j) { j["n_arms"] = -2; });
  expect_invalid([](auto& j) { j["max_plays"] = 5; });
  expect_invalid([](auto& j) { j["availability"] = {{"type", "markov"}}; });
  expect_invalid([](auto& j) { j["availability"]["entries"][0]["probability"] = 0.5; });
  expect_invalid([](auto& j) { j["availability"]["entries"][0]["arms"] = {0, 1}; });
  expect_invalid([](auto& j) { j["reward_model"] = "gaussian"; });
  expect_invalid([](auto& j) { j["experiment"]["policies"] = {{{"kind", "lfg"}}}; });
  expect_invalid([](auto& j) { j["experiment"]["policies"] = {{{"kind", "ucb1"}}}; });
  expect_invalid([](auto& j) { j["experiment"]["horizon"] = "long"; });
  expect_invalid([](auto& j) { j["min_fractions"] = {0.2, 1.2}; });
}

TEST(ConfigIo, FileErrors) {
  EXPECT_THROW(load_json_file("/nonexistent/fairmab.json"), IoError);
  const fs::path bad = fs::temp_directory_path() / ("fairmab_bad_" + std::to_string(::getpid()) + ".json");
  std::ofstream(bad) << "{ not json";
  EXPECT_THROW(load_json_file(bad), InvalidConfig);
  fs::remove(bad);
}

}  // namespace
}  // namespace fairmab
