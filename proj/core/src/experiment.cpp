#include "fairmab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "fairmab/errors.hpp"

namespace fairmab {

namespace {

std::string format_eta(double eta) {
  // 1, 10, 0.5 -- no trailing zeros.
  std::string s = std::to_string(eta);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

EnvironmentConfig scenario_one_environment() {
  EnvironmentConfig env;
  env.n_arms = 3;
  env.max_plays = 2;
  env.means = {0.4, 0.5, 0.7};
  env.weights = {1.0, 1.0, 1.0};
  env.min_fractions = {0.5, 0.6, 0.4};
  env.availability = IndependentBernoulli{{0.9, 0.8, 0.7}};
  env.reward_model = BernoulliRewards{};
  return env;
}

std::vector<PolicySpec> comparison_policies() {
  return {PolicySpec::lfg(1), PolicySpec::lfg(10), PolicySpec::lfg(100), PolicySpec::lfg(1000),
          PolicySpec::llrs()};
}

}  // namespace

PolicySpec PolicySpec::lfg(double eta) {
  return {"LFG(eta=" + format_eta(eta) + ")", PolicyKind::kLfg, eta};
}
PolicySpec PolicySpec::llrs() { return {"LLRS", PolicyKind::kLlrs, 0.0}; }
PolicySpec PolicySpec::aonly_playback() { return {"AOnly*", PolicyKind::kAOnlyPlayback, 0.0}; }
PolicySpec PolicySpec::empty_action() { return {"Empty", PolicyKind::kEmptyAction, 0.0}; }

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kLfg: return "lfg";
    case PolicyKind::kLlrs: return "llrs";
    case PolicyKind::kAOnlyPlayback: return "aonly";
    case PolicyKind::kEmptyAction: return "empty";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view text) {
  if (text == "lfg") return PolicyKind::kLfg;
  if (text == "llrs") return PolicyKind::kLlrs;
  if (text == "aonly") return PolicyKind::kAOnlyPlayback;
  if (text == "empty") return PolicyKind::kEmptyAction;
  throw InvalidConfig("unknown policy kind '" + std::string(text) +
                      "' (expected lfg, llrs, aonly or empty)");
}

std::vector<std::size_t> ExperimentSpec::effective_checkpoints() const {
  return checkpoints.empty() ? default_checkpoints(horizon) : checkpoints;
}

void ExperimentSpec::validate() const {
  environment.validate();
  if (horizon < 1) throw InvalidConfig("horizon must be at least 1");
  if (runs < 1) throw InvalidConfig("runs must be at least 1");
  if (policies.empty()) throw InvalidConfig("no policies to simulate");
  std::set<std::string> labels;
  for (const auto& p : policies) {
    if (p.label.empty()) throw InvalidConfig("policy label must not be empty");
    if (!labels.insert(p.label).second) throw InvalidConfig("duplicate policy label " + p.label);
    if (p.kind == PolicyKind::kLfg && (!(p.eta > 0.0) || !std::isfinite(p.eta))) {
      throw InvalidConfig("LFG policy " + p.label + " needs eta > 0");
    }
  }
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    if (checkpoints[k] < 1 || checkpoints[k] > horizon) {
      throw InvalidConfig("checkpoint " + std::to_string(checkpoints[k]) + " outside [1, T]");
    }
    if (k > 0 && checkpoints[k] <= checkpoints[k - 1]) {
      throw InvalidConfig("checkpoints must be strictly increasing");
    }
  }
}

std::vector<std::string> preset_names() { return {"scenario-i", "scenario-ii", "fig7"}; }

ExperimentSpec preset(std::string_view name) {
  ExperimentSpec spec;
  spec.name = std::string(name);
  spec.base_seed = 1;
  if (name == "scenario-i") {
    spec.environment = scenario_one_environment();
    spec.policies = comparison_policies();
    spec.horizon = 20'000;
    spec.runs = 20;
    return spec;
  }
  if (name == "scenario-ii") {
    // Only N and m are fixed; means, weights, fractions and availability
    // come from a config file.
    spec.environment.n_arms = 10;
    spec.environment.max_plays = 6;
    spec.policies = comparison_policies();
    spec.horizon = 20'000;
    spec.runs = 20;
    return spec;
  }
  if (name == "fig7") {
    spec.environment = scenario_one_environment();
    spec.policies = {PolicySpec::lfg(100)};
    spec.horizon = 1000;
    spec.runs = 100;
    spec.checkpoints = {10, 20, 50};
    for (std::size_t t = 100; t <= 1000; t += 100) spec.checkpoints.push_back(t);
    return spec;
  }
  throw UnknownPreset("unknown preset '" + std::string(name) +
                      "' (expected scenario-i, scenario-ii or fig7)");
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FAIRMAB_WORKERS")) {
    std::size_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const EnvironmentConfig& config,
                                    const AOnlyPolicy* optimal_policy) {
  switch (spec.kind) {
    case PolicyKind::kLfg: return std::make_unique<LfgPolicy>(config, spec.eta);
    case PolicyKind::kLlrs: return std::make_unique<LlrsPolicy>(config);
    case PolicyKind::kAOnlyPlayback:
      if (optimal_policy == nullptr) {
        throw OracleInfeasible("policy " + spec.label + " needs the oracle's optimal policy");
      }
      return std::make_unique<AOnlyPlaybackPolicy>(*optimal_policy);
    case PolicyKind::kEmptyAction: return std::make_unique<EmptyActionPolicy>();
  }
  throw std::logic_error("unhandled policy kind");
}

RunTrace simulate_run(const EnvironmentConfig& config, Policy& policy, std::string label,
                      std::size_t horizon, std::uint64_t seed) {
  Rng env_rng = make_stream(seed, 0);
  Rng policy_rng = make_stream(seed, 1);
  VirtualQueues queues(config.min_fractions);
  RunTrace trace(std::move(label), seed, config.n_arms);
  trace.reserve(horizon);
  RoundDraw draw;
  for (std::size_t t = 0; t < horizon; ++t) {
    sample_round(config, env_rng, draw);
    const ActionVector action = policy_round(policy, draw, config.max_plays, policy_rng);
    trace.append(draw.available, action, draw.rewards, queues.lengths());
    queues.advance(action);
  }
  return trace;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const EnvironmentConfig& env = spec.environment;

  ExperimentResult result;
  result.checkpoints = spec.effective_checkpoints();

  const LpSolution oracle = solve_offline_lp(env);
  const AOnlyPolicy* optimal_policy = nullptr;
  if (oracle.status == LpStatus::kOptimal) {
    result.optimal_reward = oracle.optimal_reward;
    optimal_policy = &oracle.policy;
  } else {
    result.warnings.push_back(
        "offline LP is infeasible for these min_fractions; regret output suppressed");
  }
  result.epsilon = feasibility_margin(env).epsilon;

  std::vector<double> etas;
  for (const auto& p : spec.policies) {
    if (p.kind == PolicyKind::kLfg) etas.push_back(p.eta);
  }
  result.bounds =
      bound_report(env.n_arms, env.max_plays, env.max_weight(), *result.epsilon, etas,
                   result.checkpoints);

  const std::size_t jobs = spec.policies.size() * spec.runs;
  result.policies.resize(spec.policies.size());
  for (std::size_t p = 0; p < spec.policies.size(); ++p) {
    result.policies[p].policy = spec.policies[p];
    result.policies[p].runs.resize(spec.runs);
    if (spec.emit_traces) result.policies[p].traces.resize(spec.runs);
  }

  std::atomic<std::size_t> next_job{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t job = next_job.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t p = job / spec.runs;
      const std::size_t run = job % spec.runs;
      try {
        const PolicySpec& ps = spec.policies[p];
        auto policy = make_policy(ps, env, optimal_policy);
        RunTrace trace = simulate_run(env, *policy, ps.label, spec.horizon, spec.run_seed(run));
        result.policies[p].runs[run] =
            summarize_run(trace, result.checkpoints, env.weights, env.means);
        if (spec.emit_traces) result.policies[p].traces[run] = std::move(trace);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next_job.store(jobs);
        return;
      }
    }
  };
  const std::size_t workers = std::min(resolve_workers(spec.workers), jobs);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& pr : result.policies) {
    if (result.optimal_reward) {
      pr.pseudo_regret =
          regret_series_from_summaries(pr.runs, *result.optimal_reward, RegretVariant::kPseudo);
      pr.realized_regret =
          regret_series_from_summaries(pr.runs, *result.optimal_reward, RegretVariant::kRealized);
    }
    pr.fractions = selection_fraction_series(pr.runs);
    pr.queues = queue_series_from_summaries(pr.runs);
  }
  return result;
}

}  // namespace fairmab
