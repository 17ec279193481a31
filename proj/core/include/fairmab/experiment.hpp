#ifndef FAIRMAB_EXPERIMENT_HPP
#define FAIRMAB_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairmab/env.hpp"
#include "fairmab/metrics.hpp"
#include "fairmab/oracle.hpp"
#include "fairmab/policy.hpp"

namespace fairmab {

enum class PolicyKind { kLfg, kLlrs, kAOnlyPlayback, kEmptyAction };

struct PolicySpec {
  std::string label;
  PolicyKind kind = PolicyKind::kLfg;
  double eta = 0.0;  // LFG only

  static PolicySpec lfg(double eta);
  static PolicySpec llrs();
  static PolicySpec aonly_playback();
  static PolicySpec empty_action();
};

std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view text);

struct ExperimentSpec {
  std::string name;
  EnvironmentConfig environment;
  std::vector<PolicySpec> policies;
  std::size_t horizon = 0;
  std::size_t runs = 1;
  std::uint64_t base_seed = 0;
  /// Empty means default_checkpoints(horizon).
  std::vector<std::size_t> checkpoints;
  std::filesystem::path output_dir;
  bool emit_traces = false;
  /// 0 picks FAIRMAB_WORKERS or the hardware concurrency.
  std::size_t workers = 0;

  std::vector<std::size_t> effective_checkpoints() const;
  std::uint64_t run_seed(std::size_t run) const { return base_seed + run; }

  /// Throws InvalidConfig.
  void validate() const;
};

/// scenario-i, scenario-ii (N=10, m=6 template; environment vectors left
/// empty for the caller to supply) and fig7. Throws UnknownPreset.
ExperimentSpec preset(std::string_view name);
std::vector<std::string> preset_names();

/// Resolved worker count: explicit request, then FAIRMAB_WORKERS, then the
/// hardware concurrency.
std::size_t resolve_workers(std::size_t requested);

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const EnvironmentConfig& config,
                                    const AOnlyPolicy* optimal_policy);

/// One run of `horizon` rounds. Environment draws come from stream 0 of
/// `seed`, policy randomness from stream 1.
RunTrace simulate_run(const EnvironmentConfig& config, Policy& policy, std::string label,
                      std::size_t horizon, std::uint64_t seed);

struct PolicyResult {
  PolicySpec policy;
  std::vector<RunSummary> runs;  // in run-index order
  std::optional<RegretSeries> pseudo_regret;
  std::optional<RegretSeries> realized_regret;
  std::vector<FractionPoint> fractions;
  std::vector<SeriesPoint> queues;
  std::vector<RunTrace> traces;  // only with emit_traces
};

struct ExperimentResult {
  std::vector<std::size_t> checkpoints;
  std::optional<double> optimal_reward;
  std::optional<double> epsilon;
  std::optional<BoundReport> bounds;
  std::vector<PolicyResult> policies;
  std::vector<std::string> warnings;
};

/// Simulates every policy for every run. Output is a function of the spec
/// alone; the worker count only changes wall time.
/// An infeasible oracle suppresses regret output with a warning; CapExceeded
/// and NumericalFailure propagate.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace fairmab

#endif  // FAIRMAB_EXPERIMENT_HPP
