#ifndef FAIRMAB_METRICS_HPP
#define FAIRMAB_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairmab/arm_set.hpp"

namespace fairmab {

/// Everything that happened in one simulated run, round by round.
class RunTrace {
 public:
  RunTrace() = default;
  RunTrace(std::string policy_label, std::uint64_t seed, std::size_t n_arms);

  void reserve(std::size_t rounds);
  /// `rewards` holds X_i(t) for all arms; only played arms are stored.
  /// `queues` is Q(t) at the start of the round.
  void append(ArmSet available, ArmSet action, std::span<const double> rewards,
              std::span<const double> queues);

  const std::string& policy_label() const { return policy_label_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t n_arms() const { return n_arms_; }
  std::size_t horizon() const { return available_.size(); }

  ArmSet available(std::size_t t) const { return available_[t]; }
  ArmSet action(std::size_t t) const { return action_[t]; }
  /// Realised reward of arm i in round t; 0 when i was not played.
  double reward(std::size_t t, std::size_t arm) const { return rewards_[t * n_arms_ + arm]; }
  std::span<const double> queues(std::size_t t) const {
    return {queues_.data() + t * n_arms_, n_arms_};
  }

 private:
  std::string policy_label_;
  std::uint64_t seed_ = 0;
  std::size_t n_arms_ = 0;
  std::vector<ArmSet> available_;
  std::vector<ArmSet> action_;
  std::vector<double> rewards_;
  std::vector<double> queues_;
};

enum class RegretVariant { kPseudo, kRealized };

struct SeriesPoint {
  std::size_t t = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

struct RegretSeries {
  RegretVariant variant = RegretVariant::kPseudo;
  std::vector<SeriesPoint> points;
};

/// {10, 20, 50, 100, 200, 500, ...} up to the horizon, plus the horizon.
std::vector<std::size_t> default_checkpoints(std::size_t horizon);

/// Per-run values at a fixed list of checkpoints. This is what the harness
/// keeps once a trace has been reduced.
struct RunSummary {
  std::vector<std::size_t> checkpoints;
  std::size_t n_arms = 0;
  /// (1/t) sum_{s<t} sum_{i in S(s)} w_i mu_i
  std::vector<double> pseudo_reward;
  /// (1/t) sum_{s<t} sum_{i in S(s)} w_i X_i(s)
  std::vector<double> realized_reward;
  /// checkpoint-major, n_arms per checkpoint: (1/t) sum_{s<t} d_i(s)
  std::vector<double> fractions;
  /// (1/t) sum_{s<t} sum_i Q_i(s)
  std::vector<double> queue_time_average;
  double max_queue = 0.0;

  double fraction(std::size_t checkpoint_index, std::size_t arm) const {
    return fractions[checkpoint_index * n_arms + arm];
  }
};

/// Throws std::invalid_argument when a checkpoint is 0, exceeds the trace
/// or the list is not strictly increasing.
RunSummary summarize_run(const RunTrace& trace, std::span<const std::size_t> checkpoints,
                         std::span<const double> weights, std::span<const double> means);

/// Mean and standard error (sample sd / sqrt(n)) in run order.
SeriesPoint aggregate(std::size_t t, std::span<const double> values);

RegretSeries regret_series_from_summaries(std::span<const RunSummary> runs,
                                          double optimal_reward, RegretVariant variant);

/// R* minus the cross-run mean of the time-average reward at each checkpoint.
/// Throws MismatchedTraces when traces differ in length or arm count.
RegretSeries regret_series(std::span<const RunTrace> traces, double optimal_reward,
                           std::span<const double> weights, std::span<const double> means,
                           RegretVariant variant, std::span<const std::size_t> checkpoints);

/// h_i(T-1) / T for one run.
std::vector<double> selection_fractions(const RunTrace& trace);
/// Averaged over runs.
std::vector<double> selection_fractions(std::span<const RunTrace> traces);

struct FractionPoint {
  std::size_t t = 0;
  std::vector<double> mean;  // per arm
};

std::vector<FractionPoint> selection_fraction_series(std::span<const RunSummary> runs);

struct QueueStats {
  /// mean over runs of (1/T) sum_{t<T} sum_i Q_i(t)
  double time_average_total_queue = 0.0;
  double max_queue = 0.0;
  /// per_arm_series[t][i] is the cross-run mean of Q_i(t)
  std::vector<std::vector<double>> per_arm_series;
};

QueueStats queue_stats(std::span<const RunTrace> traces);

std::vector<SeriesPoint> queue_series_from_summaries(std::span<const RunSummary> runs);

// Analytic bounds ---------------------------------------------------------------

/// 2 sqrt(6) w_max
double regret_beta1(double w_max);
/// (1 + 5 pi^2 / 12) w_max
double regret_beta2(double w_max);
/// B = N/2 + eta m w_max
double stability_constant(std::size_t n_arms, std::size_t max_plays, double eta, double w_max);
/// B / eps, or +infinity when eps <= 0.
double stability_bound(double b, double epsilon);

/// N/(2 eta) + (beta1 sqrt(m N T ln T) + beta2 N) / T. Requires T >= 2 and
/// eta > 0 (std::invalid_argument otherwise).
double regret_upper_bound(std::size_t n_arms, std::size_t max_plays, std::size_t horizon,
                          double eta, double w_max);

struct BoundPoint {
  double eta = 0.0;
  std::size_t t = 0;
  double regret_bound = 0.0;
};

struct StabilityPoint {
  double eta = 0.0;
  double b = 0.0;
  double bound = 0.0;  // B / eps
};

struct BoundReport {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double epsilon = 0.0;
  std::vector<StabilityPoint> stability;
  std::vector<BoundPoint> regret;
};

/// Checkpoints below 2 are skipped in the regret part.
BoundReport bound_report(std::size_t n_arms, std::size_t max_plays, double w_max,
                         double epsilon, std::span<const double> etas,
                         std::span<const std::size_t> checkpoints);

}  // namespace fairmab

#endif  // FAIRMAB_METRICS_HPP
