#include "fairmab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fairmab/errors.hpp"

namespace fairmab {

RunTrace::RunTrace(std::string policy_label, std::uint64_t seed, std::size_t n_arms)
    : policy_label_(std::move(policy_label)), seed_(seed), n_arms_(n_arms) {}

void RunTrace::reserve(std::size_t rounds) {
  available_.reserve(rounds);
  action_.reserve(rounds);
  rewards_.reserve(rounds * n_arms_);
  queues_.reserve(rounds * n_arms_);
}

void RunTrace::append(ArmSet available, ArmSet action, std::span<const double> rewards,
                      std::span<const double> queues) {
  available_.push_back(available);
  action_.push_back(action);
  for (std::size_t i = 0; i < n_arms_; ++i) {
    rewards_.push_back(action.contains(i) ? rewards[i] : 0.0);
  }
  queues_.insert(queues_.end(), queues.begin(), queues.begin() + n_arms_);
}

std::vector<std::size_t> default_checkpoints(std::size_t horizon) {
  std::vector<std::size_t> out;
  for (std::size_t decade = 10; decade < horizon; decade *= 10) {
    for (std::size_t factor : {1, 2, 5}) {
      const std::size_t t = decade * factor;
      if (t < horizon) out.push_back(t);
    }
    if (decade > std::numeric_limits<std::size_t>::max() / 10) break;
  }
  out.push_back(horizon);
  return out;
}

namespace {

void check_checkpoints(std::span<const std::size_t> checkpoints, std::size_t horizon) {
  if (checkpoints.empty()) throw std::invalid_argument("no checkpoints");
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    if (checkpoints[k] == 0 || checkpoints[k] > horizon) {
      throw std::invalid_argument("checkpoint " + std::to_string(checkpoints[k]) +
                                  " outside [1, " + std::to_string(horizon) + "]");
    }
    if (k > 0 && checkpoints[k] <= checkpoints[k - 1]) {
      throw std::invalid_argument("checkpoints must be strictly increasing");
    }
  }
}

void check_same_shape(std::span<const RunTrace> traces) {
  if (traces.empty()) throw MismatchedTraces("no traces");
  for (const auto& trace : traces) {
    if (trace.horizon() != traces.front().horizon() ||
        trace.n_arms() != traces.front().n_arms()) {
      throw MismatchedTraces("traces differ in horizon or arm count");
    }
  }
  if (traces.front().horizon() == 0) throw MismatchedTraces("empty trace");
}

}  // namespace

RunSummary summarize_run(const RunTrace& trace, std::span<const std::size_t> checkpoints,
                         std::span<const double> weights, std::span<const double> means) {
  check_checkpoints(checkpoints, trace.horizon());
  const std::size_t n = trace.n_arms();
  RunSummary s;
  s.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  s.n_arms = n;
  s.pseudo_reward.reserve(checkpoints.size());
  s.realized_reward.reserve(checkpoints.size());
  s.fractions.reserve(checkpoints.size() * n);
  s.queue_time_average.reserve(checkpoints.size());

  double pseudo = 0.0;
  double realized = 0.0;
  double queue_sum = 0.0;
  std::vector<std::uint64_t> plays(n, 0);
  std::size_t next = 0;
  for (std::size_t t = 0; t < trace.horizon() && next < checkpoints.size(); ++t) {
    const ArmSet action = trace.action(t);
    action.for_each([&](std::size_t i) {
      pseudo += weights[i] * means[i];
      realized += weights[i] * trace.reward(t, i);
      ++plays[i];
    });
    for (double q : trace.queues(t)) {
      queue_sum += q;
      s.max_queue = std::max(s.max_queue, q);
    }
    if (t + 1 == checkpoints[next]) {
      const double horizon = static_cast<double>(t + 1);
      s.pseudo_reward.push_back(pseudo / horizon);
      s.realized_reward.push_back(realized / horizon);
      for (std::size_t i = 0; i < n; ++i) {
        s.fractions.push_back(static_cast<double>(plays[i]) / horizon);
      }
      s.queue_time_average.push_back(queue_sum / horizon);
      ++next;
    }
  }
  return s;
}

SeriesPoint aggregate(std::size_t t, std::span<const double> values) {
  SeriesPoint p;
  p.t = t;
  if (values.empty()) return p;
  double sum = 0.0;
  for (double v : values) sum += v;
  p.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - p.mean) * (v - p.mean);
    const double n = static_cast<double>(values.size());
    p.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return p;
}

RegretSeries regret_series_from_summaries(std::span<const RunSummary> runs,
                                          double optimal_reward, RegretVariant variant) {
  if (runs.empty()) throw MismatchedTraces("no runs");
  RegretSeries series;
  series.variant = variant;
  const auto& checkpoints = runs.front().checkpoints;
  std::vector<double> values(runs.size());
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (runs[r].checkpoints != checkpoints) throw MismatchedTraces("checkpoint lists differ");
      const auto& rewards =
          variant == RegretVariant::kPseudo ? runs[r].pseudo_reward : runs[r].realized_reward;
      values[r] = optimal_reward - rewards[k];
    }
    series.points.push_back(aggregate(checkpoints[k], values));
  }
  return series;
}

RegretSeries regret_series(std::span<const RunTrace> traces, double optimal_reward,
                           std::span<const double> weights, std::span<const double> means,
                           RegretVariant variant, std::span<const std::size_t> checkpoints) {
  check_same_shape(traces);
  std::vector<RunSummary> runs;
  runs.reserve(traces.size());
  for (const auto& trace : traces) {
    runs.push_back(summarize_run(trace, checkpoints, weights, means));
  }
  return regret_series_from_summaries(runs, optimal_reward, variant);
}

std::vector<double> selection_fractions(const RunTrace& trace) {
  if (trace.horizon() == 0) throw MismatchedTraces("empty trace");
  std::vector<double> out(trace.n_arms(), 0.0);
  for (std::size_t t = 0; t < trace.horizon(); ++t) {
    trace.action(t).for_each([&](std::size_t i) { out[i] += 1.0; });
  }
  for (double& f : out) f /= static_cast<double>(trace.horizon());
  return out;
}

std::vector<double> selection_fractions(std::span<const RunTrace> traces) {
  check_same_shape(traces);
  std::vector<double> out(traces.front().n_arms(), 0.0);
  for (const auto& trace : traces) {
    const auto f = selection_fractions(trace);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += f[i];
  }
  for (double& f : out) f /= static_cast<double>(traces.size());
  return out;
}

std::vector<FractionPoint> selection_fraction_series(std::span<const RunSummary> runs) {
  std::vector<FractionPoint> out;
  if (runs.empty()) return out;
  const auto& checkpoints = runs.front().checkpoints;
  const std::size_t n = runs.front().n_arms;
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    FractionPoint p;
    p.t = checkpoints[k];
    p.mean.assign(n, 0.0);
    for (const auto& run : runs) {
      for (std::size_t i = 0; i < n; ++i) p.mean[i] += run.fraction(k, i);
    }
    for (double& f : p.mean) f /= static_cast<double>(runs.size());
    out.push_back(std::move(p));
  }
  return out;
}

QueueStats queue_stats(std::span<const RunTrace> traces) {
  check_same_shape(traces);
  const std::size_t horizon = traces.front().horizon();
  const std::size_t n = traces.front().n_arms();
  QueueStats stats;
  stats.per_arm_series.assign(horizon, std::vector<double>(n, 0.0));
  for (const auto& trace : traces) {
    double total = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
      const auto q = trace.queues(t);
      for (std::size_t i = 0; i < n; ++i) {
        total += q[i];
        stats.max_queue = std::max(stats.max_queue, q[i]);
        stats.per_arm_series[t][i] += q[i];
      }
    }
    stats.time_average_total_queue += total / static_cast<double>(horizon);
  }
  const double runs = static_cast<double>(traces.size());
  stats.time_average_total_queue /= runs;
  for (auto& row : stats.per_arm_series) {
    for (double& q : row) q /= runs;
  }
  return stats;
}

std::vector<SeriesPoint> queue_series_from_summaries(std::span<const RunSummary> runs) {
  std::vector<SeriesPoint> out;
  if (runs.empty()) return out;
  const auto& checkpoints = runs.front().checkpoints;
  std::vector<double> values(runs.size());
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    for (std::size_t r = 0; r < runs.size(); ++r) values[r] = runs[r].queue_time_average[k];
    out.push_back(aggregate(checkpoints[k], values));
  }
  return out;
}

// Bounds ------------------------------------------------------------------------

double regret_beta1(double w_max) { return 2.0 * std::sqrt(6.0) * w_max; }

double regret_beta2(double w_max) {
  return (1.0 + 5.0 * std::numbers::pi * std::numbers::pi / 12.0) * w_max;
}

double stability_constant(std::size_t n_arms, std::size_t max_plays, double eta, double w_max) {
  return static_cast<double>(n_arms) / 2.0 + eta * static_cast<double>(max_plays) * w_max;
}

double stability_bound(double b, double epsilon) {
  return epsilon > 0.0 ? b / epsilon : std::numeric_limits<double>::infinity();
}

double regret_upper_bound(std::size_t n_arms, std::size_t max_plays, std::size_t horizon,
                          double eta, double w_max) {
  if (horizon < 2) throw std::invalid_argument("regret bound needs T >= 2");
  if (!(eta > 0.0)) throw std::invalid_argument("regret bound needs eta > 0");
  const double n = static_cast<double>(n_arms);
  const double m = static_cast<double>(max_plays);
  const double t = static_cast<double>(horizon);
  const double learning =
      (regret_beta1(w_max) * std::sqrt(m * n * t * std::log(t)) + regret_beta2(w_max) * n) / t;
  return n / (2.0 * eta) + learning;
}

BoundReport bound_report(std::size_t n_arms, std::size_t max_plays, double w_max,
                         double epsilon, std::span<const double> etas,
                         std::span<const std::size_t> checkpoints) {
  BoundReport report;
  report.beta1 = regret_beta1(w_max);
  report.beta2 = regret_beta2(w_max);
  report.epsilon = epsilon;
  for (double eta : etas) {
    const double b = stability_constant(n_arms, max_plays, eta, w_max);
    report.stability.push_back({eta, b, stability_bound(b, epsilon)});
    for (std::size_t t : checkpoints) {
      if (t < 2) continue;
      report.regret.push_back({eta, t, regret_upper_bound(n_arms, max_plays, t, eta, w_max)});
    }
  }
  return report;
}

}  // namespace fairmab
