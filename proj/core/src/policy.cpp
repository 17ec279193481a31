#include "fairmab/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fairmab/errors.hpp"

namespace fairmab {

namespace {
constexpr double kProbabilityTolerance = 1e-9;
}

double ucb_estimate(std::optional<double> sample_mean, std::uint64_t play_count,
                    std::uint64_t round) {
  if (play_count == 0 || !sample_mean) return 1.0;
  const double t = static_cast<double>(std::max<std::uint64_t>(round, 1));
  const double radius = std::sqrt(3.0 * std::log(t) / (2.0 * static_cast<double>(play_count)));
  return std::min(*sample_mean + radius, 1.0);
}

double update_queue(double q, double min_fraction, bool played) {
  return std::max(q + min_fraction - (played ? 1.0 : 0.0), 0.0);
}

ArmSet select_top_k(std::span<const double> values, ArmSet available, std::size_t k) {
  // Greedy: repeatedly take the best remaining arm. Strict comparison keeps
  // the lowest index among equal values.
  ArmSet chosen;
  ArmSet remaining = available;
  const std::size_t target = std::min(k, available.size());
  for (std::size_t step = 0; step < target; ++step) {
    std::size_t best = kMaxArms;
    double best_value = -std::numeric_limits<double>::infinity();
    remaining.for_each([&](std::size_t i) {
      if (best == kMaxArms || values[i] > best_value) {
        best = i;
        best_value = values[i];
      }
    });
    chosen.insert(best);
    remaining.erase(best);
  }
  return chosen;
}

// UcbState ----------------------------------------------------------------------

UcbState::UcbState(std::size_t n_arms) : play_counts_(n_arms, 0), reward_sums_(n_arms, 0.0) {}

UcbState::UcbState(std::vector<std::uint64_t> play_counts, std::vector<double> reward_sums,
                   std::uint64_t round)
    : play_counts_(std::move(play_counts)), reward_sums_(std::move(reward_sums)), round_(round) {
  if (play_counts_.size() != reward_sums_.size()) {
    throw InvalidConfig("play counts and reward sums differ in length");
  }
  for (std::size_t i = 0; i < play_counts_.size(); ++i) {
    const auto h = static_cast<double>(play_counts_[i]);
    if (play_counts_[i] > round_ || !(reward_sums_[i] >= 0.0 && reward_sums_[i] <= h)) {
      throw InvalidConfig("inconsistent UCB statistics for arm " + std::to_string(i + 1));
    }
  }
}

std::optional<double> UcbState::sample_mean(std::size_t arm) const {
  if (play_counts_[arm] == 0) return std::nullopt;
  return reward_sums_[arm] / static_cast<double>(play_counts_[arm]);
}

double UcbState::estimate(std::size_t arm) const {
  return ucb_estimate(sample_mean(arm), play_counts_[arm], round_);
}

void UcbState::estimates(std::span<double> out) const {
  for (std::size_t i = 0; i < play_counts_.size(); ++i) out[i] = estimate(i);
}

void UcbState::record(ArmSet played, std::span<const double> rewards) {
  played.for_each([&](std::size_t i) {
    ++play_counts_[i];
    reward_sums_[i] += rewards[i];
  });
  ++round_;
}

// VirtualQueues -----------------------------------------------------------------

VirtualQueues::VirtualQueues(std::vector<double> min_fractions)
    : min_fractions_(std::move(min_fractions)), lengths_(min_fractions_.size(), 0.0) {}

VirtualQueues::VirtualQueues(std::vector<double> min_fractions, std::vector<double> lengths)
    : min_fractions_(std::move(min_fractions)), lengths_(std::move(lengths)) {
  if (lengths_.size() != min_fractions_.size()) {
    throw InvalidConfig("queue lengths and min fractions differ in length");
  }
  for (double q : lengths_) {
    if (!(q >= 0.0)) throw InvalidConfig("queue lengths must be nonnegative");
  }
}

double VirtualQueues::total() const {
  return std::accumulate(lengths_.begin(), lengths_.end(), 0.0);
}

void VirtualQueues::advance(ArmSet played) {
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    lengths_[i] = update_queue(lengths_[i], min_fractions_[i], played.contains(i));
  }
}

LfgState::LfgState(double eta_, std::vector<double> min_fractions)
    : eta(eta_), ucb(min_fractions.size()), queues(std::move(min_fractions)) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidConfig("eta must be positive");
}

LfgState::LfgState(double eta_, UcbState ucb_, VirtualQueues queues_)
    : eta(eta_), ucb(std::move(ucb_)), queues(std::move(queues_)) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidConfig("eta must be positive");
  if (ucb.n_arms() != queues.n_arms()) throw InvalidConfig("UCB and queue sizes differ");
}

// Selection rules ---------------------------------------------------------------

ArmSet lfg_select(const LfgState& state, std::span<const double> weights, ArmSet available,
                  std::size_t max_plays) {
  const std::size_t n = state.queues.n_arms();
  double values[kMaxArms];
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = state.queues.length(i) + state.eta * weights[i] * state.ucb.estimate(i);
  }
  return select_top_k({values, n}, available, max_plays);
}

ArmSet llrs_select(std::span<const double> ucb_values, std::span<const double> weights,
                   ArmSet available, std::size_t max_plays) {
  const std::size_t n = ucb_values.size();
  double values[kMaxArms];
  for (std::size_t i = 0; i < n; ++i) values[i] = weights[i] * ucb_values[i];
  return select_top_k({values, n}, available, max_plays);
}

// AOnlyPolicy -------------------------------------------------------------------

AOnlyPolicy::AOnlyPolicy(std::size_t max_plays, Table table)
    : max_plays_(max_plays), table_(std::move(table)) {
  for (const auto& [z, choices] : table_) {
    if (choices.empty()) {
      throw InvalidDistribution("no super arms for availability set " + z.to_string());
    }
    double total = 0.0;
    for (const auto& c : choices) {
      if (!(c.probability >= 0.0 && c.probability <= 1.0)) {
        throw InvalidDistribution("super arm probability outside [0,1]");
      }
      if (!c.arms.is_subset_of(z) || c.arms.size() > max_plays_) {
        throw InvalidDistribution("super arm " + c.arms.to_string() +
                                  " is not feasible for availability set " + z.to_string());
      }
      total += c.probability;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      throw InvalidDistribution("distribution for " + z.to_string() + " sums to " +
                                std::to_string(total));
    }
  }
}

std::vector<SuperArmChoice> AOnlyPolicy::distribution(ArmSet available) const {
  if (auto it = table_.find(available); it != table_.end()) return it->second;
  if (fallback_) {
    ArmSet lowest;
    std::size_t taken = 0;
    available.for_each([&](std::size_t i) {
      if (taken < max_plays_) {
        lowest.insert(i);
        ++taken;
      }
    });
    return {{lowest, 1.0}};
  }
  throw UnknownAvailabilitySet("policy has no distribution for availability set " +
                               available.to_string());
}

ArmSet aonly_select(const AOnlyPolicy& policy, ArmSet available, Rng& rng) {
  const auto choices = policy.distribution(available);
  const double u = uniform01(rng);
  double cumulative = 0.0;
  ArmSet last_positive = choices.front().arms;
  for (const auto& c : choices) {
    if (c.probability <= 0.0) continue;
    last_positive = c.arms;
    cumulative += c.probability;
    if (u < cumulative) return c.arms;
  }
  return last_positive;
}

// Runtime policies --------------------------------------------------------------

LfgPolicy::LfgPolicy(const EnvironmentConfig& config, double eta)
    : weights_(config.weights), max_plays_(config.max_plays), state_(eta, config.min_fractions) {}

ArmSet LfgPolicy::select(ArmSet available, Rng&) {
  return lfg_select(state_, weights_, available, max_plays_);
}

void LfgPolicy::observe(ArmSet played, std::span<const double> feedback) {
  state_.ucb.record(played, feedback);
  state_.queues.advance(played);
}

LlrsPolicy::LlrsPolicy(const EnvironmentConfig& config)
    : weights_(config.weights),
      max_plays_(config.max_plays),
      ucb_(config.n_arms),
      scratch_(config.n_arms) {}

ArmSet LlrsPolicy::select(ArmSet available, Rng&) {
  ucb_.estimates(scratch_);
  return llrs_select(scratch_, weights_, available, max_plays_);
}

void LlrsPolicy::observe(ArmSet played, std::span<const double> feedback) {
  ucb_.record(played, feedback);
}

ArmSet AOnlyPlaybackPolicy::select(ArmSet available, Rng& rng) {
  return aonly_select(policy_, available, rng);
}

ActionVector policy_round(Policy& policy, const RoundDraw& draw, std::size_t max_plays,
                          Rng& rng) {
  const ArmSet action = policy.select(draw.available, rng);
  if (!action.is_subset_of(draw.available) || action.size() > max_plays) {
    throw std::logic_error(policy.kind() + " chose " + action.to_string() +
                           " with available set " + draw.available.to_string());
  }
  double feedback[kMaxArms];
  const std::size_t n = draw.rewards.size();
  for (std::size_t i = 0; i < n; ++i) {
    feedback[i] = action.contains(i) ? draw.rewards[i] : std::numeric_limits<double>::quiet_NaN();
  }
  policy.observe(action, {feedback, n});
  return action;
}

}  // namespace fairmab
