#ifndef FAIRMAB_POLICY_HPP
#define FAIRMAB_POLICY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairmab/arm_set.hpp"
#include "fairmab/env.hpp"

namespace fairmab {

/// Truncated UCB estimate. Returns 1 for an arm that has never been played,
/// otherwise min{mean + sqrt(3 ln t / (2h)), 1} with the natural log.
double ucb_estimate(std::optional<double> sample_mean, std::uint64_t play_count,
                    std::uint64_t round);

/// One step of the per-arm debt counter: max{q + r - d, 0}.
double update_queue(double q, double min_fraction, bool played);

/// The min{k, |available|} available arms with the largest values. Ties go to
/// the lower arm index.
ArmSet select_top_k(std::span<const double> values, ArmSet available, std::size_t k);

/// Per-arm play counts and reward sums, plus the index of the current round.
class UcbState {
 public:
  explicit UcbState(std::size_t n_arms);
  /// Restores a state; throws InvalidConfig unless every count is <= round
  /// and every sum lies in [0, count].
  UcbState(std::vector<std::uint64_t> play_counts, std::vector<double> reward_sums,
           std::uint64_t round);

  std::size_t n_arms() const { return play_counts_.size(); }
  std::uint64_t round() const { return round_; }
  std::uint64_t play_count(std::size_t arm) const { return play_counts_[arm]; }
  double reward_sum(std::size_t arm) const { return reward_sums_[arm]; }
  std::optional<double> sample_mean(std::size_t arm) const;

  /// UCB estimate of `arm` for the current round.
  double estimate(std::size_t arm) const;
  void estimates(std::span<double> out) const;

  /// Ingests the rewards of the played arms and advances the round counter.
  /// Only entries of `rewards` that belong to `played` are read.
  void record(ArmSet played, std::span<const double> rewards);

 private:
  std::vector<std::uint64_t> play_counts_;
  std::vector<double> reward_sums_;
  std::uint64_t round_ = 0;
};

/// Virtual queues Q_i, one per arm. `lengths()` is always Q(t) for the
/// current round t.
class VirtualQueues {
 public:
  explicit VirtualQueues(std::vector<double> min_fractions);
  /// Starts from the given Q(t) instead of zeros. Lengths must be >= 0.
  VirtualQueues(std::vector<double> min_fractions, std::vector<double> lengths);

  std::size_t n_arms() const { return lengths_.size(); }
  std::span<const double> lengths() const { return lengths_; }
  double length(std::size_t arm) const { return lengths_[arm]; }
  std::span<const double> min_fractions() const { return min_fractions_; }
  double total() const;

  /// Q(t+1) from Q(t) and the arms played in round t.
  void advance(ArmSet played);

 private:
  std::vector<double> min_fractions_;
  std::vector<double> lengths_;
};

struct LfgState {
  LfgState(double eta, std::vector<double> min_fractions);
  LfgState(double eta, UcbState ucb, VirtualQueues queues);

  double eta;
  UcbState ucb;
  VirtualQueues queues;
};

/// Super arm maximising sum_{i in S} (Q_i + eta w_i ucb_i) over |S| <= m.
ArmSet lfg_select(const LfgState& state, std::span<const double> weights, ArmSet available,
                  std::size_t max_plays);

/// Fairness-oblivious baseline: maximises sum_{i in S} w_i ucb_i.
ArmSet llrs_select(std::span<const double> ucb_values, std::span<const double> weights,
                   ArmSet available, std::size_t max_plays);

struct SuperArmChoice {
  ArmSet arms;
  double probability = 0.0;
};

/// A stationary randomised policy that looks only at the available set:
/// one distribution over feasible super arms per availability set.
class AOnlyPolicy {
 public:
  using Table = std::map<ArmSet, std::vector<SuperArmChoice>>;

  AOnlyPolicy() = default;
  /// Validates every distribution (sums to 1 within 1e-9, S subset of Z,
  /// |S| <= max_plays). Throws InvalidDistribution.
  AOnlyPolicy(std::size_t max_plays, Table table);

  /// Availability sets missing from the table get the lowest-index top-m
  /// super arm instead of raising UnknownAvailabilitySet. Used for sets of
  /// probability zero that the oracle leaves out.
  void enable_lowest_index_fallback() { fallback_ = true; }
  bool has_fallback() const { return fallback_; }

  std::size_t max_plays() const { return max_plays_; }
  const Table& table() const { return table_; }

  /// Distribution used for `available`. The fallback yields a one-entry
  /// distribution. Throws UnknownAvailabilitySet.
  std::vector<SuperArmChoice> distribution(ArmSet available) const;

 private:
  std::size_t max_plays_ = 0;
  Table table_;
  bool fallback_ = false;
};

ArmSet aonly_select(const AOnlyPolicy& policy, ArmSet available, Rng& rng);

// Runtime policies --------------------------------------------------------------

class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string kind() const = 0;
  /// Chooses the super arm for the current round.
  virtual ArmSet select(ArmSet available, Rng& rng) = 0;
  /// Semi-bandit feedback: `feedback[i]` is X_i(t) for played arms and NaN
  /// for every other arm.
  virtual void observe(ArmSet played, std::span<const double> feedback) = 0;
};

class LfgPolicy final : public Policy {
 public:
  LfgPolicy(const EnvironmentConfig& config, double eta);

  std::string kind() const override { return "LFG"; }
  ArmSet select(ArmSet available, Rng& rng) override;
  void observe(ArmSet played, std::span<const double> feedback) override;

  const LfgState& state() const { return state_; }

 private:
  std::vector<double> weights_;
  std::size_t max_plays_;
  LfgState state_;
};

class LlrsPolicy final : public Policy {
 public:
  explicit LlrsPolicy(const EnvironmentConfig& config);

  std::string kind() const override { return "LLRS"; }
  ArmSet select(ArmSet available, Rng& rng) override;
  void observe(ArmSet played, std::span<const double> feedback) override;

  const UcbState& ucb() const { return ucb_; }

 private:
  std::vector<double> weights_;
  std::size_t max_plays_;
  UcbState ucb_;
  std::vector<double> scratch_;
};

class AOnlyPlaybackPolicy final : public Policy {
 public:
  explicit AOnlyPlaybackPolicy(AOnlyPolicy policy) : policy_(std::move(policy)) {}

  std::string kind() const override { return "AOnly"; }
  ArmSet select(ArmSet available, Rng& rng) override;
  void observe(ArmSet, std::span<const double>) override {}

 private:
  AOnlyPolicy policy_;
};

class EmptyActionPolicy final : public Policy {
 public:
  std::string kind() const override { return "Empty"; }
  ArmSet select(ArmSet, Rng&) override { return {}; }
  void observe(ArmSet, std::span<const double>) override {}
};

/// Plays one round: select, check the action against the available set and
/// m, hand the played arms' rewards back to the policy. Returns d(t).
ActionVector policy_round(Policy& policy, const RoundDraw& draw, std::size_t max_plays,
                          Rng& rng);

}  // namespace fairmab

#endif  // FAIRMAB_POLICY_HPP
