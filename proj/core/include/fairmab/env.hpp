#ifndef FAIRMAB_ENV_HPP
#define FAIRMAB_ENV_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fairmab/arm_set.hpp"

namespace fairmab {

using Rng = std::mt19937_64;

/// Independent stream `stream` of run seed `seed`. Environment draws use
/// stream 0 and policy randomisation stream 1, so every policy in a run sees
/// the same availability and reward sequence.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
double uniform01(Rng& rng);

// Availability models -------------------------------------------------------

/// Arm i is available with probability p[i], independently of the others.
struct IndependentBernoulli {
  std::vector<double> p;
};

/// Explicit distribution over availability sets.
struct CategoricalAvailability {
  std::vector<std::pair<ArmSet, double>> entries;
};

using AvailabilityModel = std::variant<IndependentBernoulli, CategoricalAvailability>;

// Reward models --------------------------------------------------------------

struct BernoulliRewards {};

/// Beta(mean * c, (1 - mean) * c); degenerates to the mean at 0 or 1.
struct BetaRewards {
  double concentration = 2.0;
};

/// Any sampler returning a value in [0, 1] whose expectation is `mean`.
using RewardSampler = std::function<double(std::size_t arm, double mean, Rng& rng)>;

struct CustomRewards {
  std::string name;
  RewardSampler sample;
};

using RewardModel = std::variant<BernoulliRewards, BetaRewards, CustomRewards>;

// Problem instance -------------------------------------------------------------

struct EnvironmentConfig {
  std::size_t n_arms = 0;
  std::size_t max_plays = 0;
  std::vector<double> means;
  std::vector<double> weights;
  std::vector<double> min_fractions;
  AvailabilityModel availability = IndependentBernoulli{};
  RewardModel reward_model = BernoulliRewards{};

  double max_weight() const;

  /// Throws InvalidConfig (or InvalidDistribution for the availability
  /// model) when an invariant does not hold.
  void validate() const;
};

struct RoundDraw {
  ArmSet available;
  /// X_i(t) for every arm; policies only ever see the played entries.
  std::vector<double> rewards;
};

inline constexpr std::size_t kDefaultEnumerationCap = 16;

using AvailabilityPmf = std::map<ArmSet, double>;

/// P_A(Z) over the whole power set (independent model) or the declared
/// support (categorical model).
AvailabilityPmf availability_pmf(const AvailabilityModel& model, std::size_t n_arms,
                                 std::size_t enumeration_cap = kDefaultEnumerationCap);

RoundDraw sample_round(const EnvironmentConfig& config, Rng& rng);

/// Same as above, reusing the storage of `out`.
void sample_round(const EnvironmentConfig& config, Rng& rng, RoundDraw& out);

}  // namespace fairmab

#endif  // FAIRMAB_ENV_HPP
