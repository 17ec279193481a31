#include "fairmab/env.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "fairmab/errors.hpp"

namespace fairmab {

namespace {

constexpr double kProbabilityTolerance = 1e-9;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate_availability(const AvailabilityModel& model, std::size_t n_arms) {
  std::visit(
      Overloaded{
          [&](const IndependentBernoulli& m) {
            if (m.p.size() != n_arms) {
              throw InvalidDistribution("availability p has " + std::to_string(m.p.size()) +
                                        " entries, expected " + std::to_string(n_arms));
            }
            for (double p : m.p) {
              if (!(p >= 0.0 && p <= 1.0)) {
                throw InvalidDistribution("availability probability outside [0,1]");
              }
            }
          },
          [&](const CategoricalAvailability& m) {
            if (m.entries.empty()) throw InvalidDistribution("categorical availability is empty");
            std::set<ArmSet> seen;
            double total = 0.0;
            for (const auto& [set, prob] : m.entries) {
              if (!set.fits(n_arms)) {
                throw InvalidDistribution("availability set " + set.to_string() +
                                          " references an arm beyond n_arms");
              }
              if (!(prob >= 0.0) || !std::isfinite(prob)) {
                throw InvalidDistribution("negative availability probability");
              }
              if (!seen.insert(set).second) {
                throw InvalidDistribution("availability set " + set.to_string() +
                                          " listed twice");
              }
              total += prob;
            }
            if (std::abs(total - 1.0) > kProbabilityTolerance) {
              throw InvalidDistribution("categorical availability sums to " +
                                        std::to_string(total));
            }
          },
      },
      model);
}

double sample_reward(const RewardModel& model, std::size_t arm, double mean, Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const BernoulliRewards&) { return uniform01(rng) < mean ? 1.0 : 0.0; },
          [&](const BetaRewards& m) {
            if (mean <= 0.0 || mean >= 1.0) return mean;
            std::gamma_distribution<double> ga(mean * m.concentration, 1.0);
            std::gamma_distribution<double> gb((1.0 - mean) * m.concentration, 1.0);
            const double a = ga(rng);
            const double b = gb(rng);
            return a + b > 0.0 ? a / (a + b) : mean;
          },
          [&](const CustomRewards& m) {
            const double x = m.sample(arm, mean, rng);
            if (!(x >= 0.0 && x <= 1.0)) {
              throw InvalidConfig("reward sampler '" + m.name + "' returned a value outside [0,1]");
            }
            return x;
          },
      },
      model);
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double EnvironmentConfig::max_weight() const {
  return weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end());
}

void EnvironmentConfig::validate() const {
  if (n_arms < 1 || n_arms > kMaxArms) {
    throw InvalidConfig("n_arms must be in [1, 64], got " + std::to_string(n_arms));
  }
  if (max_plays < 1 || max_plays > n_arms) {
    throw InvalidConfig("max_plays must be in [1, n_arms], got " + std::to_string(max_plays));
  }
  auto check_length = [&](const std::vector<double>& v, const char* name) {
    if (v.size() != n_arms) {
      throw InvalidConfig(std::string(name) + " has " + std::to_string(v.size()) +
                          " entries, expected " + std::to_string(n_arms));
    }
  };
  check_length(means, "means");
  check_length(weights, "weights");
  check_length(min_fractions, "min_fractions");
  for (std::size_t i = 0; i < n_arms; ++i) {
    const std::string arm = " (arm " + std::to_string(i + 1) + ")";
    if (!(means[i] >= 0.0 && means[i] <= 1.0)) throw InvalidConfig("mean outside [0,1]" + arm);
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw InvalidConfig("weight must be positive and finite" + arm);
    }
    if (!(min_fractions[i] > 0.0 && min_fractions[i] < 1.0)) {
      throw InvalidConfig("min_fraction outside (0,1)" + arm);
    }
  }
  validate_availability(availability, n_arms);
  if (const auto* beta = std::get_if<BetaRewards>(&reward_model)) {
    if (!(beta->concentration > 0.0) || !std::isfinite(beta->concentration)) {
      throw InvalidConfig("beta reward concentration must be positive");
    }
  }
  if (const auto* custom = std::get_if<CustomRewards>(&reward_model)) {
    if (!custom->sample) throw InvalidConfig("custom reward model has no sampler");
  }
}

AvailabilityPmf availability_pmf(const AvailabilityModel& model, std::size_t n_arms,
                                 std::size_t enumeration_cap) {
  validate_availability(model, n_arms);
  AvailabilityPmf pmf;
  if (const auto* cat = std::get_if<CategoricalAvailability>(&model)) {
    for (const auto& [set, prob] : cat->entries) pmf.emplace(set, prob);
    return pmf;
  }
  if (n_arms > enumeration_cap) {
    throw CapExceeded("availability enumeration over 2^" + std::to_string(n_arms) +
                      " sets exceeds the cap of 2^" + std::to_string(enumeration_cap));
  }
  const auto& p = std::get<IndependentBernoulli>(model).p;
  const std::uint64_t count = std::uint64_t{1} << n_arms;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n_arms; ++i) {
      prob *= ((mask >> i) & 1u) ? p[i] : 1.0 - p[i];
    }
    pmf.emplace(ArmSet::from_mask(mask), prob);
  }
  return pmf;
}

void sample_round(const EnvironmentConfig& config, Rng& rng, RoundDraw& out) {
  const std::size_t n = config.n_arms;
  out.available = ArmSet{};
  std::visit(Overloaded{
                 [&](const IndependentBernoulli& m) {
                   for (std::size_t i = 0; i < n; ++i) {
                     if (uniform01(rng) < m.p[i]) out.available.insert(i);
                   }
                 },
                 [&](const CategoricalAvailability& m) {
                   const double u = uniform01(rng);
                   double cumulative = 0.0;
                   for (const auto& [set, prob] : m.entries) {
                     if (prob > 0.0) out.available = set;  // rounding fallback
                   }
                   for (const auto& [set, prob] : m.entries) {
                     cumulative += prob;
                     if (u < cumulative) {
                       out.available = set;
                       break;
                     }
                   }
                 },
             },
             config.availability);
  out.rewards.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.rewards[i] = sample_reward(config.reward_model, i, config.means[i], rng);
  }
}

RoundDraw sample_round(const EnvironmentConfig& config, Rng& rng) {
  RoundDraw draw;
  sample_round(config, rng, draw);
  return draw;
}

}  // namespace fairmab
