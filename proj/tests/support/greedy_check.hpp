// Random instances comparing the greedy selection rules against a full
// power-set search over feasible super arms.
#ifndef FAIRMAB_TESTS_GREEDY_CHECK_HPP
#define FAIRMAB_TESTS_GREEDY_CHECK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fairmab/policy.hpp"
#include "reference_oracles.hpp"

namespace greedy_check {

struct Outcome {
  int instances = 0;
  int failures = 0;
  std::string first_failure;
};

inline double reference_ucb(double sum, std::uint64_t h, std::uint64_t round) {
  if (h == 0) return 1.0;
  const double t = static_cast<double>(std::max<std::uint64_t>(round, 1));
  const double mean = sum / static_cast<double>(h);
  return std::min(mean + std::sqrt(3.0 * std::log(t) / (2.0 * static_cast<double>(h))), 1.0);
}

/// Runs `count` LFG instances and `count` LLRS instances.
inline Outcome run(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  Outcome out;
  auto check = [&](const char* rule, const std::vector<double>& values, fairmab::ArmSet chosen,
                   fairmab::ArmSet available, std::size_t m) {
    ++out.instances;
    const double got = reference::subset_value(values, chosen.mask());
    const double best = reference::exhaustive_best(values, available.mask(), m);
    const bool ok = chosen.is_subset_of(available) &&
                    chosen.size() == std::min(m, available.size()) && got == best;
    if (!ok) {
      if (out.failures == 0) {
        out.first_failure = std::string(rule) + ": chose " + chosen.to_string() + " from " +
                            available.to_string() + " value " + std::to_string(got) +
                            " vs exhaustive " + std::to_string(best);
      }
      ++out.failures;
    }
  };

  const double etas[] = {0.5, 1.0, 10.0, 100.0, 1000.0};
  for (int k = 0; k < count; ++k) {
    const std::size_t n = pick(1, 8);
    const std::size_t m = pick(1, std::min<std::size_t>(4, n));
    const auto available = fairmab::ArmSet::from_mask(pick(0, (std::uint64_t{1} << n) - 1));
    // Every fourth instance uses coarse values so that ties are common.
    const bool coarse = k % 4 == 0;

    const std::uint64_t round = pick(1, 5000);
    std::vector<std::uint64_t> counts(n);
    std::vector<double> sums(n), queues(n), weights(n), min_fractions(n, 0.1);
    for (std::size_t i = 0; i < n; ++i) {
      counts[i] = coarse || unit(rng) < 0.2 ? 0 : pick(1, round);
      sums[i] = std::floor(unit(rng) * static_cast<double>(counts[i]));
      queues[i] = coarse ? static_cast<double>(pick(0, 3)) : (unit(rng) < 0.2 ? 0.0 : 50.0 * unit(rng));
      weights[i] = coarse ? 1.0 : 0.1 + 2.9 * unit(rng);
    }
    const double eta = etas[pick(0, 4)];
    const fairmab::LfgState state(eta, fairmab::UcbState(counts, sums, round),
                                  fairmab::VirtualQueues(min_fractions, queues));
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = queues[i] + eta * weights[i] * reference_ucb(sums[i], counts[i], round);
    }
    check("lfg", values, fairmab::lfg_select(state, weights, available, m), available, m);

    std::vector<double> ucb(n);
    for (std::size_t i = 0; i < n; ++i) {
      ucb[i] = coarse ? static_cast<double>(pick(0, 4)) / 4.0 : unit(rng);
      values[i] = weights[i] * ucb[i];
    }
    check("llrs", values, fairmab::llrs_select(ucb, weights, available, m), available, m);
  }
  return out;
}

}  // namespace greedy_check

#endif  // FAIRMAB_TESTS_GREEDY_CHECK_HPP
