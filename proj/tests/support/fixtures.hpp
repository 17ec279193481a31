#ifndef FAIRMAB_TESTS_FIXTURES_HPP
#define FAIRMAB_TESTS_FIXTURES_HPP

#include <vector>

#include "fairmab/env.hpp"
#include "reference_oracles.hpp"

namespace fixtures {

inline fairmab::EnvironmentConfig make_config(std::size_t m, std::vector<double> means,
                                              std::vector<double> weights,
                                              std::vector<double> min_fractions,
                                              std::vector<double> availability) {
  fairmab::EnvironmentConfig c;
  c.n_arms = means.size();
  c.max_plays = m;
  c.means = std::move(means);
  c.weights = std::move(weights);
  c.min_fractions = std::move(min_fractions);
  c.availability = fairmab::IndependentBernoulli{std::move(availability)};
  return c;
}

/// Every arm available every round, unit weights.
inline fairmab::EnvironmentConfig always_available(std::size_t m, std::vector<double> means,
                                                   std::vector<double> min_fractions) {
  const std::size_t n = means.size();
  return make_config(m, std::move(means), std::vector<double>(n, 1.0), std::move(min_fractions),
                     std::vector<double>(n, 1.0));
}

inline reference::Instance to_instance(const fairmab::EnvironmentConfig& c) {
  return {c.n_arms, c.max_plays, c.means, c.weights, c.min_fractions,
          std::get<fairmab::IndependentBernoulli>(c.availability).p};
}

}  // namespace fixtures

#endif  // FAIRMAB_TESTS_FIXTURES_HPP
