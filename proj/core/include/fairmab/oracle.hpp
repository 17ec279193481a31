#ifndef FAIRMAB_ORACLE_HPP
#define FAIRMAB_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "fairmab/env.hpp"
#include "fairmab/policy.hpp"

namespace fairmab {

struct OracleLimits {
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t variable_cap = 200'000;
  /// Normalisation rows (availability sets with positive probability) the
  /// dense basis inverse can hold.
  std::size_t row_cap = 4096;
};

enum class LpStatus { kOptimal, kInfeasible };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  /// q*; empty when infeasible.
  AOnlyPolicy policy;
  /// R*, the expected weighted reward per round of q*.
  double optimal_reward = 0.0;
};

struct FeasibilityMargin {
  /// Largest uniform slack with r + eps * 1 still supportable; <= 0 when r
  /// is on the boundary of or outside the feasibility region.
  double epsilon = 0.0;
};

struct PolicyEvaluation {
  double expected_reward = 0.0;
  std::vector<double> expected_fractions;
};

/// Best A-only policy under the minimum-fraction constraints.
/// Throws CapExceeded, NumericalFailure, InvalidConfig.
LpSolution solve_offline_lp(const EnvironmentConfig& config, const OracleLimits& limits = {});

FeasibilityMargin feasibility_margin(const EnvironmentConfig& config,
                                     const OracleLimits& limits = {});

/// Expected per-round reward and per-arm selection probability of `policy`.
/// Throws UnknownAvailabilitySet when a positive-probability set has no
/// distribution.
PolicyEvaluation evaluate_policy(const EnvironmentConfig& config, const AOnlyPolicy& policy);

}  // namespace fairmab

#endif  // FAIRMAB_ORACLE_HPP
