#include "fairmab/oracle.hpp"

#include <string>
#include <utility>

#include "fairmab/errors.hpp"
#include "fairmab/simplex.hpp"

namespace fairmab {

namespace {

struct Variable {
  ArmSet availability;
  ArmSet super_arm;
};

// The LP over q_S(Z): N fairness rows followed by one normalisation row per
// availability set of positive probability.
struct OracleProgram {
  lp::LinearProgram program;
  std::vector<Variable> variables;
};

double super_arm_value(const EnvironmentConfig& config, ArmSet s) {
  double value = 0.0;
  s.for_each([&](std::size_t i) { value += config.weights[i] * config.means[i]; });
  return value;
}

OracleProgram build_program(const EnvironmentConfig& config, const OracleLimits& limits,
                            bool with_margin) {
  config.validate();
  const AvailabilityPmf pmf =
      availability_pmf(config.availability, config.n_arms, limits.enumeration_cap);

  std::vector<std::pair<ArmSet, double>> support;
  std::uint64_t variable_count = 0;
  for (const auto& [z, prob] : pmf) {
    if (prob <= 0.0) continue;
    support.emplace_back(z, prob);
    variable_count += count_subsets_up_to(z.size(), config.max_plays);
  }
  if (support.size() > limits.row_cap) {
    throw CapExceeded(std::to_string(support.size()) +
                      " availability sets with positive probability exceed the row cap of " +
                      std::to_string(limits.row_cap));
  }
  if (variable_count > limits.variable_cap) {
    throw CapExceeded(std::to_string(variable_count) + " LP variables exceed the cap of " +
                      std::to_string(limits.variable_cap));
  }

  OracleProgram out;
  auto& program = out.program;
  for (std::size_t i = 0; i < config.n_arms; ++i) {
    const double rhs = with_margin ? config.min_fractions[i] - 1.0 : config.min_fractions[i];
    program.add_row(lp::RowSense::kGreaterEqual, rhs);
  }
  for (std::size_t k = 0; k < support.size(); ++k) program.add_row(lp::RowSense::kEqual, 1.0);

  out.variables.reserve(variable_count);
  for (std::size_t k = 0; k < support.size(); ++k) {
    const auto [z, prob] = support[k];
    for (ArmSet s : feasible_super_arms(z, config.max_plays)) {
      std::vector<lp::Entry> entries;
      entries.reserve(s.size() + 1);
      s.for_each([&](std::size_t i) { entries.push_back({i, prob}); });
      entries.push_back({config.n_arms + k, 1.0});
      const double objective = with_margin ? 0.0 : prob * super_arm_value(config, s);
      program.add_column(objective, std::move(entries));
      out.variables.push_back({z, s});
    }
  }
  if (with_margin) {
    // eps = e - 1 with e >= 0; fractions are nonnegative so eps >= -1 loses
    // nothing.
    std::vector<lp::Entry> entries;
    for (std::size_t i = 0; i < config.n_arms; ++i) entries.push_back({i, -1.0});
    program.add_column(1.0, std::move(entries));
  }
  return out;
}

}  // namespace

LpSolution solve_offline_lp(const EnvironmentConfig& config, const OracleLimits& limits) {
  const OracleProgram built = build_program(config, limits, false);
  const lp::SolveResult result = lp::maximize(built.program);
  LpSolution solution;
  if (result.status == lp::SolveStatus::kInfeasible) return solution;
  if (result.status == lp::SolveStatus::kUnbounded) {
    throw NumericalFailure("offline LP reported unbounded; the feasible set is a polytope");
  }

  AOnlyPolicy::Table table;
  for (std::size_t j = 0; j < built.variables.size(); ++j) {
    const auto& var = built.variables[j];
    auto& choices = table[var.availability];
    if (result.x[j] > 0.0) choices.push_back({var.super_arm, result.x[j]});
  }
  for (auto& [z, choices] : table) {
    double total = 0.0;
    for (const auto& c : choices) total += c.probability;
    if (choices.empty() || total <= 0.0) {
      throw NumericalFailure("oracle produced an empty distribution for " + z.to_string());
    }
    for (auto& c : choices) c.probability /= total;
  }
  solution.status = LpStatus::kOptimal;
  solution.policy = AOnlyPolicy(config.max_plays, std::move(table));
  solution.policy.enable_lowest_index_fallback();
  solution.optimal_reward = result.objective;
  return solution;
}

FeasibilityMargin feasibility_margin(const EnvironmentConfig& config, const OracleLimits& limits) {
  const OracleProgram built = build_program(config, limits, true);
  const lp::SolveResult result = lp::maximize(built.program);
  if (result.status != lp::SolveStatus::kOptimal) {
    throw NumericalFailure("feasibility-margin LP did not reach an optimum");
  }
  return {result.objective - 1.0};
}

PolicyEvaluation evaluate_policy(const EnvironmentConfig& config, const AOnlyPolicy& policy) {
  const AvailabilityPmf pmf = availability_pmf(config.availability, config.n_arms);
  PolicyEvaluation eval;
  eval.expected_fractions.assign(config.n_arms, 0.0);
  for (const auto& [z, prob] : pmf) {
    if (prob <= 0.0) continue;
    for (const auto& choice : policy.distribution(z)) {
      const double mass = prob * choice.probability;
      eval.expected_reward += mass * super_arm_value(config, choice.arms);
      choice.arms.for_each([&](std::size_t i) { eval.expected_fractions[i] += mass; });
    }
  }
  return eval;
}

}  // namespace fairmab
