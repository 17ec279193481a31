#ifndef FAIRMAB_SIMPLEX_HPP
#define FAIRMAB_SIMPLEX_HPP

#include <cstddef>
#include <vector>

namespace fairmab::lp {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct Entry {
  std::size_t row;
  double value;
};

/// maximize c'x  s.t.  each row (<=, >=, =) rhs,  x >= 0.
/// Columns are stored sparse; the solver never forms the full matrix.
class LinearProgram {
 public:
  std::size_t add_row(RowSense sense, double rhs);
  /// Entries must reference existing rows; duplicate rows are summed.
  std::size_t add_column(double objective, std::vector<Entry> entries);

  std::size_t num_rows() const { return senses_.size(); }
  std::size_t num_columns() const { return objective_.size(); }

  RowSense sense(std::size_t row) const { return senses_[row]; }
  double rhs(std::size_t row) const { return rhs_[row]; }
  double objective(std::size_t col) const { return objective_[col]; }
  const std::vector<Entry>& column(std::size_t col) const { return columns_[col]; }

  /// Largest violation of any row or bound at x (0 when feasible).
  double max_violation(const std::vector<double>& x) const;
  double evaluate(const std::vector<double>& x) const;

 private:
  std::vector<RowSense> senses_;
  std::vector<double> rhs_;
  std::vector<double> objective_;
  std::vector<std::vector<Entry>> columns_;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded };

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-10;
  double pivot_tolerance = 1e-9;
  std::size_t max_iterations = 1'000'000;
  std::size_t refactor_interval = 100;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_limit = 50;
};

/// Two-phase revised simplex with an explicit dense basis inverse.
/// Throws NumericalFailure when the iteration limit is hit or the final
/// point violates the rows by more than the feasibility tolerance.
SolveResult maximize(const LinearProgram& program, const SimplexOptions& options = {});

}  // namespace fairmab::lp

#endif  // FAIRMAB_SIMPLEX_HPP
