#include "fairmab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "fairmab/errors.hpp"

namespace fairmab::lp {

std::size_t LinearProgram::add_row(RowSense sense, double rhs) {
  senses_.push_back(sense);
  rhs_.push_back(rhs);
  return senses_.size() - 1;
}

std::size_t LinearProgram::add_column(double objective, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.row < b.row; });
  std::vector<Entry> merged;
  for (const auto& e : entries) {
    if (e.row >= senses_.size()) throw std::out_of_range("column references a missing row");
    if (!merged.empty() && merged.back().row == e.row) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.value == 0.0; });
  objective_.push_back(objective);
  columns_.push_back(std::move(merged));
  return objective_.size() - 1;
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  std::vector<double> activity(num_rows(), 0.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < num_columns(); ++j) {
    worst = std::max(worst, -x[j]);
    for (const auto& e : columns_[j]) activity[e.row] += e.value * x[j];
  }
  for (std::size_t i = 0; i < num_rows(); ++i) {
    const double gap = activity[i] - rhs_[i];
    switch (senses_[i]) {
      case RowSense::kLessEqual: worst = std::max(worst, gap); break;
      case RowSense::kGreaterEqual: worst = std::max(worst, -gap); break;
      case RowSense::kEqual: worst = std::max(worst, std::abs(gap)); break;
    }
  }
  return worst;
}

double LinearProgram::evaluate(const std::vector<double>& x) const {
  double value = 0.0;
  for (std::size_t j = 0; j < num_columns(); ++j) value += objective_[j] * x[j];
  return value;
}

namespace {

enum class PhaseStatus { kOptimal, kUnbounded };

// Standard form  A x = b, x >= 0, b >= 0  with an identity starting basis made
// of slacks and artificials.
class RevisedSimplex {
 public:
  RevisedSimplex(const LinearProgram& program, const SimplexOptions& options)
      : options_(options), rows_(program.num_rows()), structural_(program.num_columns()) {
    std::vector<double> sign(rows_, 1.0);
    b_.resize(static_cast<Eigen::Index>(rows_));
    std::vector<RowSense> senses(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      double rhs = program.rhs(i);
      RowSense sense = program.sense(i);
      if (rhs < 0.0) {
        sign[i] = -1.0;
        rhs = -rhs;
        if (sense == RowSense::kLessEqual) {
          sense = RowSense::kGreaterEqual;
        } else if (sense == RowSense::kGreaterEqual) {
          sense = RowSense::kLessEqual;
        }
      }
      b_(static_cast<Eigen::Index>(i)) = rhs;
      senses[i] = sense;
    }
    for (std::size_t j = 0; j < structural_; ++j) {
      auto col = program.column(j);
      for (auto& e : col) e.value *= sign[e.row];
      add_column(std::move(col), program.objective(j), false);
    }
    basis_.assign(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      switch (senses[i]) {
        case RowSense::kLessEqual:
          basis_[i] = add_column({{i, 1.0}}, 0.0, false);
          break;
        case RowSense::kGreaterEqual:
          add_column({{i, -1.0}}, 0.0, false);
          basis_[i] = add_column({{i, 1.0}}, 0.0, true);
          break;
        case RowSense::kEqual:
          basis_[i] = add_column({{i, 1.0}}, 0.0, true);
          break;
      }
    }
    position_.assign(columns_.size(), kNotBasic);
    for (std::size_t i = 0; i < rows_; ++i) position_[basis_[i]] = i;
    binv_ = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(rows_),
                                      static_cast<Eigen::Index>(rows_));
    xb_ = b_;
    // Reinversion costs O(rows^3) against O(rows^2) per update, so large
    // bases refactor less often.
    refactor_interval_ = std::max(options_.refactor_interval, rows_ / 2);
  }

  SolveResult solve() {
    SolveResult result;
    const bool has_artificial =
        std::any_of(artificial_.begin(), artificial_.end(), [](bool a) { return a; });
    if (has_artificial) {
      std::vector<double> phase1(columns_.size(), 0.0);
      for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (artificial_[j]) phase1[j] = -1.0;
      }
      run_phase(phase1, true);
      refactor();
      double infeasibility = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (artificial_[basis_[i]]) infeasibility += std::max(0.0, xb(i));
      }
      if (infeasibility > options_.feasibility_tolerance) {
        result.status = SolveStatus::kInfeasible;
        result.iterations = iterations_;
        return result;
      }
      drive_out_artificials();
    }
    if (run_phase(costs_, false) == PhaseStatus::kUnbounded) {
      result.status = SolveStatus::kUnbounded;
      result.iterations = iterations_;
      return result;
    }
    // Re-price from a fresh factorisation so accumulated update error cannot
    // leave a spurious optimum.
    refactor();
    if (run_phase(costs_, false) == PhaseStatus::kUnbounded) {
      result.status = SolveStatus::kUnbounded;
      result.iterations = iterations_;
      return result;
    }
    refactor();

    result.status = SolveStatus::kOptimal;
    result.x.assign(structural_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) result.x[basis_[i]] = std::max(0.0, xb(i));
    }
    result.iterations = iterations_;
    return result;
  }

 private:
  static constexpr std::size_t kNotBasic = std::numeric_limits<std::size_t>::max();

  std::size_t add_column(std::vector<Entry> col, double cost, bool artificial) {
    columns_.push_back(std::move(col));
    costs_.push_back(cost);
    artificial_.push_back(artificial);
    return columns_.size() - 1;
  }

  double& xb(std::size_t i) { return xb_(static_cast<Eigen::Index>(i)); }

  Eigen::VectorXd ftran(std::size_t j) const {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows_));
    for (const auto& e : columns_[j]) u += e.value * binv_.col(static_cast<Eigen::Index>(e.row));
    return u;
  }

  double reduced_cost(const std::vector<double>& costs, const Eigen::VectorXd& y,
                      std::size_t j) const {
    double d = costs[j];
    for (const auto& e : columns_[j]) d -= e.value * y(static_cast<Eigen::Index>(e.row));
    return d;
  }

  void refactor() {
    since_refactor_ = 0;
    ++factor_epoch_;
    if (rows_ == 0) return;
    const auto n = static_cast<Eigen::Index>(rows_);
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (const auto& e : columns_[basis_[i]]) {
        basis_matrix(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(i)) = e.value;
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    binv_ = lu.inverse();
    if (!binv_.allFinite()) throw NumericalFailure("simplex basis became singular");
    xb_ = binv_ * b_;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (xb(i) < 0.0) {
        if (xb(i) < -1e-7) throw NumericalFailure("simplex lost primal feasibility");
        xb(i) = 0.0;
      }
    }
  }

  void pivot(std::size_t entering, std::size_t row, const Eigen::VectorXd& u) {
    const auto r = static_cast<Eigen::Index>(row);
    const double theta = xb_(r) / u(r);
    xb_ -= theta * u;
    xb_(r) = theta;
    for (Eigen::Index i = 0; i < xb_.size(); ++i) {
      if (xb_(i) < 0.0 && xb_(i) > -options_.feasibility_tolerance) xb_(i) = 0.0;
    }
    const Eigen::RowVectorXd pivot_row = binv_.row(r) / u(r);
    binv_.noalias() -= u * pivot_row;
    binv_.row(r) = pivot_row;
    position_[basis_[row]] = kNotBasic;
    basis_[row] = entering;
    position_[entering] = row;
    ++iterations_;
    if (++since_refactor_ >= refactor_interval_) refactor();
  }

  PhaseStatus run_phase(const std::vector<double>& costs, bool allow_artificial) {
    std::size_t degenerate_run = 0;
    Eigen::VectorXd cb(static_cast<Eigen::Index>(rows_));
    Eigen::VectorXd y;
    // Duals are updated in O(rows) per pivot and recomputed from scratch
    // after every refactorisation and before optimality is accepted.
    bool y_exact = false;
    std::size_t y_epoch = kNotBasic;
    while (true) {
      if (iterations_ >= options_.max_iterations) {
        throw NumericalFailure("simplex iteration limit reached (" +
                               std::to_string(options_.max_iterations) + ")");
      }
      if (y_epoch != factor_epoch_) {
        for (std::size_t i = 0; i < rows_; ++i) cb(static_cast<Eigen::Index>(i)) = costs[basis_[i]];
        y = binv_.transpose() * cb;
        y_epoch = factor_epoch_;
        y_exact = true;
      }
      const bool bland = degenerate_run > options_.degenerate_limit;

      std::size_t entering = kNotBasic;
      double best = options_.optimality_tolerance;
      for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (position_[j] != kNotBasic) continue;
        if (artificial_[j] && !allow_artificial) continue;
        const double d = reduced_cost(costs, y, j);
        if (d > best) {
          entering = j;
          best = d;
          if (bland) break;
        }
      }
      if (entering == kNotBasic) {
        if (y_exact) return PhaseStatus::kOptimal;
        y_epoch = kNotBasic;
        continue;
      }

      const Eigen::VectorXd u = ftran(entering);
      std::size_t leaving = kNotBasic;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double ui = u(static_cast<Eigen::Index>(i));
        if (ui <= options_.pivot_tolerance) continue;
        const double ratio = xb(i) / ui;
        if (leaving == kNotBasic || ratio < best_ratio - 1e-12) {
          leaving = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12) {
          const bool better = bland ? basis_[i] < basis_[leaving]
                                    : ui > u(static_cast<Eigen::Index>(leaving));
          if (better) {
            leaving = i;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leaving == kNotBasic) return PhaseStatus::kUnbounded;
      degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
      const auto r = static_cast<Eigen::Index>(leaving);
      const Eigen::RowVectorXd pivot_row = binv_.row(r) / u(r);
      const std::size_t epoch = factor_epoch_;
      pivot(entering, leaving, u);
      if (factor_epoch_ == epoch) {
        y += best * pivot_row.transpose();
        y_exact = false;
      }
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!artificial_[basis_[i]]) continue;
      const Eigen::RowVectorXd row = binv_.row(static_cast<Eigen::Index>(i));
      for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (position_[j] != kNotBasic || artificial_[j]) continue;
        double alpha = 0.0;
        for (const auto& e : columns_[j]) alpha += e.value * row(static_cast<Eigen::Index>(e.row));
        if (std::abs(alpha) > 1e-7) {
          pivot(j, i, ftran(j));
          break;
        }
      }
      // A row with no candidate is redundant; its artificial stays basic at 0.
    }
  }

  SimplexOptions options_;
  std::size_t rows_;
  std::size_t structural_;
  std::vector<std::vector<Entry>> columns_;
  std::vector<double> costs_;
  std::vector<bool> artificial_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> position_;
  Eigen::VectorXd b_;
  Eigen::VectorXd xb_;
  Eigen::MatrixXd binv_;
  std::size_t iterations_ = 0;
  std::size_t since_refactor_ = 0;
  std::size_t factor_epoch_ = 0;
  std::size_t refactor_interval_ = 0;
};

}  // namespace

SolveResult maximize(const LinearProgram& program, const SimplexOptions& options) {
  RevisedSimplex simplex(program, options);
  SolveResult result = simplex.solve();
  if (result.status != SolveStatus::kOptimal) return result;
  const double violation = program.max_violation(result.x);
  if (violation > options.feasibility_tolerance) {
    throw NumericalFailure("simplex solution violates constraints by " +
                           std::to_string(violation));
  }
  result.objective = program.evaluate(result.x);
  return result;
}

}  // namespace fairmab::lp
