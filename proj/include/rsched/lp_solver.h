#ifndef RSCHED_LP_SOLVER_H_
#define RSCHED_LP_SOLVER_H_

// Dense revised simplex for the moderate-size LPs this toolkit builds (the
// time-indexed relaxation and the restricted master of column generation).
//
// The solver keeps an explicit basis inverse updated by rank-one pivots and
// refactored periodically. Pricing is Dantzig's rule; after a run of
// degenerate pivots it switches to Bland's rule until the objective moves
// again. Infeasibility is detected by a phase-one problem over artificial
// variables, and the returned row duals satisfy strong duality at optimality.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace rsched {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

// min c^T x  s.t.  each row (sense) rhs,  lower <= x <= upper.
// Stored column-wise so that columns can be appended cheaply.
class LinearProgram {
 public:
  struct Entry {
    int row;
    double value;
  };

  // Lower bounds must be finite or -infinity; upper bounds finite or
  // +infinity.
  int AddVariable(double cost, double lower = 0.0, double upper = kInfinity);
  int AddRow(RowSense sense, double rhs);
  // Appends a coefficient to the variable's column. Each (row, variable) pair
  // may be set once.
  void SetCoefficient(int row, int variable, double value);

  int num_variables() const { return static_cast<int>(costs_.size()); }
  int num_rows() const { return static_cast<int>(senses_.size()); }
  double cost(int v) const { return costs_[v]; }
  double lower(int v) const { return lowers_[v]; }
  double upper(int v) const { return uppers_[v]; }
  RowSense sense(int r) const { return senses_[r]; }
  double rhs(int r) const { return rhs_[r]; }
  const std::vector<Entry>& column(int v) const { return columns_[v]; }

  // Checks index ranges, finiteness and duplicate coefficients.
  absl::Status Validate() const;

 private:
  std::vector<double> costs_;
  std::vector<double> lowers_;
  std::vector<double> uppers_;
  std::vector<std::vector<Entry>> columns_;
  std::vector<RowSense> senses_;
  std::vector<double> rhs_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* LpStatusName(LpStatus status);

// Identifies one column of the solver's internal standard form, so a basis
// survives appending new variables to the program.
struct BasisKey {
  enum class Kind { kStructural, kNegativePart, kSlack, kArtificial };
  Kind kind = Kind::kStructural;
  int index = 0;
  friend bool operator==(const BasisKey&, const BasisKey&) = default;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  double objective = 0.0;
  // One per row. For a minimization, >= rows have non-negative duals and
  // <= rows non-positive duals.
  std::vector<double> duals;
  // c_j - sum_i dual_i a_ij.
  std::vector<double> reduced_costs;
  double dual_objective = 0.0;
  int64_t iterations = 0;
  std::vector<BasisKey> basis;
};

struct LpOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-7;
  // Consecutive degenerate pivots before Bland's rule engages.
  int degenerate_stall = 50;
  int refactor_interval = 100;
  // 0 selects a limit proportional to the problem size.
  int64_t max_iterations = 0;
};

// Solves the program. Infeasible and unbounded programs are reported through
// LpSolution::status; malformed input and numerical breakdown are errors.
// `warm_start` is used when it still forms a feasible basis, and ignored
// otherwise.
absl::StatusOr<LpSolution> SolveLp(const LinearProgram& lp,
                                   const LpOptions& options = {},
                                   const std::vector<BasisKey>* warm_start =
                                       nullptr);

// CPLEX LP text format, for cross-checking with external solvers.
std::string ToLpFormat(const LinearProgram& lp);

}  // namespace rsched

#endif  // RSCHED_LP_SOLVER_H_
