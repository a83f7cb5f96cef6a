#include "rsched/lp_solver.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace rsched {

int LinearProgram::AddVariable(double cost, double lower, double upper) {
  costs_.push_back(cost);
  lowers_.push_back(lower);
  uppers_.push_back(upper);
  columns_.emplace_back();
  return num_variables() - 1;
}

int LinearProgram::AddRow(RowSense sense, double rhs) {
  senses_.push_back(sense);
  rhs_.push_back(rhs);
  return num_rows() - 1;
}

void LinearProgram::SetCoefficient(int row, int variable, double value) {
  columns_[variable].push_back({row, value});
}

absl::Status LinearProgram::Validate() const {
  for (int r = 0; r < num_rows(); ++r) {
    if (!std::isfinite(rhs_[r])) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", r, " has non-finite right-hand side"));
    }
  }
  std::vector<int> seen(num_rows(), -1);
  for (int v = 0; v < num_variables(); ++v) {
    if (!std::isfinite(costs_[v])) {
      return absl::InvalidArgumentError(
          absl::StrCat("variable ", v, " has non-finite cost"));
    }
    if (std::isnan(lowers_[v]) || std::isnan(uppers_[v]) ||
        lowers_[v] == kInfinity || uppers_[v] == -kInfinity) {
      return absl::InvalidArgumentError(
          absl::StrCat("variable ", v, " has invalid bounds"));
    }
    for (const Entry& e : columns_[v]) {
      if (e.row < 0 || e.row >= num_rows()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "variable ", v, " references row ", e.row, " of ", num_rows()));
      }
      if (!std::isfinite(e.value)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "non-finite coefficient at row ", e.row, ", variable ", v));
      }
      if (seen[e.row] == v) {
        return absl::InvalidArgumentError(absl::StrCat(
            "duplicate coefficient at row ", e.row, ", variable ", v));
      }
      seen[e.row] = v;
    }
  }
  return absl::OkStatus();
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

struct StdColumn {
  std::vector<int> rows;
  std::vector<double> values;
  double cost = 0.0;
  BasisKey key;
  bool artificial = false;
};

// Standard form: min c^T x, A x = b, x >= 0, b >= 0, with explicit slack,
// surplus and artificial columns.
struct StandardForm {
  int num_rows = 0;
  int num_original_rows = 0;
  std::vector<double> b;
  std::vector<double> row_sign;  // +1 or -1 applied to each row
  std::vector<StdColumn> columns;
  std::vector<int> slack_of_row;       // column index or -1
  std::vector<int> artificial_of_row;  // column index or -1
  // Mapping back to the original variables.
  std::vector<double> shift;       // x_j = shift_j + sign_j * x'_j ...
  std::vector<double> var_sign;
  std::vector<int> positive_part;  // std column of x'_j
  std::vector<int> negative_part;  // std column of x^-_j or -1
  double objective_offset = 0.0;
};

StandardForm BuildStandardForm(const LinearProgram& lp) {
  StandardForm sf;
  const int n = lp.num_variables();
  sf.num_original_rows = lp.num_rows();
  sf.b.reserve(lp.num_rows());
  for (int r = 0; r < lp.num_rows(); ++r) sf.b.push_back(lp.rhs(r));
  std::vector<RowSense> senses;
  for (int r = 0; r < lp.num_rows(); ++r) senses.push_back(lp.sense(r));

  sf.shift.assign(n, 0.0);
  sf.var_sign.assign(n, 1.0);
  sf.positive_part.assign(n, -1);
  sf.negative_part.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    const double lo = lp.lower(v);
    const double hi = lp.upper(v);
    const auto& col = lp.column(v);
    StdColumn c;
    c.key = {BasisKey::Kind::kStructural, v};
    if (std::isfinite(lo)) {
      sf.shift[v] = lo;
    } else if (std::isfinite(hi)) {
      sf.shift[v] = hi;
      sf.var_sign[v] = -1.0;
    }
    const double sign = sf.var_sign[v];
    c.cost = sign * lp.cost(v);
    for (const auto& e : col) {
      c.rows.push_back(e.row);
      c.values.push_back(sign * e.value);
      sf.b[e.row] -= e.value * sf.shift[v];
    }
    sf.objective_offset += lp.cost(v) * sf.shift[v];
    if (std::isfinite(lo) && std::isfinite(hi)) {
      // x' <= hi - lo as an explicit row.
      const int row = static_cast<int>(sf.b.size());
      sf.b.push_back(hi - lo);
      senses.push_back(RowSense::kLessEqual);
      c.rows.push_back(row);
      c.values.push_back(1.0);
    }
    sf.positive_part[v] = static_cast<int>(sf.columns.size());
    sf.columns.push_back(c);
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      StdColumn neg;
      neg.key = {BasisKey::Kind::kNegativePart, v};
      neg.cost = -lp.cost(v);
      for (const auto& e : col) {
        neg.rows.push_back(e.row);
        neg.values.push_back(-e.value);
      }
      sf.negative_part[v] = static_cast<int>(sf.columns.size());
      sf.columns.push_back(std::move(neg));
    }
  }

  sf.num_rows = static_cast<int>(sf.b.size());
  sf.row_sign.assign(sf.num_rows, 1.0);
  for (int r = 0; r < sf.num_rows; ++r) {
    if (sf.b[r] < 0.0) {
      sf.row_sign[r] = -1.0;
      sf.b[r] = -sf.b[r];
      if (senses[r] == RowSense::kLessEqual) {
        senses[r] = RowSense::kGreaterEqual;
      } else if (senses[r] == RowSense::kGreaterEqual) {
        senses[r] = RowSense::kLessEqual;
      }
    }
  }
  for (auto& c : sf.columns) {
    for (size_t k = 0; k < c.rows.size(); ++k) {
      c.values[k] *= sf.row_sign[c.rows[k]];
    }
  }

  sf.slack_of_row.assign(sf.num_rows, -1);
  sf.artificial_of_row.assign(sf.num_rows, -1);
  for (int r = 0; r < sf.num_rows; ++r) {
    if (senses[r] != RowSense::kEqual) {
      StdColumn s;
      s.key = {BasisKey::Kind::kSlack, r};
      s.rows = {r};
      s.values = {senses[r] == RowSense::kLessEqual ? 1.0 : -1.0};
      sf.slack_of_row[r] = static_cast<int>(sf.columns.size());
      sf.columns.push_back(std::move(s));
    }
    if (senses[r] != RowSense::kLessEqual) {
      StdColumn a;
      a.key = {BasisKey::Kind::kArtificial, r};
      a.rows = {r};
      a.values = {1.0};
      a.artificial = true;
      sf.artificial_of_row[r] = static_cast<int>(sf.columns.size());
      sf.columns.push_back(std::move(a));
    }
  }
  return sf;
}

enum class IterateResult { kOptimal, kUnbounded };

class Simplex {
 public:
  Simplex(const StandardForm& sf, const LpOptions& options)
      : sf_(sf), options_(options), m_(sf.num_rows) {
    const int num_cols = static_cast<int>(sf_.columns.size());
    position_.assign(num_cols, -1);
    costs_.assign(num_cols, 0.0);
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    xb_.assign(m_, 0.0);
    y_.assign(m_, 0.0);
    max_iterations_ = options_.max_iterations > 0
                          ? options_.max_iterations
                          : 100 * static_cast<int64_t>(m_ + num_cols) + 10000;
  }

  // Slack / artificial starting basis, which is the identity.
  void SetSlackBasis() {
    basis_.assign(m_, -1);
    std::fill(position_.begin(), position_.end(), -1);
    for (int r = 0; r < m_; ++r) {
      const int slack = sf_.slack_of_row[r];
      const int col =
          slack >= 0 && sf_.columns[slack].values[0] > 0 ? slack
                                                         : sf_.artificial_of_row[r];
      basis_[r] = col;
      position_[col] = r;
    }
  }

  // Installs a caller basis. Fails when it is singular or primal infeasible.
  bool SetBasis(const std::vector<int>& columns) {
    if (static_cast<int>(columns.size()) != m_) return false;
    basis_ = columns;
    std::fill(position_.begin(), position_.end(), -1);
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < 0 || position_[basis_[r]] >= 0) return false;
      position_[basis_[r]] = r;
    }
    if (!Refactor().ok()) return false;
    for (double v : xb_) {
      if (v < -options_.feasibility_tolerance) return false;
    }
    return true;
  }

  absl::Status Refactor() {
    const size_t m = static_cast<size_t>(m_);
    std::vector<double> a(m * m, 0.0);
    for (int r = 0; r < m_; ++r) {
      const StdColumn& c = sf_.columns[basis_[r]];
      for (size_t k = 0; k < c.rows.size(); ++k) {
        a[static_cast<size_t>(c.rows[k]) * m + r] = c.values[k];
      }
    }
    std::fill(binv_.begin(), binv_.end(), 0.0);
    for (size_t i = 0; i < m; ++i) binv_[i * m + i] = 1.0;
    // Gauss-Jordan with partial pivoting on [a | binv].
    for (size_t col = 0; col < m; ++col) {
      size_t pivot = col;
      double best = std::abs(a[col * m + col]);
      for (size_t r = col + 1; r < m; ++r) {
        const double v = std::abs(a[r * m + col]);
        if (v > best) {
          best = v;
          pivot = r;
        }
      }
      if (best < 1e-11) {
        return absl::InternalError("basis matrix is singular");
      }
      if (pivot != col) {
        std::swap_ranges(a.begin() + pivot * m, a.begin() + (pivot + 1) * m,
                         a.begin() + col * m);
        std::swap_ranges(binv_.begin() + pivot * m,
                         binv_.begin() + (pivot + 1) * m,
                         binv_.begin() + col * m);
      }
      const double inv = 1.0 / a[col * m + col];
      for (size_t k = 0; k < m; ++k) {
        a[col * m + k] *= inv;
        binv_[col * m + k] *= inv;
      }
      for (size_t r = 0; r < m; ++r) {
        if (r == col) continue;
        const double factor = a[r * m + col];
        if (factor == 0.0) continue;
        double* ar = &a[r * m];
        const double* ac = &a[col * m];
        double* br = &binv_[r * m];
        const double* bc = &binv_[col * m];
        for (size_t k = 0; k < m; ++k) {
          ar[k] -= factor * ac[k];
          br[k] -= factor * bc[k];
        }
      }
    }
    ComputePrimal();
    ComputeDuals();
    since_refactor_ = 0;
    return absl::OkStatus();
  }

  void SetPhaseCosts(bool phase_one) {
    for (size_t j = 0; j < sf_.columns.size(); ++j) {
      const StdColumn& c = sf_.columns[j];
      costs_[j] = phase_one ? (c.artificial ? 1.0 : 0.0)
                            : (c.artificial ? 0.0 : c.cost);
    }
    ComputeDuals();
  }

  absl::StatusOr<IterateResult> Iterate() {
    const int num_cols = static_cast<int>(sf_.columns.size());
    std::vector<double> alpha(m_);
    int stall = 0;
    bool bland = false;
    while (true) {
      if (since_refactor_ >= options_.refactor_interval) {
        if (auto s = Refactor(); !s.ok()) return s;
      }
      if (iterations_ >= max_iterations_) {
        return absl::InternalError(absl::StrCat(
            "simplex iteration limit ", max_iterations_, " reached"));
      }
      // Pricing.
      int entering = -1;
      double best_d = -options_.optimality_tolerance;
      double entering_d = 0.0;
      for (int j = 0; j < num_cols; ++j) {
        if (position_[j] >= 0 || sf_.columns[j].artificial) continue;
        const double d = ReducedCost(j);
        if (bland) {
          if (d < -options_.optimality_tolerance) {
            entering = j;
            entering_d = d;
            break;
          }
        } else if (d < best_d) {
          best_d = d;
          entering = j;
          entering_d = d;
        }
      }
      if (entering < 0) return IterateResult::kOptimal;

      ColumnTimesInverse(entering, alpha);
      int leaving_row = -1;
      double best_ratio = kInfinity;
      for (int r = 0; r < m_; ++r) {
        if (alpha[r] <= options_.pivot_tolerance) continue;
        const double ratio = std::max(xb_[r], 0.0) / alpha[r];
        if (leaving_row < 0 || ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          leaving_row = r;
        } else if (ratio <= best_ratio + 1e-12) {
          const bool better =
              bland ? basis_[r] < basis_[leaving_row]
                    : alpha[r] > alpha[leaving_row];
          if (better) {
            best_ratio = std::min(best_ratio, ratio);
            leaving_row = r;
          }
        }
      }
      if (leaving_row < 0) return IterateResult::kUnbounded;

      Pivot(entering, leaving_row, alpha, best_ratio, entering_d);
      if (best_ratio <= 1e-12) {
        if (++stall >= options_.degenerate_stall) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
    }
  }

  // After phase one: pivot basic artificials out where possible. Rows whose
  // artificial cannot leave are redundant and keep it at zero.
  void DriveOutArtificials() {
    const int num_cols = static_cast<int>(sf_.columns.size());
    std::vector<double> alpha(m_);
    const size_t m = static_cast<size_t>(m_);
    for (int r = 0; r < m_; ++r) {
      if (!sf_.columns[basis_[r]].artificial) continue;
      const double* row = &binv_[r * m];
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < num_cols; ++j) {
        if (position_[j] >= 0 || sf_.columns[j].artificial) continue;
        const StdColumn& c = sf_.columns[j];
        double v = 0.0;
        for (size_t k = 0; k < c.rows.size(); ++k) {
          v += row[c.rows[k]] * c.values[k];
        }
        if (std::abs(v) > best_abs) {
          best_abs = std::abs(v);
          best = j;
        }
      }
      if (best < 0) continue;
      xb_[r] = 0.0;
      ColumnTimesInverse(best, alpha);
      Pivot(best, r, alpha, 0.0, ReducedCost(best));
    }
  }

  double PhaseObjective() const {
    double total = 0.0;
    for (int r = 0; r < m_; ++r) total += costs_[basis_[r]] * xb_[r];
    return total;
  }

  const std::vector<double>& xb() const { return xb_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<int>& basis() const { return basis_; }
  int64_t iterations() const { return iterations_; }

 private:
  double ReducedCost(int j) const {
    const StdColumn& c = sf_.columns[j];
    double d = costs_[j];
    for (size_t k = 0; k < c.rows.size(); ++k) d -= y_[c.rows[k]] * c.values[k];
    return d;
  }

  void ColumnTimesInverse(int j, std::vector<double>& out) const {
    const StdColumn& c = sf_.columns[j];
    const size_t m = static_cast<size_t>(m_);
    std::fill(out.begin(), out.end(), 0.0);
    for (size_t k = 0; k < c.rows.size(); ++k) {
      const size_t col = static_cast<size_t>(c.rows[k]);
      const double v = c.values[k];
      for (size_t r = 0; r < m; ++r) out[r] += binv_[r * m + col] * v;
    }
  }

  void ComputePrimal() {
    const size_t m = static_cast<size_t>(m_);
    for (size_t r = 0; r < m; ++r) {
      double v = 0.0;
      const double* row = &binv_[r * m];
      for (size_t k = 0; k < m; ++k) v += row[k] * sf_.b[k];
      xb_[r] = v;
    }
  }

  void ComputeDuals() {
    const size_t m = static_cast<size_t>(m_);
    std::fill(y_.begin(), y_.end(), 0.0);
    for (size_t r = 0; r < m; ++r) {
      const double c = costs_[basis_[r]];
      if (c == 0.0) continue;
      const double* row = &binv_[r * m];
      for (size_t k = 0; k < m; ++k) y_[k] += c * row[k];
    }
  }

  void Pivot(int entering, int leaving_row, const std::vector<double>& alpha,
             double step, double entering_d) {
    const size_t m = static_cast<size_t>(m_);
    const size_t lr = static_cast<size_t>(leaving_row);
    for (size_t r = 0; r < m; ++r) {
      if (r != lr) xb_[r] -= step * alpha[r];
    }
    xb_[lr] = step;
    const double inv = 1.0 / alpha[lr];
    double* pivot_row = &binv_[lr * m];
    for (size_t k = 0; k < m; ++k) pivot_row[k] *= inv;
    for (size_t r = 0; r < m; ++r) {
      if (r == lr || alpha[r] == 0.0) continue;
      const double factor = alpha[r];
      double* row = &binv_[r * m];
      for (size_t k = 0; k < m; ++k) row[k] -= factor * pivot_row[k];
    }
    for (size_t k = 0; k < m; ++k) y_[k] += entering_d * pivot_row[k];
    position_[basis_[lr]] = -1;
    basis_[lr] = entering;
    position_[entering] = leaving_row;
    ++iterations_;
    ++since_refactor_;
  }

  const StandardForm& sf_;
  const LpOptions& options_;
  const int m_;
  std::vector<int> basis_;
  std::vector<int> position_;
  std::vector<double> costs_;
  std::vector<double> binv_;  // row-major m x m
  std::vector<double> xb_;
  std::vector<double> y_;
  int64_t iterations_ = 0;
  int64_t max_iterations_ = 0;
  int since_refactor_ = 0;
};

std::vector<int> ResolveWarmStart(const StandardForm& sf,
                                  const std::vector<BasisKey>& keys) {
  std::map<std::pair<int, int>, int> lookup;
  for (size_t j = 0; j < sf.columns.size(); ++j) {
    const BasisKey& k = sf.columns[j].key;
    lookup[{static_cast<int>(k.kind), k.index}] = static_cast<int>(j);
  }
  std::vector<int> columns;
  for (const BasisKey& k : keys) {
    auto it = lookup.find({static_cast<int>(k.kind), k.index});
    if (it == lookup.end()) return {};
    columns.push_back(it->second);
  }
  return columns;
}

}  // namespace

absl::StatusOr<LpSolution> SolveLp(const LinearProgram& lp,
                                   const LpOptions& options,
                                   const std::vector<BasisKey>* warm_start) {
  if (auto s = lp.Validate(); !s.ok()) return s;
  for (int v = 0; v < lp.num_variables(); ++v) {
    if (lp.lower(v) > lp.upper(v)) {
      LpSolution infeasible;
      infeasible.status = LpStatus::kInfeasible;
      return infeasible;
    }
  }
  const StandardForm sf = BuildStandardForm(lp);
  Simplex simplex(sf, options);

  bool warm = false;
  if (warm_start != nullptr) {
    const std::vector<int> columns = ResolveWarmStart(sf, *warm_start);
    warm = !columns.empty() && simplex.SetBasis(columns);
  }
  if (!warm) {
    simplex.SetSlackBasis();
    if (auto s = simplex.Refactor(); !s.ok()) return s;
  }

  LpSolution solution;
  bool needs_phase_one = false;
  for (int r = 0; r < sf.num_rows; ++r) {
    if (sf.columns[simplex.basis()[r]].artificial &&
        simplex.xb()[r] > options.feasibility_tolerance) {
      needs_phase_one = true;
    }
  }
  double max_b = 0.0;
  for (double v : sf.b) max_b = std::max(max_b, std::abs(v));
  if (needs_phase_one) {
    simplex.SetPhaseCosts(/*phase_one=*/true);
    auto result = simplex.Iterate();
    if (!result.ok()) return result.status();
    if (simplex.PhaseObjective() >
        options.feasibility_tolerance * (1.0 + max_b)) {
      solution.status = LpStatus::kInfeasible;
      solution.iterations = simplex.iterations();
      return solution;
    }
  }
  simplex.DriveOutArtificials();
  simplex.SetPhaseCosts(/*phase_one=*/false);
  auto result = simplex.Iterate();
  if (!result.ok()) return result.status();
  solution.iterations = simplex.iterations();
  if (*result == IterateResult::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }
  if (auto s = simplex.Refactor(); !s.ok()) return s;
  // A refactor can expose a few reduced costs that drifted; finish them off.
  result = simplex.Iterate();
  if (!result.ok()) return result.status();
  if (*result == IterateResult::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }
  solution.iterations = simplex.iterations();

  std::vector<double> std_x(sf.columns.size(), 0.0);
  for (int r = 0; r < sf.num_rows; ++r) {
    double v = simplex.xb()[r];
    if (v < -options.feasibility_tolerance * (1.0 + max_b)) {
      return absl::InternalError(absl::StrFormat(
          "numerical failure: basic variable %d at %g after refactor", r, v));
    }
    std_x[simplex.basis()[r]] = std::max(v, 0.0);
  }

  solution.status = LpStatus::kOptimal;
  const int n = lp.num_variables();
  solution.primal.resize(n);
  solution.objective = 0.0;
  for (int v = 0; v < n; ++v) {
    double x = sf.shift[v] + sf.var_sign[v] * std_x[sf.positive_part[v]];
    if (sf.negative_part[v] >= 0) x -= std_x[sf.negative_part[v]];
    solution.primal[v] = x;
    solution.objective += lp.cost(v) * x;
  }
  solution.duals.resize(lp.num_rows());
  for (int r = 0; r < lp.num_rows(); ++r) {
    solution.duals[r] = simplex.y()[r] * sf.row_sign[r];
  }
  solution.reduced_costs.resize(n);
  solution.dual_objective = 0.0;
  for (int r = 0; r < lp.num_rows(); ++r) {
    solution.dual_objective += solution.duals[r] * lp.rhs(r);
  }
  for (int v = 0; v < n; ++v) {
    double d = lp.cost(v);
    for (const auto& e : lp.column(v)) d -= solution.duals[e.row] * e.value;
    solution.reduced_costs[v] = d;
    const double bound = d >= 0.0 ? lp.lower(v) : lp.upper(v);
    if (std::isfinite(bound)) solution.dual_objective += d * bound;
  }
  for (int col : simplex.basis()) solution.basis.push_back(sf.columns[col].key);
  return solution;
}

std::string ToLpFormat(const LinearProgram& lp) {
  auto term = [](double coef, int v, bool first) {
    std::string s;
    if (coef < 0) {
      s = first ? "- " : " - ";
    } else if (!first) {
      s = " + ";
    }
    absl::StrAppendFormat(&s, "%.17g x%d", std::abs(coef), v);
    return s;
  };
  std::string out = "\\ rsched linear program\nMinimize\n obj:";
  bool first = true;
  for (int v = 0; v < lp.num_variables(); ++v) {
    if (lp.cost(v) == 0.0) continue;
    out += " " + term(lp.cost(v), v, first);
    first = false;
  }
  if (first) out += " 0 x0";
  out += "\nSubject To\n";
  std::vector<std::vector<std::pair<int, double>>> rows(lp.num_rows());
  for (int v = 0; v < lp.num_variables(); ++v) {
    for (const auto& e : lp.column(v)) rows[e.row].emplace_back(v, e.value);
  }
  for (int r = 0; r < lp.num_rows(); ++r) {
    absl::StrAppend(&out, " c", r, ":");
    bool first_term = true;
    for (const auto& [v, coef] : rows[r]) {
      out += " " + term(coef, v, first_term);
      first_term = false;
    }
    if (first_term) out += " 0 x0";
    const char* sense = lp.sense(r) == RowSense::kLessEqual      ? "<="
                        : lp.sense(r) == RowSense::kGreaterEqual ? ">="
                                                                 : "=";
    absl::StrAppendFormat(&out, " %s %.17g\n", sense, lp.rhs(r));
  }
  out += "Bounds\n";
  for (int v = 0; v < lp.num_variables(); ++v) {
    const double lo = lp.lower(v);
    const double hi = lp.upper(v);
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      absl::StrAppendFormat(&out, " x%d free\n", v);
    } else if (!std::isfinite(lo)) {
      absl::StrAppendFormat(&out, " -inf <= x%d <= %.17g\n", v, hi);
    } else if (!std::isfinite(hi)) {
      if (lo != 0.0) absl::StrAppendFormat(&out, " x%d >= %.17g\n", v, lo);
    } else {
      absl::StrAppendFormat(&out, " %.17g <= x%d <= %.17g\n", lo, v, hi);
    }
  }
  out += "End\n";
  return out;
}

}  // namespace rsched
