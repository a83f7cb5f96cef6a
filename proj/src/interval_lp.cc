#include "rsched/interval_lp.h"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace rsched {

absl::StatusOr<StartTimeSet> CompressStartTimes(const Instance& instance,
                                                double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must lie in (0, 1/2], got ", epsilon));
  }
  StartTimeSet set;
  set.epsilon = epsilon;
  set.delta = epsilon / (2.0 * instance.num_jobs());
  const double target = (1.0 + epsilon) * static_cast<double>(instance.Horizon());
  set.horizon = static_cast<int64_t>(std::ceil(target - 1e-9));
  const auto dense_end = static_cast<int64_t>(std::ceil(1.0 / set.delta - 1e-9));
  for (int64_t s = 0; s <= dense_end; ++s) set.times.push_back(s);
  for (int k = 0;; ++k) {
    const double value = std::pow(1.0 + set.delta, k) / set.delta;
    const auto point = static_cast<int64_t>(std::ceil(value * (1.0 - 1e-12)));
    if (point > set.times.back()) set.times.push_back(point);
    if (value >= target) break;
  }
  return set;
}

absl::StatusOr<IntervalLp> BuildIntervalLp(const Instance& instance,
                                           const StartTimeSet* starts) {
  IntervalLp out;
  const int m = instance.num_machines();
  const int n = instance.num_jobs();
  out.horizon = starts == nullptr ? instance.Horizon() : starts->horizon;
  std::vector<int64_t> all_starts;
  if (starts == nullptr) {
    for (int64_t s = 0; s <= out.horizon; ++s) all_starts.push_back(s);
  } else {
    all_starts = starts->times;
  }

  for (int j = 0; j < n; ++j) {
    out.job_rows.push_back(out.lp.AddRow(RowSense::kEqual, 1.0));
  }
  // Cover rows, created lazily per (machine, t).
  std::vector<std::vector<int>> cover_row(
      m, std::vector<int>(static_cast<size_t>(out.horizon) + 1, -1));
  std::vector<char> keep(static_cast<size_t>(out.horizon) + 1, 0);
  for (int64_t s : all_starts) {
    if (s + 1 <= out.horizon) keep[s + 1] = 1;
  }

  for (int j = 0; j < n; ++j) {
    bool any = false;
    for (int i = 0; i < m; ++i) {
      if (!instance.Allowed(j, i)) continue;
      const int64_t p = instance.Size(j, i);
      const int64_t r = instance.Release(j, i);
      for (int64_t s : all_starts) {
        if (s < r || s + p > out.horizon) continue;
        const int v = out.lp.AddVariable(instance.Weight(j) *
                                         static_cast<double>(s + p));
        out.variables.push_back({i, j, s});
        out.lp.SetCoefficient(out.job_rows[j], v, 1.0);
        any = true;
        for (int64_t t = s + 1; t <= s + p; ++t) {
          if (!keep[t]) continue;
          int& row = cover_row[i][t];
          if (row < 0) row = out.lp.AddRow(RowSense::kLessEqual, 1.0);
          out.lp.SetCoefficient(row, v, 1.0);
        }
      }
    }
    if (!any) {
      return absl::InvalidArgumentError(absl::StrCat(
          "job ", j, " has no admissible start within horizon ", out.horizon));
    }
  }
  return out;
}

FractionalIntervalSolution MakeFractionalSolution(
    const Instance& instance, std::vector<IntervalEntry> entries,
    int64_t horizon) {
  FractionalIntervalSolution sol;
  sol.num_machines = instance.num_machines();
  sol.num_jobs = instance.num_jobs();
  sol.horizon = horizon;
  std::sort(entries.begin(), entries.end(),
            [](const IntervalEntry& a, const IntervalEntry& b) {
              return std::tie(a.job, a.machine, a.start) <
                     std::tie(b.job, b.machine, b.start);
            });
  sol.entries = std::move(entries);
  sol.x.assign(static_cast<size_t>(sol.num_jobs) * sol.num_machines, 0.0);
  sol.job_begin.assign(sol.num_jobs + 1, sol.entries.size());
  for (size_t k = sol.entries.size(); k-- > 0;) {
    sol.job_begin[sol.entries[k].job] = k;
  }
  for (int j = sol.num_jobs - 1; j >= 0; --j) {
    sol.job_begin[j] = std::min(sol.job_begin[j], sol.job_begin[j + 1]);
  }
  for (const IntervalEntry& e : sol.entries) {
    sol.x[static_cast<size_t>(e.job) * sol.num_machines + e.machine] += e.y;
    sol.objective += instance.Weight(e.job) * e.y *
                     static_cast<double>(e.start + instance.Size(e.job, e.machine));
  }
  return sol;
}

absl::StatusOr<FractionalIntervalSolution> SolveIntervalLp(
    const Instance& instance, IntervalMode mode, double epsilon,
    const LpOptions& options) {
  if (mode == IntervalMode::kAuto) {
    mode = instance.Horizon() <= 1000 ? IntervalMode::kFull
                                      : IntervalMode::kCompressed;
  }
  StartTimeSet starts;
  if (mode == IntervalMode::kCompressed) {
    auto set = CompressStartTimes(instance, epsilon);
    if (!set.ok()) return set.status();
    starts = *std::move(set);
  }
  auto built = BuildIntervalLp(
      instance, mode == IntervalMode::kCompressed ? &starts : nullptr);
  if (!built.ok()) return built.status();
  auto solved = SolveLp(built->lp, options);
  if (!solved.ok()) return solved.status();
  if (solved->status != LpStatus::kOptimal) {
    return absl::InternalError(absl::StrCat(
        "interval relaxation is ", LpStatusName(solved->status)));
  }
  std::vector<IntervalEntry> entries;
  for (size_t v = 0; v < built->variables.size(); ++v) {
    const double y = solved->primal[v];
    if (y <= 1e-12) continue;
    const IntervalVariable& var = built->variables[v];
    entries.push_back({var.machine, var.job, var.start, y});
  }
  FractionalIntervalSolution sol =
      MakeFractionalSolution(instance, std::move(entries), built->horizon);
  // Report the solver's value; the recomputed one differs by dropped zeros.
  sol.objective = solved->objective;
  if (auto s = CheckFractionalSolution(instance, sol); !s.ok()) {
    return absl::InternalError(
        absl::StrCat("relaxation solution failed its check: ", s.message()));
  }
  return sol;
}

absl::Status CheckFractionalSolution(const Instance& instance,
                                     const FractionalIntervalSolution& solution,
                                     double tol) {
  const int m = instance.num_machines();
  if (solution.num_machines != m || solution.num_jobs != instance.num_jobs()) {
    return absl::InvalidArgumentError("solution dimensions do not match");
  }
  std::vector<double> row_sum(instance.num_jobs(), 0.0);
  std::vector<std::vector<double>> diff(
      m, std::vector<double>(static_cast<size_t>(solution.horizon) + 2, 0.0));
  for (const IntervalEntry& e : solution.entries) {
    if (e.machine < 0 || e.machine >= m || e.job < 0 ||
        e.job >= instance.num_jobs()) {
      return absl::InvalidArgumentError("entry index out of range");
    }
    if (e.y < -tol) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "negative y(%d, %d, %d) = %g", e.machine, e.job, e.start, e.y));
    }
    if (!instance.Allowed(e.job, e.machine)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "job %d has mass on forbidden machine %d", e.job, e.machine));
    }
    const int64_t p = instance.Size(e.job, e.machine);
    if (e.start < instance.Release(e.job, e.machine) ||
        e.start + p > solution.horizon) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "job %d on machine %d starts at inadmissible time %d", e.job,
          e.machine, e.start));
    }
    row_sum[e.job] += e.y;
    diff[e.machine][e.start + 1] += e.y;
    diff[e.machine][e.start + p + 1] -= e.y;
  }
  for (int j = 0; j < instance.num_jobs(); ++j) {
    if (std::abs(row_sum[j] - 1.0) > tol) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "job %d has total mass %.9f", j, row_sum[j]));
    }
  }
  for (int i = 0; i < m; ++i) {
    double load = 0.0;
    for (int64_t t = 1; t <= solution.horizon; ++t) {
      load += diff[i][t];
      if (load > 1.0 + tol) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "machine %d is covered %.9f times at slot %d", i, load, t));
      }
    }
  }
  return absl::OkStatus();
}

std::string FractionalSolutionToCsv(const FractionalIntervalSolution& solution) {
  std::string out = "machine,job,start,y\n";
  for (const IntervalEntry& e : solution.entries) {
    absl::StrAppendFormat(&out, "%d,%d,%d,%.12g\n", e.machine, e.job, e.start,
                          e.y);
  }
  return out;
}

}  // namespace rsched
