#ifndef RSCHED_INTERVAL_LP_H_
#define RSCHED_INTERVAL_LP_H_

// Time-indexed relaxation: y(i, j, s) is the fraction of job j that starts at
// integer time s on machine i and runs during (s, s + p_ij]. Each job's
// variables sum to one and each (machine, unit slot) is covered at most once.
//
// For long horizons the start times can be restricted to a geometric grid
// (see CompressStartTimes); the horizon then grows to ceil((1 + eps) T) and
// only the cover rows right after a grid point are kept. Those rows imply
// all the others, which CheckFractionalSolution verifies after the fact.

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rsched/instance.h"
#include "rsched/lp_solver.h"

namespace rsched {

struct StartTimeSet {
  double epsilon = 0.0;
  double delta = 0.0;  // eps / 2n
  int64_t horizon = 0;  // ceil((1 + eps) T)
  std::vector<int64_t> times;  // strictly increasing
};

// {0, ..., ceil(1/delta)} plus ceil((1 + delta)^k / delta) for k = 0..K, K the
// smallest exponent reaching (1 + eps) T. Requires eps in (0, 1/2].
absl::StatusOr<StartTimeSet> CompressStartTimes(const Instance& instance,
                                                double epsilon);

struct IntervalVariable {
  int machine = 0;
  int job = 0;
  int64_t start = 0;
};

struct IntervalLp {
  LinearProgram lp;
  std::vector<IntervalVariable> variables;  // indexed like lp variables
  int64_t horizon = 0;
  std::vector<int> job_rows;  // equality row per job
};

// Builds the relaxation over every start in [0, T] when `starts` is null and
// over starts->times otherwise.
absl::StatusOr<IntervalLp> BuildIntervalLp(const Instance& instance,
                                           const StartTimeSet* starts);

struct IntervalEntry {
  int machine = 0;
  int job = 0;
  int64_t start = 0;
  double y = 0.0;
};

struct FractionalIntervalSolution {
  int num_machines = 0;
  int num_jobs = 0;
  // Sorted by (job, machine, start); only positive values are kept.
  std::vector<IntervalEntry> entries;
  // entries[job_begin[j], job_begin[j + 1]) belong to job j.
  std::vector<size_t> job_begin;
  std::vector<double> x;  // x[job * num_machines + machine]
  double objective = 0.0;
  int64_t horizon = 0;

  double X(int job, int machine) const {
    return x[static_cast<size_t>(job) * num_machines + machine];
  }
};

// Sorts the entries, derives x and the objective sum w_j y (s + p).
FractionalIntervalSolution MakeFractionalSolution(
    const Instance& instance, std::vector<IntervalEntry> entries,
    int64_t horizon);

enum class IntervalMode { kAuto, kFull, kCompressed };

// kAuto solves the full relaxation when T <= 1000 and the compressed one
// otherwise.
absl::StatusOr<FractionalIntervalSolution> SolveIntervalLp(
    const Instance& instance, IntervalMode mode = IntervalMode::kAuto,
    double epsilon = 0.5, const LpOptions& options = {});

// Row sums, admissible starts and the cover condition at every integer
// t in [1, horizon], each with tolerance `tol`.
absl::Status CheckFractionalSolution(const Instance& instance,
                                     const FractionalIntervalSolution& solution,
                                     double tol = 1e-6);

// Lines "machine,job,start,y" after a header.
std::string FractionalSolutionToCsv(const FractionalIntervalSolution& solution);

}  // namespace rsched

#endif  // RSCHED_INTERVAL_LP_H_
