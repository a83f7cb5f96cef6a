#ifndef RSCHED_NONPREEMPTIVE_ROUNDING_H_
#define RSCHED_NONPREEMPTIVE_ROUNDING_H_

// Independent rounding of the time-indexed relaxation. Each job j picks
// (machine i, start s) with probability y(i, j, s) and an offset theta from
// the offset distribution; tau_j = s + theta p_ij. Every machine then runs
// its jobs in increasing tau (ties by job index).
//
// Two schedules come out of one draw. The emitted one starts each job at
// max(release, previous completion). The pseudo-release one starts it at
// max(tau, previous completion); it is the schedule the ratio bounds talk
// about and is never earlier than the emitted one.

#include <cstdint>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "rsched/instance.h"
#include "rsched/interval_lp.h"
#include "rsched/offset_distribution.h"
#include "rsched/random.h"
#include "rsched/trials.h"

namespace rsched {

struct RoundingDraw {
  std::vector<int> machine;
  std::vector<int64_t> start;
  std::vector<double> theta;
  std::vector<double> tau;
};

struct RoundingOutcome {
  RoundingDraw draw;
  NonPreemptiveSchedule schedule;
  std::vector<int64_t> completion;
  double objective = 0.0;
  std::vector<double> pseudo_completion;
  double pseudo_objective = 0.0;
};

// Sequences jobs on each machine by (tau, job) and builds both schedules.
// Shared with the preemptive rounding, which supplies its own tau.
void SequenceByTau(const Instance& instance, RoundingOutcome& outcome);

class IntervalRounder {
 public:
  // The instance, solution and distribution must outlive the rounder. Fails
  // when a job's mass differs from 1 by more than 1e-6.
  static absl::StatusOr<IntervalRounder> Create(
      const Instance& instance, const FractionalIntervalSolution& solution,
      const OffsetDistribution& dist);

  RoundingOutcome RoundOnce(Rng& rng) const;

  // sum_{i,s} y(i, j, s) (s + p_ij).
  const std::vector<double>& job_lp_cost() const { return job_lp_cost_; }

 private:
  IntervalRounder() = default;

  const Instance* instance_ = nullptr;
  const FractionalIntervalSolution* solution_ = nullptr;
  const OffsetDistribution* dist_ = nullptr;
  // Prefix sums of y within each job's entry range.
  std::vector<double> cumulative_;
  std::vector<double> job_lp_cost_;
};

struct RatioEstimate {
  double lp_objective = 0.0;
  MeanEstimate ratio;         // emitted objective / LP
  MeanEstimate pseudo_ratio;  // pseudo-release objective / LP
  std::vector<MeanEstimate> job_completion;
  std::vector<MeanEstimate> job_pseudo_completion;
  std::vector<double> job_lp_cost;
  std::vector<double> trial_objective;  // emitted, per trial
};

// Runs rounder.RoundOnce for every trial; trial k uses
// Rng::ForTrial(seed, k), so results do not depend on threads.
template <typename Rounder>
RatioEstimate EstimateWithRounder(const Rounder& rounder, int num_jobs,
                                  double lp_objective, int64_t trials,
                                  uint64_t seed, int threads) {
  const auto count = static_cast<size_t>(trials);
  std::vector<double> objective(count), pseudo(count);
  std::vector<std::vector<double>> completion(num_jobs,
                                              std::vector<double>(count));
  std::vector<std::vector<double>> pseudo_completion(
      num_jobs, std::vector<double>(count));
  ForEachTrial(trials, threads, [&](int64_t trial) {
    Rng rng = Rng::ForTrial(seed, static_cast<uint64_t>(trial));
    const RoundingOutcome out = rounder.RoundOnce(rng);
    objective[trial] = out.objective;
    pseudo[trial] = out.pseudo_objective;
    for (int j = 0; j < num_jobs; ++j) {
      completion[j][trial] = static_cast<double>(out.completion[j]);
      pseudo_completion[j][trial] = out.pseudo_completion[j];
    }
  });
  RatioEstimate est;
  est.lp_objective = lp_objective;
  est.job_lp_cost = rounder.job_lp_cost();
  std::vector<double> ratio(count), pseudo_ratio(count);
  for (size_t k = 0; k < count; ++k) {
    ratio[k] = objective[k] / lp_objective;
    pseudo_ratio[k] = pseudo[k] / lp_objective;
  }
  est.ratio = EstimateMean(ratio);
  est.pseudo_ratio = EstimateMean(pseudo_ratio);
  for (int j = 0; j < num_jobs; ++j) {
    est.job_completion.push_back(EstimateMean(completion[j]));
    est.job_pseudo_completion.push_back(EstimateMean(pseudo_completion[j]));
  }
  est.trial_objective = std::move(objective);
  return est;
}

absl::StatusOr<RatioEstimate> EstimateRatio(
    const Instance& instance, const FractionalIntervalSolution& solution,
    const OffsetDistribution& dist, int64_t trials, uint64_t seed,
    int threads = 1);

// Density-weighted and distribution-weighted load of the other jobs on
// `machine` at time t, relative to `job`. Both use the normalized density.
double GFunction(const Instance& instance,
                 const FractionalIntervalSolution& solution,
                 const OffsetDistribution& dist, int job, int machine,
                 double t);
double HFunction(const Instance& instance,
                 const FractionalIntervalSolution& solution,
                 const OffsetDistribution& dist, int job, int machine,
                 double t);

// Expected total size of other jobs landing on `machine` with tau below
// `tau`, in closed form.
double ExpectedWorkBefore(const Instance& instance,
                          const FractionalIntervalSolution& solution,
                          const OffsetDistribution& dist, int job, int machine,
                          double tau);

struct IdleRow {
  double t = 0.0;
  double g = 0.0;
  double h = 0.0;
  double bound = 0.0;  // exp(-h)
  MeanEstimate idle;   // empirical probability that the machine is idle at t
};

struct IdleReport {
  std::vector<IdleRow> rows;
  // Monte Carlo estimate of the work done before tau, and its closed form.
  MeanEstimate work_before;
  double work_before_exact = 0.0;
};

// Fixes job j on `machine` with offset point tau and samples every other job
// unconditionally; reports g, h and the idle frequency of the pseudo-release
// schedule at t_k = tau k / grid, k = 1..grid.
absl::StatusOr<IdleReport> IdleDiagnostic(
    const Instance& instance, const FractionalIntervalSolution& solution,
    const OffsetDistribution& dist, int job, int machine, double tau,
    int64_t trials, uint64_t seed, int grid = 50, int threads = 1);

}  // namespace rsched

#endif  // RSCHED_NONPREEMPTIVE_ROUNDING_H_
