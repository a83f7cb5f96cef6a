#ifndef RSCHED_PREEMPTIVE_ROUNDING_H_
#define RSCHED_PREEMPTIVE_ROUNDING_H_

// Rounding of the chain relaxation into a non-preemptive schedule. Each job
// picks one of its chains A with probability proportional to z_A, draws theta
// (by default clipped uniform with lambda = 1/5100) and gets the offset point
// tau = A(theta p). Machines run their jobs in increasing tau.
//
// The analysis schedule starts each job at max(tau, previous completion).
// The emitted schedule uses the same order with integral starts
// max(release, previous completion); it never finishes a job later than the
// analysis schedule does, since every slot of a chain lies after the release.

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "rsched/chain_lp.h"
#include "rsched/instance.h"
#include "rsched/nonpreemptive_rounding.h"
#include "rsched/offset_distribution.h"
#include "rsched/random.h"

namespace rsched {

inline constexpr double kDefaultClipping = 1.0 / 5100;

class ChainRounder {
 public:
  // Objects must outlive the rounder. Fails when some job's chain mass is
  // below 1 - 1e-6 or a chain is invalid; masses above 1 are renormalized.
  static absl::StatusOr<ChainRounder> Create(const Instance& instance,
                                             const ChainSolution& solution,
                                             const OffsetDistribution& dist);

  // draw.start holds the beginning of the chosen chain's first slot. When
  // `picked` is given it receives the index into solution.columns per job.
  RoundingOutcome RoundOnce(Rng& rng, std::vector<int>* picked = nullptr) const;

  // sum_A z_A C_A / sum_A z_A per job.
  const std::vector<double>& job_lp_cost() const { return job_lp_cost_; }

 private:
  ChainRounder() = default;

  const Instance* instance_ = nullptr;
  const ChainSolution* solution_ = nullptr;
  const OffsetDistribution* dist_ = nullptr;
  std::vector<std::vector<int>> job_columns_;
  std::vector<std::vector<double>> job_cumulative_;
  std::vector<double> job_lp_cost_;
};

// Ratios against the chain relaxation objective.
absl::StatusOr<RatioEstimate> EstimateRatioPreemptive(
    const Instance& instance, const ChainSolution& solution,
    const OffsetDistribution& dist, int64_t trials, uint64_t seed,
    int threads = 1);

}  // namespace rsched

#endif  // RSCHED_PREEMPTIVE_ROUNDING_H_
