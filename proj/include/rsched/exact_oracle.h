#ifndef RSCHED_EXACT_ORACLE_H_
#define RSCHED_EXACT_ORACLE_H_

// Exact optima for tiny instances, used as ground truth.
//
// Both oracles first solve every (machine, job subset) pair on its own and
// then pick the best partition of the jobs over the machines with a subset
// DP in O(m 3^n).
//
// Non-preemptive: every job order on a machine is tried; for a fixed order
// starting each job at max(release, previous completion) is optimal.
// Preemptive (no migration): a DP over the vector of remaining work. Some
// optimal single-machine schedule never idles while a released job is
// unfinished, so the time of the next unit depends only on how much work is
// already done and the state is just the remaining-work vector.

#include <cstdint>

#include "absl/status/statusor.h"
#include "rsched/instance.h"

namespace rsched {

inline constexpr int64_t kDefaultOracleGuard = 10'000'000;

struct NonPreemptiveOptimum {
  double objective = 0.0;
  NonPreemptiveSchedule schedule;
};

struct PreemptiveOptimum {
  double objective = 0.0;
  PreemptiveSchedule schedule;
};

// Fails with ResourceExhausted when m * (number of job sequences) or m * 3^n
// exceeds `guard`.
absl::StatusOr<NonPreemptiveOptimum> BruteForceNonPreemptive(
    const Instance& instance, int64_t guard = kDefaultOracleGuard);

// Fails with ResourceExhausted when m * prod_j (p_max_j + 2) or m * 3^n
// exceeds `guard`.
absl::StatusOr<PreemptiveOptimum> BruteForcePreemptive(
    const Instance& instance, int64_t guard = kDefaultOracleGuard);

}  // namespace rsched

#endif  // RSCHED_EXACT_ORACLE_H_
