#ifndef RSCHED_CHAIN_H_
#define RSCHED_CHAIN_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"

namespace rsched {

// A preemptive single-machine schedule of one job: the job occupies the unit
// slots (t-1, t] for every t in `slots`. Slots are strictly increasing and all
// exceed the job's release time; |slots| equals the job's size on `machine`.
struct Chain {
  int machine = 0;
  int job = 0;
  std::vector<int64_t> slots;

  int64_t Completion() const { return slots.empty() ? 0 : slots.back(); }
  int64_t Length() const { return static_cast<int64_t>(slots.size()); }

  friend bool operator==(const Chain&, const Chain&) = default;
  friend auto operator<=>(const Chain&, const Chain&) = default;
};

// Time at which the job has received `amount` units of processing:
// A(v) = t_ceil(v) + v - ceil(v), for v in (0, |A|].
absl::StatusOr<double> ChainAt(const Chain& chain, double amount);

// Processing received by time t: sup{v in (0, |A|] : A(v) <= t}, and 0 when
// the set is empty.
double ChainInverse(const Chain& chain, double t);

}  // namespace rsched

#endif  // RSCHED_CHAIN_H_
