#include "rsched/chain.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace rsched {

absl::StatusOr<double> ChainAt(const Chain& chain, double amount) {
  const double length = static_cast<double>(chain.Length());
  if (!(amount > 0.0) || amount > length) {
    return absl::OutOfRangeError(absl::StrCat(
        "chain position ", amount, " outside (0, ", chain.Length(), "]"));
  }
  const double k = std::ceil(amount);
  const auto index = static_cast<size_t>(k) - 1;
  return static_cast<double>(chain.slots[index]) + amount - k;
}

double ChainInverse(const Chain& chain, double t) {
  // Number of slots fully finished by time t.
  const auto done = static_cast<int64_t>(
      std::upper_bound(chain.slots.begin(), chain.slots.end(), t,
                       [](double value, int64_t slot) {
                         return value < static_cast<double>(slot);
                       }) -
      chain.slots.begin());
  if (done == chain.Length()) return static_cast<double>(done);
  const double next_start = static_cast<double>(chain.slots[done]) - 1.0;
  if (t > next_start) return static_cast<double>(done) + (t - next_start);
  return static_cast<double>(done);
}

}  // namespace rsched
