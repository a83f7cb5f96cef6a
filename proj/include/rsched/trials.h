#ifndef RSCHED_TRIALS_H_
#define RSCHED_TRIALS_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

namespace rsched {

// Runs fn(trial) for every trial in [0, num_trials). Trials are split into
// contiguous ranges, one per thread. Callers write results into per-trial
// slots so the reduction order never depends on the thread count.
template <typename Fn>
void ForEachTrial(int64_t num_trials, int num_threads, Fn&& fn) {
  num_threads = std::max(1, num_threads);
  if (num_threads == 1 || num_trials < 2 * num_threads) {
    for (int64_t t = 0; t < num_trials; ++t) fn(t);
    return;
  }
  std::vector<std::jthread> workers;
  const int64_t chunk = (num_trials + num_threads - 1) / num_threads;
  for (int w = 0; w < num_threads; ++w) {
    const int64_t begin = w * chunk;
    const int64_t end = std::min(num_trials, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([begin, end, &fn] {
      for (int64_t t = begin; t < end; ++t) fn(t);
    });
  }
}

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // standard error of the mean
};

// Kahan-summed mean and standard error, in input order.
inline MeanEstimate EstimateMean(std::span<const double> values) {
  MeanEstimate est;
  if (values.empty()) return est;
  double sum = 0.0, c = 0.0;
  for (double v : values) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  const double n = static_cast<double>(values.size());
  est.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    c = 0.0;
    for (double v : values) {
      const double d = (v - est.mean) * (v - est.mean);
      const double y = d - c;
      const double t = ss + y;
      c = (t - ss) - y;
      ss = t;
    }
    est.std_error = std::sqrt(ss / (n - 1) / n);
  }
  return est;
}

}  // namespace rsched

#endif  // RSCHED_TRIALS_H_
