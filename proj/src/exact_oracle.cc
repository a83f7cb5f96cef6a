#include "rsched/exact_oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace rsched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int64_t SaturatingMul(int64_t a, int64_t b, int64_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap + 1;
  return a * b;
}

int64_t SaturatingAdd(int64_t a, int64_t b, int64_t cap) {
  return std::min(cap + 1, a + b);
}

absl::Status CheckPartitionGuard(const Instance& instance, int64_t guard) {
  int64_t size = instance.num_machines();
  for (int j = 0; j < instance.num_jobs(); ++j) size = SaturatingMul(size, 3, guard);
  if (instance.num_jobs() > 24 || size > guard) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "oracle guard exceeded: m * 3^n is above ", guard));
  }
  return absl::OkStatus();
}

// cost[i][S]: best objective of job set S alone on machine i (kInf when some
// job in S cannot run there). Returns the best objective and the job set of
// every machine.
double BestPartition(const std::vector<std::vector<double>>& cost, int n,
                     std::vector<uint32_t>& sets) {
  const int m = static_cast<int>(cost.size());
  const uint32_t full = (1u << n) - 1;
  std::vector<std::vector<double>> best(m, std::vector<double>(full + 1, kInf));
  std::vector<std::vector<uint32_t>> choice(m,
                                            std::vector<uint32_t>(full + 1, 0));
  best[0] = cost[0];
  for (uint32_t s = 0; s <= full; ++s) choice[0][s] = s;
  for (int i = 1; i < m; ++i) {
    for (uint32_t s = 0; s <= full; ++s) {
      for (uint32_t t = s;; t = (t - 1) & s) {
        const double v = best[i - 1][s & ~t] + cost[i][t];
        if (v < best[i][s]) {
          best[i][s] = v;
          choice[i][s] = t;
        }
        if (t == 0) break;
      }
    }
  }
  sets.assign(m, 0);
  uint32_t rest = full;
  for (int i = m - 1; i >= 0; --i) {
    sets[i] = choice[i][rest];
    rest &= ~sets[i];
  }
  return best[m - 1][full];
}

}  // namespace

absl::StatusOr<NonPreemptiveOptimum> BruteForceNonPreemptive(
    const Instance& instance, int64_t guard) {
  if (auto s = CheckPartitionGuard(instance, guard); !s.ok()) return s;
  const int n = instance.num_jobs();
  const int m = instance.num_machines();
  int64_t sequences = 0;
  for (int i = 0; i < m; ++i) {
    int64_t allowed = 0;
    for (int j = 0; j < n; ++j) allowed += instance.Allowed(j, i);
    // Sequences of distinct allowed jobs: sum_k allowed! / (allowed - k)!.
    int64_t term = 1;
    for (int64_t k = 0; k <= allowed; ++k) {
      sequences = SaturatingAdd(sequences, term, guard);
      term = SaturatingMul(term, allowed - k, guard);
    }
  }
  if (sequences > guard) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "oracle guard exceeded: more than ", guard, " job sequences"));
  }

  const uint32_t full = (1u << n) - 1;
  std::vector<std::vector<double>> cost(m, std::vector<double>(full + 1, kInf));
  std::vector<std::vector<std::vector<int>>> order(
      m, std::vector<std::vector<int>>(full + 1));
  for (int i = 0; i < m; ++i) {
    std::vector<int> prefix;
    std::function<void(uint32_t, int64_t, double)> dfs =
        [&](uint32_t mask, int64_t time, double value) {
          if (value < cost[i][mask]) {
            cost[i][mask] = value;
            order[i][mask] = prefix;
          }
          for (int j = 0; j < n; ++j) {
            if ((mask >> j & 1) || !instance.Allowed(j, i)) continue;
            const int64_t done =
                std::max(instance.Release(j, i), time) + instance.Size(j, i);
            prefix.push_back(j);
            dfs(mask | (1u << j), done,
                value + instance.Weight(j) * static_cast<double>(done));
            prefix.pop_back();
          }
        };
    dfs(0, 0, 0.0);
  }
  std::vector<uint32_t> sets;
  NonPreemptiveOptimum out;
  out.objective = BestPartition(cost, n, sets);
  out.schedule.machine.assign(n, -1);
  out.schedule.start.assign(n, 0);
  for (int i = 0; i < m; ++i) {
    int64_t time = 0;
    for (int j : order[i][sets[i]]) {
      const int64_t start = std::max(instance.Release(j, i), time);
      out.schedule.machine[j] = i;
      out.schedule.start[j] = start;
      time = start + instance.Size(j, i);
    }
  }
  return out;
}

namespace {

// Single-machine preemptive optimum of one job set.
struct SubsetDp {
  const Instance& instance;
  int machine;
  std::vector<int> jobs;
  std::vector<int64_t> radix;       // mixed-radix multipliers
  std::vector<int64_t> unit_start;  // start of the W-th unit of work
  std::vector<double> memo;
  std::vector<int8_t> pick;

  double Solve(int64_t code, size_t done) {
    if (done == unit_start.size()) return 0.0;
    double& slot = memo[code];
    if (!std::isnan(slot)) return slot;
    const int64_t s = unit_start[done];
    double best = kInf;
    int8_t best_pick = -1;
    for (size_t l = 0; l < jobs.size(); ++l) {
      const int64_t rem = code / radix[l] % (instance.Size(jobs[l], machine) + 1);
      if (rem == 0 || instance.Release(jobs[l], machine) > s) continue;
      double v = Solve(code - radix[l], done + 1);
      if (rem == 1) v += instance.Weight(jobs[l]) * static_cast<double>(s + 1);
      if (v < best) {
        best = v;
        best_pick = static_cast<int8_t>(l);
      }
    }
    memo[code] = best;
    pick[code] = best_pick;
    return best;
  }
};

}  // namespace

absl::StatusOr<PreemptiveOptimum> BruteForcePreemptive(
    const Instance& instance, int64_t guard) {
  if (auto s = CheckPartitionGuard(instance, guard); !s.ok()) return s;
  const int n = instance.num_jobs();
  const int m = instance.num_machines();
  int64_t states = 0;
  for (int i = 0; i < m; ++i) {
    int64_t prod = 1;
    for (int j = 0; j < n; ++j) {
      if (instance.Allowed(j, i)) {
        prod = SaturatingMul(prod, instance.Size(j, i) + 2, guard);
      }
    }
    states = SaturatingAdd(states, prod, guard);
  }
  if (states > guard) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "oracle guard exceeded: more than ", guard, " remaining-work states"));
  }

  const uint32_t full = (1u << n) - 1;
  std::vector<std::vector<double>> cost(m, std::vector<double>(full + 1, kInf));
  // Slots per job for the chosen set are rebuilt after the partition.
  auto run = [&](int i, uint32_t set, std::vector<Chain>* chains) -> double {
    SubsetDp dp{instance, i, {}, {}, {}, {}, {}};
    int64_t states_here = 1;
    for (int j = 0; j < n; ++j) {
      if (!(set >> j & 1)) continue;
      if (!instance.Allowed(j, i)) return kInf;
      dp.jobs.push_back(j);
      dp.radix.push_back(states_here);
      states_here *= instance.Size(j, i) + 1;
    }
    // Busy profile of any schedule that never idles with work available.
    std::vector<std::pair<int64_t, int64_t>> arrivals;
    for (int j : dp.jobs) {
      arrivals.emplace_back(instance.Release(j, i), instance.Size(j, i));
    }
    std::sort(arrivals.begin(), arrivals.end());
    int64_t t = 0, released = 0;
    size_t next = 0;
    int64_t total = 0;
    for (const auto& a : arrivals) total += a.second;
    for (int64_t w = 0; w < total; ++w) {
      while (next < arrivals.size() && arrivals[next].first <= t) {
        released += arrivals[next++].second;
      }
      if (released == w) {
        t = arrivals[next].first;
        while (next < arrivals.size() && arrivals[next].first <= t) {
          released += arrivals[next++].second;
        }
      }
      dp.unit_start.push_back(t++);
    }
    dp.memo.assign(states_here, std::numeric_limits<double>::quiet_NaN());
    dp.pick.assign(states_here, -1);
    const int64_t start_code = states_here - 1;
    const double value = dp.Solve(start_code, 0);
    if (chains != nullptr) {
      int64_t code = start_code;
      for (size_t w = 0; w < dp.unit_start.size(); ++w) {
        const int l = dp.pick[code];
        (*chains)[dp.jobs[l]].slots.push_back(dp.unit_start[w] + 1);
        code -= dp.radix[l];
      }
    }
    return value;
  };
  for (int i = 0; i < m; ++i) {
    for (uint32_t set = 0; set <= full; ++set) cost[i][set] = run(i, set, nullptr);
  }
  std::vector<uint32_t> sets;
  PreemptiveOptimum out;
  out.objective = BestPartition(cost, n, sets);
  out.schedule.machine.assign(n, -1);
  out.schedule.chains.assign(n, Chain{});
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (sets[i] >> j & 1) {
        out.schedule.machine[j] = i;
        out.schedule.chains[j].machine = i;
        out.schedule.chains[j].job = j;
      }
    }
    run(i, sets[i], &out.schedule.chains);
  }
  return out;
}

}  // namespace rsched
