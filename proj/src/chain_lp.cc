#include "rsched/chain_lp.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace rsched {

ChainTimeline UnitTimeline(int64_t horizon) {
  ChainTimeline timeline;
  timeline.points.resize(horizon + 1);
  std::iota(timeline.points.begin(), timeline.points.end(), int64_t{0});
  return timeline;
}

absl::StatusOr<ChainTimeline> BuildCompressedTimeline(const Instance& instance,
                                                      double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must lie in (0, 1], got ", epsilon));
  }
  const int64_t horizon = instance.Horizon();
  std::set<int64_t> points = {0};
  for (int j = 0; j < instance.num_jobs(); ++j) {
    for (int i = 0; i < instance.num_machines(); ++i) {
      if (instance.Allowed(j, i)) points.insert(instance.Release(j, i));
    }
  }
  for (int k = 0;; ++k) {
    const double value = std::pow(1.0 + epsilon, k);
    const auto point = static_cast<int64_t>(std::ceil(value * (1.0 - 1e-12)));
    points.insert(point);
    if (point >= horizon) break;
  }
  ChainTimeline timeline;
  timeline.points.assign(points.begin(), points.end());
  return timeline;
}

std::optional<PricedChain> PriceChain(int machine, int job, int64_t p,
                                      int64_t release, double weight,
                                      double eta, std::span<const double> xi,
                                      int64_t horizon) {
  if (p < 1 || release + p > horizon) return std::nullopt;
  // Max-heap of the p - 1 cheapest (xi, slot) among (r, C - 1].
  std::priority_queue<std::pair<double, int64_t>> kept;
  double kept_sum = 0.0;
  const auto keep = static_cast<size_t>(p - 1);
  double best = kInfinity;
  int64_t best_c = -1;
  for (int64_t c = release + 1; c <= horizon; ++c) {
    if (c >= release + p) {
      const double cost = weight * static_cast<double>(c) + kept_sum + xi[c] - eta;
      if (cost < best) {
        best = cost;
        best_c = c;
      }
    }
    // Slot c joins the pool for the next completion.
    if (keep == 0) continue;
    const std::pair<double, int64_t> entry = {xi[c], c};
    if (kept.size() < keep) {
      kept.push(entry);
      kept_sum += xi[c];
    } else if (entry < kept.top()) {
      kept_sum += xi[c] - kept.top().first;
      kept.pop();
      kept.push(entry);
    }
  }
  PricedChain out;
  out.chain.machine = machine;
  out.chain.job = job;
  std::vector<std::pair<double, int64_t>> pool;
  for (int64_t t = release + 1; t < best_c; ++t) pool.emplace_back(xi[t], t);
  std::sort(pool.begin(), pool.end());
  for (size_t k = 0; k < keep; ++k) out.chain.slots.push_back(pool[k].second);
  out.chain.slots.push_back(best_c);
  std::sort(out.chain.slots.begin(), out.chain.slots.end());
  // Recompute in slot order so the value does not depend on the heap's
  // summation order.
  double cost = weight * static_cast<double>(best_c) - eta;
  for (int64_t t : out.chain.slots) cost += xi[t];
  out.reduced_cost = cost;
  return out;
}

Chain BlockChain::Materialize(const ChainTimeline& timeline) const {
  Chain chain;
  chain.machine = machine;
  chain.job = job;
  for (const auto& [block, count] : counts) {
    for (int64_t s = 1; s <= count; ++s) {
      chain.slots.push_back(timeline.points[block - 1] + s);
    }
  }
  return chain;
}

std::optional<std::pair<BlockChain, double>> PriceBlockChain(
    const ChainTimeline& timeline, int machine, int job, int64_t p,
    int64_t release, double weight, double eta, std::span<const double> xi) {
  const int num_blocks = timeline.num_blocks();
  int first = 1;
  while (first <= num_blocks && timeline.points[first - 1] < release) ++first;
  std::vector<int> by_cost;
  for (int k = first; k <= num_blocks; ++k) by_cost.push_back(k);
  std::sort(by_cost.begin(), by_cost.end(), [&xi](int a, int b) {
    return std::tie(xi[a], a) < std::tie(xi[b], b);
  });
  double best = kInfinity;
  int best_last = -1;
  int64_t capacity = 0;
  for (int last = first; last <= num_blocks; ++last) {
    capacity += timeline.Length(last);
    if (capacity < p) continue;
    double cost = weight * static_cast<double>(timeline.points[last]) + xi[last];
    int64_t need = p - 1;
    for (int k : by_cost) {
      if (need == 0) break;
      if (k > last) continue;
      const int64_t room = timeline.Length(k) - (k == last ? 1 : 0);
      const int64_t take = std::min(room, need);
      cost += static_cast<double>(take) * xi[k];
      need -= take;
    }
    cost -= eta;
    if (cost < best) {
      best = cost;
      best_last = last;
    }
  }
  if (best_last < 0) return std::nullopt;
  std::map<int, int64_t> take = {{best_last, 1}};
  int64_t need = p - 1;
  for (int k : by_cost) {
    if (need == 0) break;
    if (k > best_last) continue;
    const int64_t room = timeline.Length(k) - (k == best_last ? 1 : 0);
    const int64_t n = std::min(room, need);
    if (n > 0) take[k] += n;
    need -= n;
  }
  BlockChain chain;
  chain.machine = machine;
  chain.job = job;
  chain.completion = timeline.points[best_last];
  double cost = weight * static_cast<double>(chain.completion) - eta;
  for (const auto& [k, n] : take) {
    chain.counts.emplace_back(k, n);
    cost += static_cast<double>(n) * xi[k];
  }
  return std::make_pair(std::move(chain), cost);
}

namespace {

BlockChain FromSlots(const ChainTimeline& timeline, int machine, int job,
                     const std::vector<int64_t>& slots) {
  BlockChain chain;
  chain.machine = machine;
  chain.job = job;
  for (int64_t t : slots) {
    // Block k holds slot t when t_{k-1} < t <= t_k.
    const int k = static_cast<int>(std::lower_bound(timeline.points.begin(),
                                                    timeline.points.end(), t) -
                                   timeline.points.begin());
    if (!chain.counts.empty() && chain.counts.back().first == k) {
      ++chain.counts.back().second;
    } else {
      chain.counts.emplace_back(k, 1);
    }
    chain.completion = timeline.points[k];
  }
  return chain;
}

std::vector<int64_t> Consecutive(int64_t from, int64_t count) {
  std::vector<int64_t> slots(count);
  std::iota(slots.begin(), slots.end(), from);
  return slots;
}

class ColumnGeneration {
 public:
  ColumnGeneration(const Instance& instance, const ChainLpOptions& options,
                   ChainTimeline timeline)
      : instance_(instance), options_(options), timeline_(std::move(timeline)) {
    const int m = instance.num_machines();
    const int blocks = timeline_.num_blocks();
    for (int j = 0; j < instance.num_jobs(); ++j) {
      job_rows_.push_back(lp_.AddRow(RowSense::kGreaterEqual, 1.0));
    }
    capacity_rows_.assign(m, std::vector<int>(blocks + 1, -1));
    for (int i = 0; i < m; ++i) {
      for (int k = 1; k <= blocks; ++k) {
        capacity_rows_[i][k] = lp_.AddRow(
            RowSense::kLessEqual, static_cast<double>(timeline_.Length(k)));
      }
    }
  }

  absl::Status AddInitialColumns() {
    const int n = instance_.num_jobs();
    const int m = instance_.num_machines();
    const bool every_machine = n * m <= 200;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        if (!instance_.Allowed(j, i)) continue;
        if (!every_machine && i != instance_.FastestMachine(j)) continue;
        const int64_t r = instance_.Release(j, i);
        const int64_t p = instance_.Size(j, i);
        if (r + p > timeline_.horizon()) continue;
        AddColumn(FromSlots(timeline_, i, j, Consecutive(r + 1, p)));
      }
    }
    // A back-to-back schedule keeps the first master feasible: earliest
    // chains alone can overload a slot.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [this](int a, int b) {
      return instance_.Release(a) < instance_.Release(b);
    });
    std::vector<int64_t> free_at(m, 0);
    for (int j : order) {
      const int i = instance_.FastestMachine(j);
      const int64_t start = std::max(instance_.Release(j, i), free_at[i]);
      const int64_t p = instance_.Size(j, i);
      if (start + p > timeline_.horizon()) {
        return absl::InternalError("greedy schedule exceeds the horizon");
      }
      free_at[i] = start + p;
      AddColumn(FromSlots(timeline_, i, j, Consecutive(start + 1, p)));
    }
    return absl::OkStatus();
  }

  absl::StatusOr<ChainSolution> Run() {
    if (auto s = AddInitialColumns(); !s.ok()) return s;
    ChainSolution out;
    out.timeline = timeline_;
    const int n = instance_.num_jobs();
    const int m = instance_.num_machines();
    const int blocks = timeline_.num_blocks();
    std::vector<BasisKey> basis;
    LpSolution master;
    while (true) {
      if (out.rounds >= options_.max_rounds) {
        return absl::InternalError(absl::StrCat(
            "column generation did not converge in ", out.rounds, " rounds"));
      }
      ++out.rounds;
      auto solved =
          SolveLp(lp_, options_.lp, basis.empty() ? nullptr : &basis);
      if (!solved.ok()) return solved.status();
      if (solved->status != LpStatus::kOptimal) {
        return absl::InternalError(absl::StrCat(
            "restricted master is ", LpStatusName(solved->status)));
      }
      master = *std::move(solved);
      basis = master.basis;
      out.eta.assign(n, 0.0);
      for (int j = 0; j < n; ++j) {
        out.eta[j] = std::max(0.0, master.duals[job_rows_[j]]);
      }
      out.xi.assign(m, std::vector<double>(blocks + 1, 0.0));
      for (int i = 0; i < m; ++i) {
        for (int k = 1; k <= blocks; ++k) {
          out.xi[i][k] = std::max(0.0, -master.duals[capacity_rows_[i][k]]);
        }
      }
      int added = 0;
      bool duplicate_only = false;
      double gap = 0.0;
      for (int j = 0; j < n; ++j) {
        double job_best = 0.0;
        for (int i = 0; i < m; ++i) {
          if (!instance_.Allowed(j, i)) continue;
          auto priced = Price(i, j, out.eta[j], out.xi[i]);
          if (!priced) continue;
          job_best = std::min(job_best, priced->second);
          if (priced->second >= -options_.tolerance) continue;
          if (AddColumn(std::move(priced->first))) {
            ++added;
          } else {
            duplicate_only = true;
          }
        }
        gap -= job_best;
      }
      out.pricing_gap = gap;
      if (added == 0) {
        out.stalled = duplicate_only;
        break;
      }
    }
    out.objective = master.objective;
    out.num_generated = static_cast<int>(columns_.size());
    for (size_t v = 0; v < columns_.size(); ++v) {
      if (master.primal[v] <= 1e-12) continue;
      out.columns.push_back(
          {columns_[v], columns_[v].Materialize(timeline_), master.primal[v]});
    }
    return out;
  }

 private:
  std::optional<std::pair<BlockChain, double>> Price(
      int i, int j, double eta, const std::vector<double>& xi) const {
    const int64_t p = instance_.Size(j, i);
    const int64_t r = instance_.Release(j, i);
    const double w = instance_.Weight(j);
    if (timeline_.IsUnit()) {
      auto priced = PriceChain(i, j, p, r, w, eta, xi, timeline_.horizon());
      if (!priced) return std::nullopt;
      return std::make_pair(FromSlots(timeline_, i, j, priced->chain.slots),
                            priced->reduced_cost);
    }
    return PriceBlockChain(timeline_, i, j, p, r, w, eta, xi);
  }

  // False when the column is already present.
  bool AddColumn(BlockChain chain) {
    auto key = std::make_tuple(chain.machine, chain.job, chain.counts);
    if (!seen_.insert(key).second) return false;
    const int v = lp_.AddVariable(instance_.Weight(chain.job) *
                                  static_cast<double>(chain.completion));
    lp_.SetCoefficient(job_rows_[chain.job], v, 1.0);
    for (const auto& [k, count] : chain.counts) {
      lp_.SetCoefficient(capacity_rows_[chain.machine][k], v,
                         static_cast<double>(count));
    }
    columns_.push_back(std::move(chain));
    return true;
  }

  const Instance& instance_;
  const ChainLpOptions& options_;
  const ChainTimeline timeline_;
  LinearProgram lp_;
  std::vector<int> job_rows_;
  std::vector<std::vector<int>> capacity_rows_;
  std::vector<BlockChain> columns_;
  std::set<std::tuple<int, int, std::vector<std::pair<int, int64_t>>>> seen_;
};

}  // namespace

absl::StatusOr<ChainSolution> SolveChainLp(const Instance& instance,
                                           const ChainLpOptions& options) {
  ChainTimeline timeline;
  if (options.compressed) {
    auto built = BuildCompressedTimeline(instance, options.epsilon);
    if (!built.ok()) return built.status();
    timeline = *std::move(built);
  } else {
    timeline = UnitTimeline(instance.Horizon());
  }
  ColumnGeneration cg(instance, options, std::move(timeline));
  auto solution = cg.Run();
  if (!solution.ok()) return solution.status();
  if (auto s = CheckChainSolution(instance, *solution); !s.ok()) {
    return absl::InternalError(
        absl::StrCat("chain solution failed its check: ", s.message()));
  }
  return solution;
}

absl::Status CheckChainSolution(const Instance& instance,
                                const ChainSolution& solution, double tol) {
  const ChainTimeline& timeline = solution.timeline;
  std::vector<double> mass(instance.num_jobs(), 0.0);
  std::vector<std::vector<double>> load(
      instance.num_machines(),
      std::vector<double>(timeline.num_blocks() + 1, 0.0));
  for (const ChainColumn& col : solution.columns) {
    const Chain& c = col.chain;
    if (c.job < 0 || c.job >= instance.num_jobs() || c.machine < 0 ||
        c.machine >= instance.num_machines() ||
        !instance.Allowed(c.job, c.machine)) {
      return absl::InvalidArgumentError("chain on an invalid (job, machine)");
    }
    if (c.Length() != instance.Size(c.job, c.machine)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "chain of job %d has %d slots, size is %d", c.job, c.Length(),
          instance.Size(c.job, c.machine)));
    }
    for (size_t k = 0; k < c.slots.size(); ++k) {
      if ((k > 0 && c.slots[k] <= c.slots[k - 1]) ||
          c.slots[k] <= instance.Release(c.job, c.machine) ||
          c.slots[k] > timeline.horizon()) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "chain of job %d has invalid slot %d", c.job, c.slots[k]));
      }
    }
    mass[c.job] += col.z;
    for (const auto& [k, count] : col.block_chain.counts) {
      load[c.machine][k] += col.z * static_cast<double>(count);
    }
  }
  for (int j = 0; j < instance.num_jobs(); ++j) {
    if (mass[j] < 1.0 - tol) {
      return absl::InvalidArgumentError(
          absl::StrFormat("job %d has chain mass %.9f", j, mass[j]));
    }
  }
  for (int i = 0; i < instance.num_machines(); ++i) {
    for (int k = 1; k <= timeline.num_blocks(); ++k) {
      if (load[i][k] > static_cast<double>(timeline.Length(k)) + tol) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "machine %d block ending at %d has load %.9f", i,
            timeline.points[k], load[i][k]));
      }
    }
  }
  return absl::OkStatus();
}

std::string ChainSolutionToCsv(const ChainSolution& solution) {
  std::string out = "machine,job,z,slots\n";
  for (const ChainColumn& col : solution.columns) {
    absl::StrAppendFormat(&out, "%d,%d,%.12g", col.chain.machine,
                          col.chain.job, col.z);
    for (int64_t t : col.chain.slots) absl::StrAppend(&out, ",", t);
    out += "\n";
  }
  return out;
}

}  // namespace rsched
