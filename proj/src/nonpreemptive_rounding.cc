#include "rsched/nonpreemptive_rounding.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace rsched {

void SequenceByTau(const Instance& instance, RoundingOutcome& outcome) {
  const int n = instance.num_jobs();
  const RoundingDraw& draw = outcome.draw;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&draw](int a, int b) {
    return std::tie(draw.tau[a], a) < std::tie(draw.tau[b], b);
  });
  outcome.schedule.machine = draw.machine;
  outcome.schedule.start.assign(n, 0);
  outcome.completion.assign(n, 0);
  outcome.pseudo_completion.assign(n, 0.0);
  outcome.objective = 0.0;
  outcome.pseudo_objective = 0.0;
  std::vector<int64_t> free_at(instance.num_machines(), 0);
  std::vector<double> pseudo_free_at(instance.num_machines(), 0.0);
  for (int j : order) {
    const int i = draw.machine[j];
    const int64_t p = instance.Size(j, i);
    const int64_t start = std::max(instance.Release(j, i), free_at[i]);
    outcome.schedule.start[j] = start;
    free_at[i] = start + p;
    outcome.completion[j] = start + p;
    const double pseudo_start = std::max(draw.tau[j], pseudo_free_at[i]);
    pseudo_free_at[i] = pseudo_start + static_cast<double>(p);
    outcome.pseudo_completion[j] = pseudo_free_at[i];
  }
  for (int j = 0; j < n; ++j) {
    outcome.objective +=
        instance.Weight(j) * static_cast<double>(outcome.completion[j]);
    outcome.pseudo_objective += instance.Weight(j) * outcome.pseudo_completion[j];
  }
}

absl::StatusOr<IntervalRounder> IntervalRounder::Create(
    const Instance& instance, const FractionalIntervalSolution& solution,
    const OffsetDistribution& dist) {
  if (solution.num_jobs != instance.num_jobs() ||
      solution.num_machines != instance.num_machines()) {
    return absl::InvalidArgumentError(
        "fractional solution does not match the instance");
  }
  IntervalRounder r;
  r.instance_ = &instance;
  r.solution_ = &solution;
  r.dist_ = &dist;
  r.cumulative_.resize(solution.entries.size());
  r.job_lp_cost_.assign(instance.num_jobs(), 0.0);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    double sum = 0.0;
    for (size_t k = solution.job_begin[j]; k < solution.job_begin[j + 1]; ++k) {
      const IntervalEntry& e = solution.entries[k];
      if (e.y < 0.0 || !instance.Allowed(j, e.machine)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "job %d has an invalid entry on machine %d", j, e.machine));
      }
      sum += e.y;
      r.cumulative_[k] = sum;
      r.job_lp_cost_[j] +=
          e.y * static_cast<double>(e.start + instance.Size(j, e.machine));
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "job %d has fractional mass %.9f; refusing to round", j, sum));
    }
  }
  return r;
}

RoundingOutcome IntervalRounder::RoundOnce(Rng& rng) const {
  const int n = instance_->num_jobs();
  RoundingOutcome out;
  RoundingDraw& draw = out.draw;
  draw.machine.resize(n);
  draw.start.resize(n);
  draw.theta.resize(n);
  draw.tau.resize(n);
  for (int j = 0; j < n; ++j) {
    const size_t begin = solution_->job_begin[j];
    const size_t end = solution_->job_begin[j + 1];
    const double u = rng.Uniform01() * cumulative_[end - 1];
    size_t k = static_cast<size_t>(
        std::lower_bound(cumulative_.begin() + begin, cumulative_.begin() + end,
                         u) -
        cumulative_.begin());
    k = std::min(k, end - 1);
    const IntervalEntry& e = solution_->entries[k];
    draw.machine[j] = e.machine;
    draw.start[j] = e.start;
    draw.theta[j] = dist_->Sample(rng);
    draw.tau[j] = static_cast<double>(e.start) +
                  draw.theta[j] * static_cast<double>(instance_->Size(j, e.machine));
  }
  SequenceByTau(*instance_, out);
  return out;
}

absl::StatusOr<RatioEstimate> EstimateRatio(
    const Instance& instance, const FractionalIntervalSolution& solution,
    const OffsetDistribution& dist, int64_t trials, uint64_t seed,
    int threads) {
  if (trials < 1) return absl::InvalidArgumentError("need at least one trial");
  auto rounder = IntervalRounder::Create(instance, solution, dist);
  if (!rounder.ok()) return rounder.status();
  if (!(solution.objective > 0.0)) {
    return absl::InvalidArgumentError(
        "relaxation objective is zero; ratio undefined");
  }
  return EstimateWithRounder(*rounder, instance.num_jobs(), solution.objective,
                             trials, seed, threads);
}

namespace {

// Sums y * kernel((t - s) / p) over other jobs' entries on `machine` that
// would be running at time t.
template <typename Kernel>
double LoadAt(const Instance& instance,
              const FractionalIntervalSolution& solution, int job, int machine,
              double t, Kernel kernel) {
  double total = 0.0;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    if (j == job || !instance.Allowed(j, machine)) continue;
    const auto p = static_cast<double>(instance.Size(j, machine));
    for (size_t k = solution.job_begin[j]; k < solution.job_begin[j + 1]; ++k) {
      const IntervalEntry& e = solution.entries[k];
      const auto s = static_cast<double>(e.start);
      if (e.machine != machine || s >= t || s < t - p) continue;
      total += e.y * kernel((t - s) / p);
    }
  }
  return total;
}

}  // namespace

double GFunction(const Instance& instance,
                 const FractionalIntervalSolution& solution,
                 const OffsetDistribution& dist, int job, int machine,
                 double t) {
  const double mass = dist.RawMass();
  return LoadAt(instance, solution, job, machine, t,
                [&](double x) { return dist.Pdf(x) / mass; });
}

double HFunction(const Instance& instance,
                 const FractionalIntervalSolution& solution,
                 const OffsetDistribution& dist, int job, int machine,
                 double t) {
  const double mass = dist.RawMass();
  return LoadAt(instance, solution, job, machine, t,
                [&](double x) { return dist.Cdf(x) / mass; });
}

double ExpectedWorkBefore(const Instance& instance,
                          const FractionalIntervalSolution& solution,
                          const OffsetDistribution& dist, int job, int machine,
                          double tau) {
  const double mass = dist.RawMass();
  double total = 0.0;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    if (j == job || !instance.Allowed(j, machine)) continue;
    const auto p = static_cast<double>(instance.Size(j, machine));
    for (size_t k = solution.job_begin[j]; k < solution.job_begin[j + 1]; ++k) {
      const IntervalEntry& e = solution.entries[k];
      const auto s = static_cast<double>(e.start);
      if (e.machine != machine || s >= tau) continue;
      total += e.y * p * dist.Cdf(std::min(1.0, (tau - s) / p)) / mass;
    }
  }
  return total;
}

absl::StatusOr<IdleReport> IdleDiagnostic(
    const Instance& instance, const FractionalIntervalSolution& solution,
    const OffsetDistribution& dist, int job, int machine, double tau,
    int64_t trials, uint64_t seed, int grid, int threads) {
  if (job < 0 || job >= instance.num_jobs() || machine < 0 ||
      machine >= instance.num_machines()) {
    return absl::InvalidArgumentError("job or machine out of range");
  }
  if (!(tau > 0.0 && tau <= static_cast<double>(solution.horizon))) {
    return absl::InvalidArgumentError(
        absl::StrFormat("tau %g outside (0, %d]", tau, solution.horizon));
  }
  if (trials < 1 || grid < 1) {
    return absl::InvalidArgumentError("trials and grid must be positive");
  }
  auto rounder = IntervalRounder::Create(instance, solution, dist);
  if (!rounder.ok()) return rounder.status();

  IdleReport report;
  std::vector<double> points(grid);
  for (int k = 0; k < grid; ++k) points[k] = tau * (k + 1) / grid;
  const auto count = static_cast<size_t>(trials);
  std::vector<uint8_t> idle(count * grid, 0);
  std::vector<double> work(count, 0.0);

  ForEachTrial(trials, threads, [&](int64_t trial) {
    Rng rng = Rng::ForTrial(seed, static_cast<uint64_t>(trial));
    // Job j's own draw is independent of the others, so it is simply left
    // out; the rest are drawn exactly as in RoundOnce.
    const RoundingOutcome out = rounder->RoundOnce(rng);
    std::vector<int> here;
    for (int j = 0; j < instance.num_jobs(); ++j) {
      if (j != job && out.draw.machine[j] == machine) here.push_back(j);
    }
    std::sort(here.begin(), here.end(), [&out](int a, int b) {
      return std::tie(out.draw.tau[a], a) < std::tie(out.draw.tau[b], b);
    });
    std::vector<std::pair<double, double>> busy;
    double free_at = 0.0;
    double before = 0.0;
    for (int j : here) {
      const auto p = static_cast<double>(instance.Size(j, machine));
      const double start = std::max(out.draw.tau[j], free_at);
      free_at = start + p;
      busy.emplace_back(start, free_at);
      if (out.draw.tau[j] < tau) before += p;
    }
    work[trial] = before;
    for (int k = 0; k < grid; ++k) {
      bool covered = false;
      for (const auto& [a, b] : busy) {
        if (points[k] > a && points[k] <= b) {
          covered = true;
          break;
        }
      }
      idle[static_cast<size_t>(trial) * grid + k] = covered ? 0 : 1;
    }
  });

  for (int k = 0; k < grid; ++k) {
    IdleRow row;
    row.t = points[k];
    row.g = GFunction(instance, solution, dist, job, machine, row.t);
    row.h = HFunction(instance, solution, dist, job, machine, row.t);
    row.bound = std::exp(-row.h);
    std::vector<double> samples(count);
    for (size_t trial = 0; trial < count; ++trial) {
      samples[trial] = idle[trial * grid + k];
    }
    row.idle = EstimateMean(samples);
    report.rows.push_back(row);
  }
  report.work_before = EstimateMean(work);
  report.work_before_exact =
      ExpectedWorkBefore(instance, solution, dist, job, machine, tau);
  return report;
}

}  // namespace rsched
