#include "rsched/preemptive_rounding.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace rsched {

absl::StatusOr<ChainRounder> ChainRounder::Create(
    const Instance& instance, const ChainSolution& solution,
    const OffsetDistribution& dist) {
  if (auto s = CheckChainSolution(instance, solution); !s.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("refusing to round: ", s.message()));
  }
  ChainRounder r;
  r.instance_ = &instance;
  r.solution_ = &solution;
  r.dist_ = &dist;
  const int n = instance.num_jobs();
  r.job_columns_.resize(n);
  r.job_cumulative_.resize(n);
  r.job_lp_cost_.assign(n, 0.0);
  for (size_t c = 0; c < solution.columns.size(); ++c) {
    const ChainColumn& col = solution.columns[c];
    const int j = col.chain.job;
    const double before =
        r.job_cumulative_[j].empty() ? 0.0 : r.job_cumulative_[j].back();
    r.job_columns_[j].push_back(static_cast<int>(c));
    r.job_cumulative_[j].push_back(before + col.z);
    r.job_lp_cost_[j] +=
        col.z * static_cast<double>(col.block_chain.completion);
  }
  for (int j = 0; j < n; ++j) {
    r.job_lp_cost_[j] /= r.job_cumulative_[j].back();
  }
  return r;
}

RoundingOutcome ChainRounder::RoundOnce(Rng& rng,
                                        std::vector<int>* picked) const {
  const int n = instance_->num_jobs();
  RoundingOutcome out;
  RoundingDraw& draw = out.draw;
  draw.machine.resize(n);
  draw.start.resize(n);
  draw.theta.resize(n);
  draw.tau.resize(n);
  if (picked != nullptr) picked->assign(n, -1);
  for (int j = 0; j < n; ++j) {
    const std::vector<double>& cum = job_cumulative_[j];
    const double u = rng.Uniform01() * cum.back();
    size_t k = static_cast<size_t>(
        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
    k = std::min(k, cum.size() - 1);
    const int column = job_columns_[j][k];
    const Chain& chain = solution_->columns[column].chain;
    if (picked != nullptr) (*picked)[j] = column;
    draw.machine[j] = chain.machine;
    draw.start[j] = chain.slots.front() - 1;
    draw.theta[j] = dist_->Sample(rng);
    const double length = static_cast<double>(chain.Length());
    const double amount = std::clamp(draw.theta[j] * length, 1e-12, length);
    draw.tau[j] = *ChainAt(chain, amount);
  }
  SequenceByTau(*instance_, out);
  return out;
}

absl::StatusOr<RatioEstimate> EstimateRatioPreemptive(
    const Instance& instance, const ChainSolution& solution,
    const OffsetDistribution& dist, int64_t trials, uint64_t seed,
    int threads) {
  if (trials < 1) return absl::InvalidArgumentError("need at least one trial");
  auto rounder = ChainRounder::Create(instance, solution, dist);
  if (!rounder.ok()) return rounder.status();
  if (!(solution.objective > 0.0)) {
    return absl::InvalidArgumentError(
        "relaxation objective is zero; ratio undefined");
  }
  return EstimateWithRounder(*rounder, instance.num_jobs(), solution.objective,
                             trials, seed, threads);
}

}  // namespace rsched
