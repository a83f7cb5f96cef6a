#include "rsched/preemptive_rounding.h"

#include <cmath>

#include "gtest/gtest.h"
#include "rsched/chain_lp.h"
#include "test_util.h"

namespace rsched {
namespace {

ChainSolution HandMade(const Instance& inst, int64_t horizon,
                       std::vector<std::pair<Chain, double>> chains) {
  ChainSolution sol;
  sol.timeline = UnitTimeline(horizon);
  for (auto& [chain, z] : chains) {
    BlockChain block;
    block.machine = chain.machine;
    block.job = chain.job;
    for (int64_t t : chain.slots) block.counts.emplace_back(static_cast<int>(t), 1);
    block.completion = chain.Completion();
    sol.objective += z * inst.Weight(chain.job) * chain.Completion();
    sol.columns.push_back({block, chain, z});
  }
  return sol;
}

TEST(ChainRounderTest, SingleJobKeepsIntegralCompletion) {
  const Instance inst = MakeInstance(1, {{2}}, {0}, {1.0});
  const ChainSolution sol = HandMade(inst, 2, {{Chain{0, 0, {1, 2}}, 1.0}});
  auto dist = OffsetDistribution::ClippedUniform(kDefaultClipping);
  ASSERT_TRUE(dist.ok());
  auto rounder = ChainRounder::Create(inst, sol, *dist);
  ASSERT_TRUE(rounder.ok()) << rounder.status();
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const RoundingOutcome out = rounder->RoundOnce(rng);
    EXPECT_EQ(out.completion[0], 2);
    EXPECT_GT(out.draw.tau[0], 0.0);
    EXPECT_LT(out.draw.tau[0], 2.0);
    EXPECT_DOUBLE_EQ(out.pseudo_completion[0], out.draw.tau[0] + 2.0);
  }
}

TEST(ChainRounderTest, TwoUnitJobsOnSeparateSlots) {
  const Instance inst = MakeInstance(1, {{1}, {1}}, {0, 0}, {2.0, 1.0});
  const ChainSolution sol = HandMade(
      inst, 2, {{Chain{0, 0, {1}}, 1.0}, {Chain{0, 1, {2}}, 1.0}});
  const auto uniform = OffsetDistribution::Uniform();
  auto est = EstimateRatioPreemptive(inst, sol, uniform, 40000, 3);
  ASSERT_TRUE(est.ok()) << est.status();
  // Job 0 always precedes job 1: emitted completions are 1 and 2.
  EXPECT_DOUBLE_EQ(est->job_completion[0].mean, 1.0);
  EXPECT_DOUBLE_EQ(est->job_completion[1].mean, 2.0);
  // Analysis: C0 = 1 + theta0, C1 = 2 + max(theta0, theta1).
  EXPECT_NEAR(est->job_pseudo_completion[0].mean, 1.5,
              3 * est->job_pseudo_completion[0].std_error);
  EXPECT_NEAR(est->job_pseudo_completion[1].mean, 2.0 + 2.0 / 3.0,
              3 * est->job_pseudo_completion[1].std_error);
}

TEST(ChainRounderTest, ExcessMassIsRenormalized) {
  const Instance inst = MakeInstance(2, {{1, 1}}, {0}, {1.0});
  const ChainSolution sol = HandMade(
      inst, 1, {{Chain{0, 0, {1}}, 1.0}, {Chain{1, 0, {1}}, 1.0}});
  const auto uniform = OffsetDistribution::Uniform();
  auto rounder = ChainRounder::Create(inst, sol, uniform);
  ASSERT_TRUE(rounder.ok());
  Rng rng(5);
  int on_first = 0;
  constexpr int kTrials = 20000;
  for (int k = 0; k < kTrials; ++k) on_first += rounder->RoundOnce(rng).draw.machine[0] == 0;
  EXPECT_NEAR(on_first / double{kTrials}, 0.5, 3 * std::sqrt(0.25 / kTrials));
}

TEST(ChainRounderTest, RefusesMissingMass) {
  const Instance inst = MakeInstance(1, {{1}}, {0}, {1.0});
  const ChainSolution sol = HandMade(inst, 1, {{Chain{0, 0, {1}}, 0.5}});
  const auto uniform = OffsetDistribution::Uniform();
  EXPECT_FALSE(ChainRounder::Create(inst, sol, uniform).ok());
}

TEST(ChainRounderTest, MeanOffsetPointAtMostHalfBeforeCompletion) {
  const Instance inst = MakeInstance(1, {{4}}, {1}, {1.0});
  const Chain chain{0, 0, {2, 5, 6, 9}};
  const ChainSolution sol = HandMade(inst, 9, {{chain, 1.0}});
  auto dist = OffsetDistribution::ClippedUniform(kDefaultClipping);
  ASSERT_TRUE(dist.ok());
  auto rounder = ChainRounder::Create(inst, sol, *dist);
  ASSERT_TRUE(rounder.ok());
  Rng rng(12);
  constexpr int kTrials = 50000;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < kTrials; ++k) {
    const double tau = rounder->RoundOnce(rng).draw.tau[0];
    sum += tau;
    sum_sq += tau * tau;
  }
  const double mean = sum / kTrials;
  const double sigma = std::sqrt((sum_sq / kTrials - mean * mean) / kTrials);
  EXPECT_LE(mean, 9.0 - 2.0 + 3 * sigma);
}

TEST(ChainRounderTest, RandomInstanceWithinGuarantee) {
  const Instance inst = GenerateInstance(
      {.num_jobs = 5, .num_machines = 2, .p_max = 5, .r_max = 6}, 31);
  auto sol = SolveChainLp(inst);
  ASSERT_TRUE(sol.ok()) << sol.status();
  auto clipped = OffsetDistribution::ClippedUniform(kDefaultClipping);
  ASSERT_TRUE(clipped.ok());
  auto rounder = ChainRounder::Create(inst, *sol, *clipped);
  ASSERT_TRUE(rounder.ok());
  Rng rng(2);
  for (int k = 0; k < 2000; ++k) {
    const RoundingOutcome out = rounder->RoundOnce(rng);
    auto value = EvaluateSchedule(inst, out.schedule);
    ASSERT_TRUE(value.ok()) << value.status();
    EXPECT_LE(out.objective, out.pseudo_objective + 1e-9);
  }
  auto est = EstimateRatioPreemptive(inst, *sol, *clipped, 20000, 4);
  ASSERT_TRUE(est.ok());
  EXPECT_LE(est->pseudo_ratio.mean, 1.99971 + 3 * est->pseudo_ratio.std_error);
  auto plain = OffsetDistribution::ClippedUniform(0.0);
  ASSERT_TRUE(plain.ok());
  auto est_plain = EstimateRatioPreemptive(inst, *sol, *plain, 20000, 4);
  ASSERT_TRUE(est_plain.ok());
  EXPECT_LE(est_plain->pseudo_ratio.mean,
            2.0 + 3 * est_plain->pseudo_ratio.std_error);
}

}  // namespace
}  // namespace rsched
