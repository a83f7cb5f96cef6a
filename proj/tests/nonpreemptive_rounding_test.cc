#include "rsched/nonpreemptive_rounding.h"

#include <cmath>
#include <map>
#include <tuple>

#include "gtest/gtest.h"
#include "rsched/interval_lp.h"
#include "rsched/offset_distribution.h"
#include "test_util.h"

namespace rsched {
namespace {

TEST(IntervalRounderTest, SingleJobIgnoresOffset) {
  const Instance inst = MakeInstance(1, {{3}}, {0}, {2.0});
  const auto sol = MakeFractionalSolution(inst, {{0, 0, 0, 1.0}}, 3);
  const auto dist = OffsetDistribution::TruncatedQuadratic();
  auto est = EstimateRatio(inst, sol, dist, 500, 1);
  ASSERT_TRUE(est.ok()) << est.status();
  EXPECT_DOUBLE_EQ(est->ratio.mean, 1.0);
  EXPECT_DOUBLE_EQ(est->ratio.std_error, 0.0);
  EXPECT_DOUBLE_EQ(est->job_completion[0].mean, 3.0);
}

TEST(IntervalRounderTest, TwoUnitJobsSplitByOffsetOrder) {
  const Instance inst = MakeInstance(1, {{1}, {1}}, {0, 0}, {3.0, 1.0});
  const auto sol =
      MakeFractionalSolution(inst, {{0, 0, 0, 1.0}, {0, 1, 0, 1.0}}, 2);
  const auto dist = OffsetDistribution::Uniform();
  auto rounder = IntervalRounder::Create(inst, sol, dist);
  ASSERT_TRUE(rounder.ok());
  Rng rng(4);
  int first_wins = 0;
  constexpr int kTrials = 20000;
  for (int k = 0; k < kTrials; ++k) {
    const RoundingOutcome out = rounder->RoundOnce(rng);
    const bool first = out.draw.tau[0] < out.draw.tau[1];
    EXPECT_EQ(out.completion[0], first ? 1 : 2);
    EXPECT_EQ(out.completion[1], first ? 2 : 1);
    EXPECT_DOUBLE_EQ(out.objective, first ? 3.0 + 2.0 : 6.0 + 1.0);
    first_wins += first;
  }
  const double sigma = std::sqrt(0.25 / kTrials);
  EXPECT_NEAR(first_wins / double{kTrials}, 0.5, 3 * sigma);
}

TEST(IntervalRounderTest, RefusesInvalidMass) {
  const Instance inst = MakeInstance(1, {{1}}, {0}, {1.0});
  const auto sol = MakeFractionalSolution(inst, {{0, 0, 0, 0.9}}, 1);
  const auto dist = OffsetDistribution::Uniform();
  EXPECT_FALSE(IntervalRounder::Create(inst, sol, dist).ok());
}

class RandomInstanceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    auto sol = SolveIntervalLp(inst_, IntervalMode::kFull);
    ASSERT_TRUE(sol.ok()) << sol.status();
    sol_ = *std::move(sol);
  }
  const Instance inst_ = GenerateInstance(
      {.num_jobs = 6, .num_machines = 2, .p_max = 6, .r_max = 8}, 21);
  FractionalIntervalSolution sol_;
};

TEST_F(RandomInstanceTest, EveryDrawIsValidAndNoLaterThanPseudo) {
  const auto dist = OffsetDistribution::TruncatedQuadratic();
  auto rounder = IntervalRounder::Create(inst_, sol_, dist);
  ASSERT_TRUE(rounder.ok());
  Rng rng(8);
  for (int k = 0; k < 2000; ++k) {
    const RoundingOutcome out = rounder->RoundOnce(rng);
    auto value = EvaluateSchedule(inst_, out.schedule);
    ASSERT_TRUE(value.ok()) << value.status();
    EXPECT_DOUBLE_EQ(value->objective, out.objective);
    for (int j = 0; j < inst_.num_jobs(); ++j) {
      EXPECT_LE(static_cast<double>(out.completion[j]),
                out.pseudo_completion[j] + 1e-9);
      EXPECT_GE(out.draw.tau[j], static_cast<double>(out.draw.start[j]));
    }
  }
}

TEST_F(RandomInstanceTest, AssignmentFrequenciesMatchRelaxation) {
  const auto dist = OffsetDistribution::Uniform();
  auto rounder = IntervalRounder::Create(inst_, sol_, dist);
  ASSERT_TRUE(rounder.ok());
  constexpr int kTrials = 100000;
  std::map<std::tuple<int, int, int64_t>, int> hits;
  Rng rng(2);
  for (int k = 0; k < kTrials; ++k) {
    const RoundingOutcome out = rounder->RoundOnce(rng);
    for (int j = 0; j < inst_.num_jobs(); ++j) {
      ++hits[{j, out.draw.machine[j], out.draw.start[j]}];
    }
  }
  for (const IntervalEntry& e : sol_.entries) {
    const double freq = hits[{e.job, e.machine, e.start}] / double{kTrials};
    const double sigma = std::sqrt(e.y * (1 - e.y) / kTrials);
    EXPECT_NEAR(freq, e.y, 3 * sigma + 1e-12)
        << "job " << e.job << " machine " << e.machine << " start " << e.start;
  }
}

TEST_F(RandomInstanceTest, MeanRatiosWithinGuarantees) {
  const auto quad = OffsetDistribution::TruncatedQuadratic();
  auto est = EstimateRatio(inst_, sol_, quad, 20000, 5);
  ASSERT_TRUE(est.ok());
  EXPECT_LE(est->ratio.mean, 1.8786 + 3 * est->ratio.std_error);
  EXPECT_LE(est->pseudo_ratio.mean, 1.8786 + 3 * est->pseudo_ratio.std_error);
  const auto uniform = OffsetDistribution::Uniform();
  auto est_uniform = EstimateRatio(inst_, sol_, uniform, 20000, 5);
  ASSERT_TRUE(est_uniform.ok());
  EXPECT_LE(est_uniform->pseudo_ratio.mean,
            2.0 + 3 * est_uniform->pseudo_ratio.std_error);
}

TEST_F(RandomInstanceTest, ThreadCountDoesNotChangeResults) {
  const auto quad = OffsetDistribution::TruncatedQuadratic();
  auto one = EstimateRatio(inst_, sol_, quad, 3000, 77, 1);
  auto three = EstimateRatio(inst_, sol_, quad, 3000, 77, 3);
  ASSERT_TRUE(one.ok() && three.ok());
  EXPECT_EQ(one->ratio.mean, three->ratio.mean);
  EXPECT_EQ(one->trial_objective, three->trial_objective);
}

TEST_F(RandomInstanceTest, IdleProbabilityBelowExponentialBound) {
  const auto quad = OffsetDistribution::TruncatedQuadratic();
  const int job = 0;
  const int machine = sol_.entries[sol_.job_begin[job]].machine;
  const double tau = 0.6 * static_cast<double>(sol_.horizon);
  auto report = IdleDiagnostic(inst_, sol_, quad, job, machine, tau, 20000, 9);
  ASSERT_TRUE(report.ok()) << report.status();
  for (const IdleRow& row : report->rows) {
    EXPECT_LE(row.h, 1.0 + 1e-9);
    EXPECT_LE(row.idle.mean, row.bound + 3 * row.idle.std_error + 1e-12)
        << "t = " << row.t;
  }
  EXPECT_NEAR(report->work_before.mean, report->work_before_exact,
              3 * report->work_before.std_error + 1e-9);
}

TEST_F(RandomInstanceTest, IntegralOfGIsExpectedWorkBefore) {
  const auto quad = OffsetDistribution::TruncatedQuadratic();
  for (int machine = 0; machine < inst_.num_machines(); ++machine) {
    const double tau = 0.5 * static_cast<double>(sol_.horizon) + 0.3;
    // g is smooth between integers and kinks at them; midpoint rule on a
    // fine grid.
    constexpr int kSteps = 200000;
    double integral = 0.0;
    for (int k = 0; k < kSteps; ++k) {
      const double t = tau * (k + 0.5) / kSteps;
      integral += GFunction(inst_, sol_, quad, 0, machine, t);
    }
    integral *= tau / kSteps;
    EXPECT_NEAR(integral,
                ExpectedWorkBefore(inst_, sol_, quad, 0, machine, tau), 1e-4);
  }
}

TEST(IdleDiagnosticTest, EmptyMachineIsAlwaysIdle) {
  const Instance inst = MakeInstance(2, {{2, 2}, {3, kForbidden}}, {0, 0},
                                     {1.0, 1.0});
  const auto sol =
      MakeFractionalSolution(inst, {{1, 0, 0, 1.0}, {0, 1, 0, 1.0}}, 5);
  const auto dist = OffsetDistribution::Uniform();
  auto report = IdleDiagnostic(inst, sol, dist, 0, 1, 2.0, 100, 3, 10);
  ASSERT_TRUE(report.ok());
  for (const IdleRow& row : report->rows) {
    EXPECT_EQ(row.g, 0.0);
    EXPECT_EQ(row.h, 0.0);
    EXPECT_EQ(row.idle.mean, 1.0);
    EXPECT_EQ(row.bound, 1.0);
  }
}

}  // namespace
}  // namespace rsched
