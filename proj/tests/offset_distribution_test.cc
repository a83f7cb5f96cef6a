#include "rsched/offset_distribution.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "rsched/random.h"

namespace rsched {
namespace {

constexpr double kC = 1.0 - 0.36787944117144233;

TEST(PolynomialTest, RootsOfCubic) {
  // (x - 0.2)(x - 0.5)(x - 0.9)
  const Polynomial p = Polynomial({-0.2, 1.0}) * Polynomial({-0.5, 1.0}) *
                       Polynomial({-0.9, 1.0});
  const std::vector<double> roots = p.RootsIn(0.0, 1.0);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_NEAR(roots[0], 0.2, 1e-12);
  EXPECT_NEAR(roots[1], 0.5, 1e-12);
  EXPECT_NEAR(roots[2], 0.9, 1e-12);
  EXPECT_EQ(p.RootsIn(0.3, 0.4).size(), 0u);
}

TEST(OffsetDistributionTest, QuadraticEndpoints) {
  const auto dist = OffsetDistribution::TruncatedQuadratic();
  auto at0 = dist.Evaluate(0.0);
  ASSERT_TRUE(at0.ok());
  EXPECT_DOUBLE_EQ(at0->first, 0.8746);
  EXPECT_DOUBLE_EQ(at0->second, 0.0);
  auto at1 = dist.Evaluate(1.0);
  ASSERT_TRUE(at1.ok());
  EXPECT_DOUBLE_EQ(at1->first, 0.0);
  EXPECT_NEAR(at1->second, 1.00000125, 1e-7);
  EXPECT_FALSE(dist.Evaluate(1.5).ok());
  EXPECT_FALSE(dist.Evaluate(-0.1).ok());
}

TEST(OffsetDistributionTest, ClippedUniformInterior) {
  const double lambda = 0.1;
  auto dist = OffsetDistribution::ClippedUniform(lambda);
  ASSERT_TRUE(dist.ok());
  for (double theta : {0.2, 0.5, 0.85}) {
    auto v = dist->Evaluate(theta);
    ASSERT_TRUE(v.ok());
    EXPECT_NEAR(v->first, 1.0 / (1 - 2 * lambda), 1e-12);
    EXPECT_NEAR(v->second, (theta - lambda) / (1 - 2 * lambda), 1e-12);
  }
  EXPECT_FALSE(OffsetDistribution::ClippedUniform(0.5).ok());
}

TEST(OffsetDistributionTest, RejectsNegativeOrUnnormalizedDensity) {
  EXPECT_FALSE(OffsetDistribution::FromPieces("neg", {0.0, 1.0},
                                              {Polynomial({2.0, -2.5})})
                   .ok());
  EXPECT_FALSE(
      OffsetDistribution::FromPieces("heavy", {0.0, 1.0}, {Polynomial({1.1})})
          .ok());
  EXPECT_TRUE(OffsetDistribution::FromPieces("ramp", {0.0, 1.0},
                                             {Polynomial({0.0, 2.0})})
                  .ok());
}

TEST(OffsetDistributionTest, UniformSamplesPassKolmogorovSmirnov) {
  const auto dist = OffsetDistribution::Uniform();
  Rng rng(11);
  constexpr int kDraws = 1000000;
  std::vector<double> draws(kDraws);
  for (double& d : draws) d = dist.Sample(rng);
  std::sort(draws.begin(), draws.end());
  double ks = 0.0;
  for (int k = 0; k < kDraws; ++k) {
    ks = std::max({ks, std::abs(draws[k] - double(k) / kDraws),
                   std::abs(draws[k] - double(k + 1) / kDraws)});
  }
  EXPECT_LT(ks, 0.002);
}

TEST(OffsetDistributionTest, SampleSupports) {
  const auto quad = OffsetDistribution::TruncatedQuadratic();
  auto clipped = OffsetDistribution::ClippedUniform(1.0 / 5100);
  ASSERT_TRUE(clipped.ok());
  Rng rng(5);
  for (int k = 0; k < 200000; ++k) {
    EXPECT_LE(quad.Sample(rng), 0.85897);
    const double t = clipped->Sample(rng);
    ASSERT_GT(t, 1.0 / 5100);
    ASSERT_LT(t, 1.0 - 1.0 / 5100);
  }
}

TEST(OffsetDistributionTest, SameSeedSameDraws) {
  const auto quad = OffsetDistribution::TruncatedQuadratic();
  Rng a(99), b(99);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(quad.Sample(a), quad.Sample(b));
}

TEST(OffsetDistributionTest, SampleMeanMatchesNormalizedBeta) {
  const auto quad = OffsetDistribution::TruncatedQuadratic();
  const DistributionStats stats = ComputeDistributionStats(quad);
  Rng rng(17);
  constexpr int kDraws = 400000;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < kDraws; ++k) {
    const double t = quad.Sample(rng);
    sum += t;
    sum_sq += t * t;
  }
  const double mean = sum / kDraws;
  const double sigma = std::sqrt((sum_sq / kDraws - mean * mean) / kDraws);
  EXPECT_NEAR(mean, stats.beta / stats.raw_mass, 3 * sigma);
}

TEST(DistributionStatsTest, QuadraticConstants) {
  const DistributionStats s =
      ComputeDistributionStats(OffsetDistribution::TruncatedQuadratic());
  EXPECT_NEAR(s.phi_star, 0.5338653, 1e-5);
  EXPECT_NEAR(s.rho, 0.8784782, 1e-6);
  EXPECT_TRUE(s.attained);
  EXPECT_LT(s.rho, 0.8785);
  EXPECT_LT(s.alpha, 1.8786);
  EXPECT_NEAR(s.rho, s.rho_grid, 1e-7);
  EXPECT_NEAR(s.raw_mass, 1.00000125, 1e-7);
  EXPECT_DOUBLE_EQ(s.alpha, 1.0 + std::max(s.rho, (1 + s.rho) * s.beta));
}

TEST(DistributionStatsTest, QuadraticRhoMatchesClosedFormOnSupport) {
  const auto quad = OffsetDistribution::TruncatedQuadratic();
  const double a = 0.1702, b = 0.5768, c = 0.8746, d = 0.85897;
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const double phi = d * rng.Uniform01();
    const double expected =
        (a * phi * phi / 3 + b * phi / 2 + c) -
        kC * (a * phi * phi * phi / 12 + b * phi * phi / 6 + c * phi / 2);
    EXPECT_NEAR(quad.RhoAt(phi), expected, 1e-12);
  }
  // Past the support rho only falls.
  double tail = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    tail = std::max(tail, quad.RhoAt(d + (1 - d) * k / 1000.0));
  }
  EXPECT_LE(tail, ComputeDistributionStats(quad).rho);
}

TEST(DistributionStatsTest, UniformSupremumIsALimit) {
  const DistributionStats s =
      ComputeDistributionStats(OffsetDistribution::Uniform());
  EXPECT_NEAR(s.beta, 0.5, 1e-15);
  EXPECT_NEAR(s.rho, 1.0, 1e-15);
  EXPECT_FALSE(s.attained);
  EXPECT_NEAR(s.alpha, 2.0, 1e-9);
  const auto uniform = OffsetDistribution::Uniform();
  for (double phi : {0.1, 0.5, 1.0}) {
    EXPECT_NEAR(uniform.RhoAt(phi), 1.0 - kC * phi / 2, 1e-14);
  }
}

TEST(DistributionStatsTest, ClippedUniformApproachesTwo) {
  double previous = 0.0;
  for (double lambda : {0.005, 0.0005, 0.0}) {
    auto dist = OffsetDistribution::ClippedUniform(lambda);
    ASSERT_TRUE(dist.ok());
    const DistributionStats s = ComputeDistributionStats(*dist);
    EXPECT_NEAR(s.rho, s.rho_grid, 1e-7);
    EXPECT_GT(s.alpha, previous);
    EXPECT_LE(s.alpha, 2.0 + 1e-12);
    previous = s.alpha;
  }
  EXPECT_NEAR(previous, 2.0, 1e-12);
}

}  // namespace
}  // namespace rsched
