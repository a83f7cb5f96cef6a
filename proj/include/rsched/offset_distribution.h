#ifndef RSCHED_OFFSET_DISTRIBUTION_H_
#define RSCHED_OFFSET_DISTRIBUTION_H_

// Offset distributions on [0, 1] with piecewise-polynomial density, and the
// constants that bound the rounding ratio they induce:
//   beta  = E[theta] = int_0^1 f(t) t dt
//   rho   = sup_{phi in (0,1]} (F(phi) - (1 - 1/e) int_0^phi F) / phi
//   alpha = 1 + max(rho, (1 + rho) beta)
// Statistics use the density as given; sampling divides by the total mass so
// that draws come from a proper distribution.

#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "rsched/random.h"

namespace rsched {

// Coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  double operator()(double x) const;
  Polynomial Derivative() const;
  // Antiderivative vanishing at 0.
  Polynomial Antiderivative() const;
  int Degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool IsZero() const;
  const std::vector<double>& coefficients() const { return coefficients_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

  // Real roots in [lo, hi], ascending, located by splitting at the roots of
  // the derivative and bisecting each monotone piece.
  std::vector<double> RootsIn(double lo, double hi) const;

 private:
  std::vector<double> coefficients_;
};

class OffsetDistribution {
 public:
  // breakpoints: 0 = b_0 < b_1 < ... < b_k = 1; pieces[i] is the density on
  // [b_i, b_{i+1}). Rejects negative densities and total mass outside
  // [1 - 1e-4, 1 + 1e-4].
  static absl::StatusOr<OffsetDistribution> FromPieces(
      std::string name, std::vector<double> breakpoints,
      std::vector<Polynomial> pieces);

  static OffsetDistribution Uniform();
  // a t^2 + b t + c on [0, d], zero afterwards.
  static OffsetDistribution TruncatedQuadratic(double a = 0.1702,
                                               double b = 0.5768,
                                               double c = 0.8746,
                                               double d = 0.85897);
  // Uniform on (lambda, 1 - lambda); lambda in [0, 1/2).
  static absl::StatusOr<OffsetDistribution> ClippedUniform(double lambda);

  // "uniform", "quadratic", "clipped:<lambda>" or "poly:<json file>" where the
  // file holds {"breakpoints": [...], "pieces": [[c0, c1, ...], ...]}.
  static absl::StatusOr<OffsetDistribution> Parse(const std::string& spec);

  const std::string& name() const { return name_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }

  // Raw (f(theta), F(theta)); theta must lie in [0, 1].
  absl::StatusOr<std::pair<double, double>> Evaluate(double theta) const;
  // Raw density and distribution function, clamped to [0, 1].
  double Pdf(double theta) const;
  double Cdf(double theta) const;
  // int_0^phi F.
  double CdfIntegral(double phi) const;
  // F(1) before normalization.
  double RawMass() const { return cumulative_.back(); }

  // Inverse transform on F / F(1), bisection to 1e-12 within one piece.
  double Sample(Rng& rng) const;

  // (F(phi) - (1 - 1/e) int_0^phi F) / phi for phi in (0, 1]; the limit f(0+)
  // at phi = 0.
  double RhoAt(double phi) const;

 private:
  OffsetDistribution() = default;
  int PieceOf(double theta) const;

  std::string name_;
  std::vector<double> breakpoints_;
  std::vector<Polynomial> pieces_;
  std::vector<Polynomial> cdf_pieces_;       // F on each piece
  std::vector<Polynomial> cdf_int_pieces_;   // int_0^phi F on each piece
  std::vector<double> cumulative_;           // F(b_i)
};

struct DistributionStats {
  double beta = 0.0;
  double rho = 0.0;
  double alpha = 0.0;
  double phi_star = 0.0;
  // False when rho is only approached as phi -> 0+.
  bool attained = true;
  double raw_mass = 0.0;
  // Maximum over the grid {0+, 1e-5, 2e-5, ..., 1}.
  double rho_grid = 0.0;
};

DistributionStats ComputeDistributionStats(const OffsetDistribution& dist);

}  // namespace rsched

#endif  // RSCHED_OFFSET_DISTRIBUTION_H_
