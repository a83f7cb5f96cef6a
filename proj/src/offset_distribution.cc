#include "rsched/offset_distribution.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace rsched {
namespace {

constexpr double kOneMinusInvE = 1.0 - 0.36787944117144233;  // 1 - 1/e

Polynomial Monomial(int degree) {
  std::vector<double> c(degree + 1, 0.0);
  c[degree] = 1.0;
  return Polynomial(std::move(c));
}

Polynomial Constant(double value) { return Polynomial({value}); }

double Bisect(const Polynomial& p, double a, double b) {
  double fa = p(a);
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a));
       ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  while (coefficients_.size() > 1 && coefficients_.back() == 0.0) {
    coefficients_.pop_back();
  }
  if (coefficients_.empty()) coefficients_.push_back(0.0);
}

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (size_t k = coefficients_.size(); k-- > 0;) v = v * x + coefficients_[k];
  return v;
}

Polynomial Polynomial::Derivative() const {
  if (coefficients_.size() <= 1) return Polynomial({0.0});
  std::vector<double> c(coefficients_.size() - 1);
  for (size_t k = 1; k < coefficients_.size(); ++k) {
    c[k - 1] = coefficients_[k] * static_cast<double>(k);
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::Antiderivative() const {
  std::vector<double> c(coefficients_.size() + 1, 0.0);
  for (size_t k = 0; k < coefficients_.size(); ++k) {
    c[k + 1] = coefficients_[k] / static_cast<double>(k + 1);
  }
  return Polynomial(std::move(c));
}

bool Polynomial::IsZero() const {
  return coefficients_.size() == 1 && coefficients_[0] == 0.0;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coefficients_.size(), b.coefficients_.size()),
                        0.0);
  for (size_t k = 0; k < a.coefficients_.size(); ++k) c[k] += a.coefficients_[k];
  for (size_t k = 0; k < b.coefficients_.size(); ++k) c[k] += b.coefficients_[k];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(a.coefficients_.size() + b.coefficients_.size() - 1,
                        0.0);
  for (size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (size_t j = 0; j < b.coefficients_.size(); ++j) {
      c[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c = a.coefficients_;
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

std::vector<double> Polynomial::RootsIn(double lo, double hi) const {
  std::vector<double> roots;
  if (IsZero() || Degree() == 0 || lo > hi) return roots;
  if (Degree() == 1) {
    const double r = -coefficients_[0] / coefficients_[1];
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }
  std::vector<double> points = {lo};
  for (double c : Derivative().RootsIn(lo, hi)) points.push_back(c);
  points.push_back(hi);
  auto add = [&roots](double r) {
    if (roots.empty() || r - roots.back() > 1e-14) roots.push_back(r);
  };
  for (size_t k = 0; k + 1 < points.size(); ++k) {
    const double a = points[k];
    const double b = points[k + 1];
    const double fa = (*this)(a);
    const double fb = (*this)(b);
    if (fa == 0.0) {
      add(a);
    } else if (fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      add(Bisect(*this, a, b));
    }
  }
  if ((*this)(hi) == 0.0) add(hi);
  return roots;
}

absl::StatusOr<OffsetDistribution> OffsetDistribution::FromPieces(
    std::string name, std::vector<double> breakpoints,
    std::vector<Polynomial> pieces) {
  if (breakpoints.size() < 2 || pieces.size() + 1 != breakpoints.size()) {
    return absl::InvalidArgumentError(
        "need k + 1 breakpoints for k density pieces");
  }
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    return absl::InvalidArgumentError("breakpoints must start at 0 and end at 1");
  }
  for (size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    if (!(breakpoints[k] < breakpoints[k + 1])) {
      return absl::InvalidArgumentError("breakpoints must increase strictly");
    }
  }
  for (const Polynomial& p : pieces) {
    for (double c : p.coefficients()) {
      if (!std::isfinite(c)) {
        return absl::InvalidArgumentError("density coefficient is not finite");
      }
    }
  }
  OffsetDistribution dist;
  dist.name_ = std::move(name);
  dist.breakpoints_ = std::move(breakpoints);
  dist.pieces_ = std::move(pieces);
  dist.cumulative_.push_back(0.0);
  double cdf_int_at = 0.0;
  for (size_t k = 0; k < dist.pieces_.size(); ++k) {
    const double lo = dist.breakpoints_[k];
    const double hi = dist.breakpoints_[k + 1];
    const Polynomial& f = dist.pieces_[k];
    std::vector<double> check = {lo, hi};
    for (double c : f.Derivative().RootsIn(lo, hi)) check.push_back(c);
    for (double t : check) {
      if (f(t) < -1e-12) {
        return absl::InvalidArgumentError(
            absl::StrCat("density is negative at ", t));
      }
    }
    const Polynomial anti = f.Antiderivative();
    const Polynomial cdf = anti + Constant(dist.cumulative_.back() - anti(lo));
    dist.cdf_pieces_.push_back(cdf);
    dist.cumulative_.push_back(cdf(hi));
    const Polynomial cdf_anti = cdf.Antiderivative();
    const Polynomial cdf_int = cdf_anti + Constant(cdf_int_at - cdf_anti(lo));
    dist.cdf_int_pieces_.push_back(cdf_int);
    cdf_int_at = cdf_int(hi);
  }
  const double mass = dist.cumulative_.back();
  if (!(std::abs(mass - 1.0) <= 1e-4)) {
    return absl::InvalidArgumentError(
        absl::StrCat("density integrates to ", mass, ", not 1"));
  }
  return dist;
}

OffsetDistribution OffsetDistribution::Uniform() {
  return *FromPieces("uniform", {0.0, 1.0}, {Constant(1.0)});
}

OffsetDistribution OffsetDistribution::TruncatedQuadratic(double a, double b,
                                                          double c, double d) {
  return *FromPieces("quadratic", {0.0, d, 1.0},
                     {Polynomial({c, b, a}), Constant(0.0)});
}

absl::StatusOr<OffsetDistribution> OffsetDistribution::ClippedUniform(
    double lambda) {
  if (!(lambda >= 0.0 && lambda < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clipping must lie in [0, 1/2), got ", lambda));
  }
  const double height = 1.0 / (1.0 - 2.0 * lambda);
  std::string name = absl::StrCat("clipped:", lambda);
  if (lambda == 0.0) return FromPieces(name, {0.0, 1.0}, {Constant(1.0)});
  return FromPieces(name, {0.0, lambda, 1.0 - lambda, 1.0},
                    {Constant(0.0), Constant(height), Constant(0.0)});
}

absl::StatusOr<OffsetDistribution> OffsetDistribution::Parse(
    const std::string& spec) {
  if (spec == "uniform") return Uniform();
  if (spec == "quadratic") return TruncatedQuadratic();
  if (absl::StartsWith(spec, "clipped:")) {
    double lambda = 0.0;
    if (!absl::SimpleAtod(spec.substr(8), &lambda)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad clipping value in '", spec, "'"));
    }
    return ClippedUniform(lambda);
  }
  if (absl::StartsWith(spec, "poly:")) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::vector<double> breakpoints;
    std::vector<Polynomial> pieces;
    try {
      const nlohmann::json doc = nlohmann::json::parse(buffer.str());
      breakpoints = doc.at("breakpoints").get<std::vector<double>>();
      for (const auto& piece : doc.at("pieces")) {
        pieces.emplace_back(piece.get<std::vector<double>>());
      }
    } catch (const nlohmann::json::exception& e) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad density file ", path, ": ", e.what()));
    }
    return FromPieces(spec, std::move(breakpoints), std::move(pieces));
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown distribution '", spec,
      "' (expected uniform, quadratic, clipped:<lambda> or poly:<file>)"));
}

int OffsetDistribution::PieceOf(double theta) const {
  const auto it =
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), theta);
  const int k = static_cast<int>(it - breakpoints_.begin()) - 1;
  return std::clamp(k, 0, static_cast<int>(pieces_.size()) - 1);
}

absl::StatusOr<std::pair<double, double>> OffsetDistribution::Evaluate(
    double theta) const {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("theta ", theta, " outside [0, 1]"));
  }
  return std::make_pair(Pdf(theta), Cdf(theta));
}

double OffsetDistribution::Pdf(double theta) const {
  theta = std::clamp(theta, 0.0, 1.0);
  return pieces_[PieceOf(theta)](theta);
}

double OffsetDistribution::Cdf(double theta) const {
  if (theta <= 0.0) return 0.0;
  if (theta >= 1.0) return cumulative_.back();
  return cdf_pieces_[PieceOf(theta)](theta);
}

double OffsetDistribution::CdfIntegral(double phi) const {
  phi = std::clamp(phi, 0.0, 1.0);
  return cdf_int_pieces_[PieceOf(phi)](phi);
}

double OffsetDistribution::Sample(Rng& rng) const {
  const double u = rng.Uniform01() * cumulative_.back();
  size_t k = 0;
  while (k + 1 < pieces_.size() && cumulative_[k + 1] < u) ++k;
  const Polynomial& cdf = cdf_pieces_[k];
  double lo = breakpoints_[k];
  double hi = breakpoints_[k + 1];
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double OffsetDistribution::RhoAt(double phi) const {
  if (phi <= 0.0) return Pdf(0.0);
  return (Cdf(phi) - kOneMinusInvE * CdfIntegral(phi)) / phi;
}

DistributionStats ComputeDistributionStats(const OffsetDistribution& dist) {
  DistributionStats stats;
  stats.raw_mass = dist.RawMass();
  const auto& bp = dist.breakpoints();
  const auto& pieces = dist.pieces();
  for (size_t k = 0; k < pieces.size(); ++k) {
    const Polynomial moment = (Monomial(1) * pieces[k]).Antiderivative();
    stats.beta += moment(bp[k + 1]) - moment(bp[k]);
  }

  // Stationary points of rho solve N'(phi) phi - N(phi) = 0 on each piece,
  // with N = F - (1 - 1/e) int F.
  double best = -1.0;
  double best_phi = 0.0;
  auto consider = [&](double phi) {
    if (phi <= 0.0) return;
    const double v = dist.RhoAt(phi);
    if (v > best) {
      best = v;
      best_phi = phi;
    }
  };
  for (double b : bp) consider(b);
  for (size_t k = 0; k < pieces.size(); ++k) {
    const double lo = bp[k];
    const double hi = bp[k + 1];
    const Polynomial f = pieces[k];
    const double f_lo = dist.Cdf(lo);
    const double g_lo = dist.CdfIntegral(lo);
    const Polynomial cdf = f.Antiderivative() +
                           Constant(f_lo - f.Antiderivative()(lo));
    const Polynomial cdf_int = cdf.Antiderivative() +
                               Constant(g_lo - cdf.Antiderivative()(lo));
    const Polynomial n = cdf + (-kOneMinusInvE) * cdf_int;
    const Polynomial stationary = Monomial(1) * n.Derivative() + (-1.0) * n;
    for (double root : stationary.RootsIn(lo, hi)) consider(root);
  }
  const double limit = dist.Pdf(0.0);
  if (limit > best) {
    stats.rho = limit;
    stats.phi_star = 0.0;
    stats.attained = false;
  } else {
    stats.rho = best;
    stats.phi_star = best_phi;
  }

  constexpr int kGrid = 100000;
  stats.rho_grid = limit;
  for (int k = 1; k <= kGrid; ++k) {
    stats.rho_grid = std::max(stats.rho_grid, dist.RhoAt(k / double{kGrid}));
  }
  stats.alpha = 1.0 + std::max(stats.rho, (1.0 + stats.rho) * stats.beta);
  return stats;
}

}  // namespace rsched
