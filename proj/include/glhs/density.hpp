#pragma once

// The limiting spectral measure nu_t (t < 0). Its density is read off the
// upper preimage of x under g_t along gamma_t:
//   rho_t(x) = Im[g_t^{-1}(x)] / (pi x),   x in [x_lo, x_hi],
// where x_lo, x_hi are the values of g_t at the real points of the curve.

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "glhs/curve.hpp"
#include "glhs/numerics.hpp"

namespace glhs {

struct SupportInterval {
  double t;
  double x_lo;
  double x_mid;  // g_t(-1/2 + i y_t), where the two monotone branches meet
  double x_hi;
  double y_t;
  double a_t;
};

/// Support endpoints (x_lo, x_hi) = g_t(x_t^{-/+}(0)):
///   x_hi = (1 - t/2 + s) e^{s},  x_lo = (1 - t/2 - s) e^{-s},  s = sqrt(t^2/4 - t).
/// The lower factor is taken as 1 / (1 - t/2 + s), the same number without
/// the subtraction, so x_lo * x_hi = 1 holds to rounding.
template <class Scalar>
std::pair<Scalar, Scalar> support_endpoints(Scalar t) {
  using std::exp, std::sqrt;
  detail::require_negative_time(t);
  const Scalar s = sqrt(t * t / 4 - t);
  const Scalar upper = 1 - t / 2 + s;
  return {exp(-s) / upper, upper * exp(s)};
}

SupportInterval support(double t);

struct DensityPoint {
  double x;
  double rho;
};

struct DensityProfile {
  double t;
  std::vector<DensityPoint> points;
  SupportInterval support;
  std::string grid;  // sampling policy, e.g. "cosine, edge offset 1e-06"
  // Mass of the sampled points by the trapezoid rule. Reported, not
  // enforced: steep edges (t <= -4) are under- or over-resolved by the grid.
  double trapezoid_mass = 0;
};

/// nu_t with its curve geometry computed once; all queries are const and
/// safe to share across threads.
class SpectralMeasure {
 public:
  explicit SpectralMeasure(double t);

  double t() const { return support_.t; }
  const SupportInterval& support() const { return support_; }

  /// Upper preimage z (Im z in [0, y_t]) of x on gamma_t.
  std::complex<double> invert(double x) const;
  double density(double x) const;

  QuadratureResult moment_ex(int n, double tol_rel = kQuadTolRel) const;
  double moment(int n, double tol_rel = kQuadTolRel) const { return moment_ex(n, tol_rel).value; }

  double cdf(double x, double tol_rel = kQuadTolRel) const;
  double quantile(double p) const;

  DensityProfile profile(int n_points) const;

 private:
  double branch_g(double y, Branch branch) const;
  QuadratureResult integrate_weighted(int power, double a, double b, double tol_rel) const;

  SupportInterval support_;
};

std::complex<double> invert_g(double t, double x);
double density_at(double t, double x);
DensityProfile density_profile(double t, int n_points);
double moment_from_density(double t, int n, double tol_rel = kQuadTolRel);
double cdf(double t, double x);
double quantile(double t, double p);

/// Trapezoidal mass of a sampled profile.
double profile_mass(const DensityProfile& profile);

}  // namespace glhs
