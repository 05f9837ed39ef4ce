#include "glhs/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "glhs/errors.hpp"

namespace glhs {

namespace {

constexpr double kDispatchTol = 1e-12;
constexpr double kProfileEdgeOffset = 1e-6;

[[noreturn]] void out_of_support(const SupportInterval& s, double x) {
  std::ostringstream os;
  os.precision(17);
  os << "x = " << x << " outside the support (" << s.x_lo << ", " << s.x_hi << ") for t = " << s.t;
  throw OutOfSupport(os.str());
}

}  // namespace

SupportInterval support(double t) {
  detail::require_negative_time(t);
  const auto [x_lo, x_hi] = support_endpoints(t);
  const CurveGeometry geom = curve_geometry(t);
  const auto top = g_eval(t, std::complex<double>(-0.5, geom.y_t));
  if (std::abs(top.imag()) > 1e-10 * std::abs(top)) {
    std::ostringstream os;
    os << "support: junction value not real for t = " << t << " (Im = " << top.imag() << ")";
    throw InvariantViolation(os.str());
  }
  return {t, x_lo, top.real(), x_hi, geom.y_t, geom.a_t};
}

SpectralMeasure::SpectralMeasure(double t) : support_(glhs::support(t)) {}

double SpectralMeasure::branch_g(double y, Branch branch) const {
  return g_on_curve(support_.t, std::min(y, support_.y_t), branch);
}

std::complex<double> SpectralMeasure::invert(double x) const {
  const auto& s = support_;
  if (!(x > s.x_lo && x < s.x_hi)) out_of_support(s, x);
  const double t = s.t;
  if (std::abs(x - s.x_mid) <= kDispatchTol * s.x_mid) return {-0.5, s.y_t};

  // g_minus increases from x_lo to x_mid and g_plus decreases from x_hi to
  // x_mid as y runs over [0, y_t].
  const Branch branch = x < s.x_mid ? Branch::minus : Branch::plus;
  auto residual = [&](double y) { return branch_g(y, branch) - x; };
  const double at_axis = residual(0.0);
  const double at_top = s.x_mid - x;
  double y = 0;
  if (at_axis == 0 || (at_axis > 0) == (at_top > 0)) {
    // x within rounding of an endpoint value.
    y = std::abs(at_axis) <= std::abs(at_top) ? 0.0 : s.y_t;
  } else {
    y = find_root(residual, Bracket(0.0, s.y_t, at_axis, at_top), 1e-15 * s.y_t);
  }
  std::complex<double> z(branch_x(t, y, branch), y);

  // The curve is vertical near y = y_t, where small changes of y move g a
  // lot; a few complex Newton steps on g(z) = x recover full accuracy there.
  double err = std::abs(g_eval(t, z) - x);
  for (int it = 0; it < 4 && err > 0; ++it) {
    const auto gz = g_eval(t, z);
    const auto step = (gz - x) / (gz * g_log_derivative(t, z));
    const std::complex<double> next(z.real() - step.real(), std::clamp(z.imag() - step.imag(), 0.0, s.y_t));
    const double next_err = std::abs(g_eval(t, next) - x);
    if (!(next_err < err)) break;
    z = next;
    err = next_err;
  }
  return z;
}

double SpectralMeasure::density(double x) const {
  return invert(x).imag() / (std::numbers::pi * x);
}

QuadratureResult SpectralMeasure::integrate_weighted(int power, double a, double b, double tol_rel) const {
  auto integrand = [this, power](double x) { return std::pow(x, power) * invert(x).imag(); };
  return integrate_adaptive_ex(integrand, a, b, tol_rel);
}

QuadratureResult SpectralMeasure::moment_ex(int n, double tol_rel) const {
  if (n < 0) throw DomainError("moment order n must be nonnegative");
  const auto& s = support_;
  // Split at the junction, where the inversion changes branch.
  const auto lower = integrate_weighted(n - 1, s.x_lo, s.x_mid, tol_rel);
  const auto upper = integrate_weighted(n - 1, s.x_mid, s.x_hi, tol_rel);
  return {(lower.value + upper.value) / std::numbers::pi,
          (lower.error_estimate + upper.error_estimate) / std::numbers::pi,
          lower.evaluations + upper.evaluations};
}

double SpectralMeasure::cdf(double x, double tol_rel) const {
  const auto& s = support_;
  if (x <= s.x_lo) return 0.0;
  if (x >= s.x_hi) return 1.0;
  double mass = integrate_weighted(-1, s.x_lo, std::min(x, s.x_mid), tol_rel).value;
  if (x > s.x_mid) mass += integrate_weighted(-1, s.x_mid, x, tol_rel).value;
  return std::clamp(mass / std::numbers::pi, 0.0, 1.0);
}

double SpectralMeasure::quantile(double p) const {
  if (!(p > 0 && p < 1)) throw DomainError("quantile: p must lie in (0, 1)");
  const auto& s = support_;
  auto shifted = [this, p](double x) { return cdf(x) - p; };
  return find_root(shifted, Bracket(s.x_lo, s.x_hi, -p, 1 - p), 1e-13 * s.x_hi);
}

DensityProfile SpectralMeasure::profile(int n_points) const {
  if (n_points < 16) throw DomainError("density_profile: n_points must be at least 16");
  const auto& s = support_;
  const double eps = (s.x_hi - s.x_lo) * kProfileEdgeOffset;
  const double a = s.x_lo + eps;
  const double b = s.x_hi - eps;
  DensityProfile out{s.t, {}, s, ""};
  std::ostringstream grid;
  grid << "cosine, edge offset " << kProfileEdgeOffset << " of support width";
  out.grid = grid.str();
  out.points.reserve(n_points);
  for (int k = 0; k < n_points; ++k) {
    const double x = a + (b - a) * (1 - std::cos(std::numbers::pi * k / (n_points - 1))) / 2;
    out.points.push_back({x, density(x)});
  }
  for (const auto& p : out.points) {
    if (!(p.x > s.x_lo && p.x < s.x_hi) || !(p.rho >= 0)) {
      std::ostringstream os;
      os << "density_profile: invalid point (" << p.x << ", " << p.rho << ")";
      throw InvariantViolation(os.str());
    }
  }
  out.trapezoid_mass = profile_mass(out);
  return out;
}

double profile_mass(const DensityProfile& profile) {
  double mass = 0;
  for (std::size_t i = 1; i < profile.points.size(); ++i) {
    const auto& l = profile.points[i - 1];
    const auto& r = profile.points[i];
    mass += (r.x - l.x) * (l.rho + r.rho) / 2;
  }
  return mass;
}

std::complex<double> invert_g(double t, double x) { return SpectralMeasure(t).invert(x); }
double density_at(double t, double x) { return SpectralMeasure(t).density(x); }
DensityProfile density_profile(double t, int n_points) { return SpectralMeasure(t).profile(n_points); }
double moment_from_density(double t, int n, double tol_rel) { return SpectralMeasure(t).moment(n, tol_rel); }
double cdf(double t, double x) { return SpectralMeasure(t).cdf(x); }
double quantile(double t, double p) { return SpectralMeasure(t).quantile(p); }

}  // namespace glhs
