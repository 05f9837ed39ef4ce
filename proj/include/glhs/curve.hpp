#pragma once

// The Jordan curve gamma_t (t < 0) on which g_t(z) = e^{-t(z+1/2)}(1 + 1/z)
// is real and positive. The curve is the closure of the two branches
//   x_t^{+/-}(y) = -1/2 +/- v_t(y),   v_t(y)^2 = 1/4 - y^2 - y cot(ty),
// for |y| <= y_t, where y_t is the first root of f_t(y) = -1 and
// f_t(y) = 2y sin(ty) + cos(ty) is the gate function (|f_t| <= 1 iff the
// radicand is nonnegative).
//
// The pointwise formulas are templates on the scalar type so that they can
// be evaluated in extended precision; root-finding and assembly are double.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "glhs/errors.hpp"

namespace glhs {

enum class Branch { minus = -1, plus = 1 };

constexpr int sign_of(Branch b) { return static_cast<int>(b); }

namespace detail {

template <class Scalar>
void require_negative_time(Scalar t) {
  if (!(t < 0)) throw DomainError("t must be negative");
}

/// y * cot(t y) with the finite limit 1/t at y = 0.
template <class Scalar>
Scalar y_cot_ty(Scalar t, Scalar y) {
  using std::abs, std::cos, std::sin;
  const Scalar u = t * y;
  if (abs(u) < Scalar(1e-4)) {
    return 1 / t - t * y * y / 3 - t * t * t * y * y * y * y / 45;
  }
  return y * cos(u) / sin(u);
}

/// y / sin(t y) with the limit 1/t at y = 0.
template <class Scalar>
Scalar y_over_sin_ty(Scalar t, Scalar y) {
  using std::sin;
  if (y == 0) return 1 / t;
  return y / sin(t * y);
}

/// sin(x) - x without cancellation for small x.
template <class Scalar>
Scalar sin_minus_identity(Scalar x) {
  using std::abs, std::sin;
  if (abs(x) < Scalar(0.1)) {
    const Scalar x2 = x * x;
    // -x^3/3! + x^5/5! - x^7/7! + x^9/9! - x^11/11! + x^13/13!
    Scalar series = Scalar(1) / 6227020800;
    series = Scalar(-1) / 39916800 + x2 * series;
    series = Scalar(1) / 362880 + x2 * series;
    series = Scalar(-1) / 5040 + x2 * series;
    series = Scalar(1) / 120 + x2 * series;
    series = Scalar(-1) / 6 + x2 * series;
    return x * x2 * series;
  }
  return sin(x) - x;
}

template <class Scalar>
void require_gate_domain(Scalar t, Scalar y) {
  using std::abs;
  if (!(abs(t * y) < std::numbers::pi_v<Scalar>)) {
    std::ostringstream os;
    os << "y = " << y << " outside (pi/t, -pi/t) for t = " << t;
    throw DomainError(os.str());
  }
}

/// Radicand 1/4 - y^2 - y cot(ty), evaluated through the factorization
/// (1/2 - y cot(ty/2)) (1/2 + y tan(ty/2)) = (1 - f_t^2) / (4 sin^2(ty)),
/// which has no cancellation at y = 0 and isolates the zero at y = y_t in
/// the second factor.
template <class Scalar>
Scalar half_width_squared(Scalar t, Scalar y) {
  using std::tan;
  const Scalar half = Scalar(1) / 2;
  const Scalar outer = half - 2 * y_cot_ty(t, y / 2);
  const Scalar inner = half + y * tan(t * y / 2);
  return outer * inner;
}

}  // namespace detail

/// Gate function f_t(y) = 2y sin(ty) + cos(ty) on (pi/t, -pi/t).
template <class Scalar>
Scalar f_osc(Scalar t, Scalar y) {
  using std::cos, std::sin;
  detail::require_negative_time(t);
  detail::require_gate_domain(t, y);
  return 2 * y * sin(t * y) + cos(t * y);
}

/// f_t'(y) = 2 sin(ty)[ty cot(ty) - (t-2)/2], expanded to
/// (2 - t) sin(ty) + 2ty cos(ty) so that y = 0 needs no limit.
template <class Scalar>
Scalar f_osc_deriv(Scalar t, Scalar y) {
  using std::cos, std::sin;
  detail::require_negative_time(t);
  if (!(y >= 0 && -t * y < std::numbers::pi_v<Scalar>)) {
    std::ostringstream os;
    os << "f_osc_deriv: y = " << y << " outside [0, -pi/t) for t = " << t;
    throw DomainError(os.str());
  }
  const Scalar u = t * y;
  return (2 - t) * sin(u) + 2 * u * cos(u);
}

/// v_t(y) = sqrt(1/4 - y^2 - y cot(ty)), zero exactly at |y| = y_t.
template <class Scalar>
Scalar half_width(Scalar t, Scalar y) {
  using std::sqrt;
  detail::require_negative_time(t);
  detail::require_gate_domain(t, y);
  const Scalar radicand = detail::half_width_squared(t, y);
  if (radicand < 0) {
    // Rounding just above y_t.
    if (radicand > -64 * std::numeric_limits<Scalar>::epsilon()) return 0;
    std::ostringstream os;
    os << "half_width: |y| = " << y << " exceeds the half-height for t = " << t;
    throw DomainError(os.str());
  }
  return sqrt(radicand);
}

/// x_t^{+/-}(y) = -1/2 +/- v_t(y).
template <class Scalar>
Scalar branch_x(Scalar t, Scalar y, Branch branch) {
  return Scalar(-0.5) + sign_of(branch) * half_width(t, y);
}

/// d/dy x_t^{+/-}(y) = -/+ (4y sin^2(ty) + sin(2ty) - 2ty) / (4 sin^2(ty) v_t(y))
/// on the open interval (0, y_t).
template <class Scalar>
Scalar branch_x_deriv(Scalar t, Scalar y, Branch branch) {
  using std::sin;
  if (!(y > 0)) throw DomainError("branch_x_deriv: requires y > 0 (the limit at 0 is 0)");
  const Scalar v = half_width(t, y);
  if (!(v > 0)) throw DomainError("branch_x_deriv: diverges at y = y_t");
  const Scalar u = t * y;
  const Scalar s = sin(u);
  const Scalar numerator = 4 * y * s * s + detail::sin_minus_identity(2 * u);
  return -sign_of(branch) * numerator / (4 * s * s * v);
}

/// g_t(z) = e^{-t(z + 1/2)} (1 + 1/z).
template <class Scalar>
std::complex<Scalar> g_eval(Scalar t, std::complex<Scalar> z) {
  using std::exp;
  if (z == std::complex<Scalar>(0)) throw PoleAtOrigin("g_eval: z = 0 is a pole");
  const Scalar half = Scalar(1) / 2;
  return exp(-t * (z + half)) * (Scalar(1) + Scalar(1) / z);
}

/// d/dz log g_t(z) = -t - 1/(z(z + 1)).
template <class Scalar>
std::complex<Scalar> g_log_derivative(Scalar t, std::complex<Scalar> z) {
  return -t - Scalar(1) / (z * (z + Scalar(1)));
}

/// g_t on the curve through the all-real form
///   g = (y / sin(ty)) e^{-t(x+1/2)} / (y cot(ty) + x),
/// with y cot(ty) + x = -(x^2 + y^2) on gamma_t. Accepts 0 <= y <= y_t.
template <class Scalar>
Scalar g_on_curve(Scalar t, Scalar y, Branch branch) {
  using std::exp;
  const Scalar v = half_width(t, y);
  const Scalar x = Scalar(-0.5) + sign_of(branch) * v;
  return -detail::y_over_sin_ty(t, y) * exp(-t * sign_of(branch) * v) / (x * x + y * y);
}

/// Left side of g_t(z) in R: y cos(ty) + (x^2 + y^2 + x) sin(ty).
template <class Scalar>
Scalar const1_residual(Scalar t, Scalar x, Scalar y) {
  using std::cos, std::sin;
  return y * cos(t * y) + (x * x + y * y + x) * sin(t * y);
}

/// -y^2 - y cot(ty) - x^2 - x, zero on gamma_t.
template <class Scalar>
Scalar const2_residual(Scalar t, Scalar x, Scalar y) {
  return -y * y - detail::y_cot_ty(t, y) - x * x - x;
}

/// a_t: the stationary point of f_t in [-pi/(2t), -pi/t).
double critical_point(double t);

/// y_t: the root of f_t(y) = -1 in (0, a_t).
double half_height(double t);

/// The pair (a_t, y_t) computed once.
struct CurveGeometry {
  double t;
  double a_t;
  double y_t;
};

CurveGeometry curve_geometry(double t);

struct CurveSample {
  double y;
  double x_minus;
  double x_plus;
  double g_minus;
  double g_plus;
};

struct CurveJunction {
  double y;  // y_t
  double x;  // -1/2
  double g_mid;
};

/// Upper half (y >= 0) of gamma_t; the lower half is the mirror image.
struct CurveModel {
  double t;
  double y_t;
  double a_t;
  std::vector<CurveSample> samples;
  CurveJunction junction;
};

/// Samples gamma_t on a cosine-clustered grid of [0, y_t] and validates the
/// model; throws InvariantViolation naming the first failing sample.
CurveModel build_curve(double t, int n_samples);

/// Re-checks every CurveModel invariant; throws InvariantViolation.
void validate_curve(const CurveModel& model);

}  // namespace glhs
