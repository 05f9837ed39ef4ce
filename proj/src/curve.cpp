#include "glhs/curve.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "glhs/numerics.hpp"

namespace glhs {

namespace {

// Tightest tolerance find_root accepts; the bracket then shrinks to a few ulps.
constexpr double kFullPrecision = std::numeric_limits<double>::min();

double f_osc_unchecked(double t, double y) { return 2 * y * std::sin(t * y) + std::cos(t * y); }

double f_osc_deriv_unchecked(double t, double y) {
  const double u = t * y;
  return (2 - t) * std::sin(u) + 2 * u * std::cos(u);
}

double half_height_given(double t, double a_t) {
  auto shifted = [t](double y) { return f_osc_unchecked(t, y) + 1; };
  return find_root(shifted, Bracket::make(shifted, 0.0, a_t), kFullPrecision);
}

[[noreturn]] void fail(const CurveModel& model, std::size_t index, const std::string& what) {
  std::ostringstream os;
  os.precision(17);
  os << "curve t=" << model.t << ": " << what;
  if (index < model.samples.size()) {
    const auto& s = model.samples[index];
    os << " at sample " << index << " (y=" << s.y << ", x-=" << s.x_minus << ", x+=" << s.x_plus
       << ", g-=" << s.g_minus << ", g+=" << s.g_plus << ")";
  }
  throw InvariantViolation(os.str());
}

}  // namespace

double critical_point(double t) {
  detail::require_negative_time(t);
  // f_t' = -(2 - t) < 0 at y = -pi/(2t) and 2 pi > 0 at y = -pi/t.
  auto deriv = [t](double y) { return f_osc_deriv_unchecked(t, y); };
  const double lo = -std::numbers::pi / (2 * t);
  const double hi = -std::numbers::pi / t;
  return find_root(deriv, Bracket::make(deriv, lo, hi), kFullPrecision);
}

double half_height(double t) { return half_height_given(t, critical_point(t)); }

CurveGeometry curve_geometry(double t) {
  const double a_t = critical_point(t);
  return {t, a_t, half_height_given(t, a_t)};
}

CurveModel build_curve(double t, int n_samples) {
  detail::require_negative_time(t);
  if (n_samples < 16) throw DomainError("build_curve: n_samples must be at least 16");
  const CurveGeometry geom = curve_geometry(t);

  CurveModel model;
  model.t = t;
  model.a_t = geom.a_t;
  model.y_t = geom.y_t;
  model.samples.reserve(n_samples);
  const int last = n_samples - 1;
  for (int k = 0; k < n_samples; ++k) {
    const double y =
        (k == last) ? geom.y_t : geom.y_t * (1 - std::cos(std::numbers::pi * k / last)) / 2;
    CurveSample s{y, -0.5, -0.5, 0.0, 0.0};
    if (k < last) {
      s.x_minus = branch_x(t, y, Branch::minus);
      s.x_plus = branch_x(t, y, Branch::plus);
      s.g_minus = g_on_curve(t, y, Branch::minus);
      s.g_plus = g_on_curve(t, y, Branch::plus);
    } else {
      // The curve closes at the top: v_t(y_t) = 0.
      s.g_minus = s.g_plus = -detail::y_over_sin_ty(t, y) / (0.25 + y * y);
    }
    model.samples.push_back(s);
  }
  model.junction = {geom.y_t, -0.5, model.samples.back().g_minus};
  validate_curve(model);
  return model;
}

void validate_curve(const CurveModel& model) {
  const double t = model.t;
  const std::size_t none = model.samples.size();
  if (!(0 < model.y_t && model.y_t < model.a_t && model.a_t < -std::numbers::pi / t)) {
    fail(model, none, "bracket chain 0 < y_t < a_t < -pi/t violated");
  }
  if (model.samples.empty()) fail(model, none, "no samples");
  for (std::size_t i = 0; i < model.samples.size(); ++i) {
    const auto& s = model.samples[i];
    const bool at_top = s.y == model.y_t;
    if (s.y < 0 || s.y > model.y_t) fail(model, i, "y outside [0, y_t]");
    if (at_top) {
      if (s.x_minus != -0.5 || s.x_plus != -0.5) fail(model, i, "branches do not meet at -1/2");
      if (s.g_minus != model.junction.g_mid || s.g_plus != model.junction.g_mid) {
        fail(model, i, "junction value mismatch");
      }
    } else if (!(s.x_minus < -0.5 && -0.5 < s.x_plus)) {
      fail(model, i, "branch ordering x- < -1/2 < x+ violated");
    }
    if (!(s.g_minus > 0 && s.g_plus > 0)) fail(model, i, "g not positive");
    for (const auto& [x, g] : {std::pair{s.x_minus, s.g_minus}, std::pair{s.x_plus, s.g_plus}}) {
      if (std::abs(const2_residual(t, x, s.y)) > 1e-10) fail(model, i, "Const2 residual above 1e-10");
      const auto exact = g_eval(t, std::complex<double>(x, s.y));
      if (std::abs(exact.imag()) > 1e-10 * (1 + std::abs(exact))) fail(model, i, "g not real on curve");
    }
    if (i > 0) {
      const auto& prev = model.samples[i - 1];
      if (!(s.y > prev.y)) fail(model, i, "y grid not increasing");
      if (!(s.g_minus > prev.g_minus)) fail(model, i, "g_minus not strictly increasing");
      if (!(s.g_plus < prev.g_plus)) fail(model, i, "g_plus not strictly decreasing");
    }
  }
  if (model.samples.back().y != model.y_t) fail(model, none, "last sample is not the junction");
}

}  // namespace glhs
