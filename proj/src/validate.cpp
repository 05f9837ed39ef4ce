#include "glhs/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "glhs/curve.hpp"
#include "glhs/density.hpp"
#include "glhs/errors.hpp"
#include "glhs/moments.hpp"

namespace glhs {

namespace {

constexpr int kMaxOrder = 8;
constexpr int kCurveSamples = 1000;

CheckResult check(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

std::vector<CheckResult> run_validation(double t) {
  detail::require_negative_time(t);
  std::vector<CheckResult> out;

  const SpectralMeasure measure(t);
  double contour_err = 0;
  double density_err = 0;
  for (int n = 0; n <= kMaxOrder; ++n) {
    const double closed = moment_closed_form(n, t);
    if (n > 0) contour_err = std::max(contour_err, relative(moment_contour_auto(n, t), closed));
    density_err = std::max(density_err, relative(measure.moment(n), closed));
  }
  out.push_back(check("moments: contour vs closed form (n<=8, rel)", contour_err, 1e-10));
  out.push_back(check("moments: density vs closed form (n<=8, rel)", density_err, 1e-7));

  const auto& s = measure.support();
  out.push_back(check("support: |x_lo * x_hi - 1|", std::abs(s.x_lo * s.x_hi - 1), 1e-12));

  const bool chain = 0 < s.y_t && s.y_t < s.a_t && s.a_t < -std::numbers::pi / t;
  out.push_back(check("roots: 0 < y_t < a_t < -pi/t", chain ? 0.0 : 1.0, 0.0));
  const double residual =
      std::max(std::abs(f_osc(t, s.y_t) + 1), std::abs(f_osc_deriv(t, s.a_t)));
  out.push_back(check("roots: |f(y_t) + 1|, |f'(a_t)|", residual, 1e-12));

  CurveModel model;
  try {
    model = build_curve(t, kCurveSamples);
  } catch (const InvariantViolation& e) {
    out.push_back({"curve: build and invariants", false, 1.0, 0.0, e.what()});
    return out;
  }
  double reality = 0;
  double const2 = 0;
  double gate = 0;
  for (const auto& p : model.samples) {
    for (const double x : {p.x_minus, p.x_plus}) {
      const auto g = g_eval(t, std::complex<double>(x, p.y));
      reality = std::max(reality, std::abs(g.imag()) / (1 + std::abs(g)));
      const2 = std::max(const2, std::abs(const2_residual(t, x, p.y)));
    }
    if (p.y > 0 && p.y < model.y_t) {
      const double v = half_width(t, p.y);
      const double sn = std::sin(t * p.y);
      const double f = f_osc(t, p.y);
      gate = std::max(gate, std::abs(4 * sn * sn * v * v + f * f - 1));
    }
  }
  out.push_back(check("curve: |Im g| / (1 + |g|) on samples", reality, 1e-10));
  out.push_back(check("curve: Const2 residual", const2, 1e-10));
  out.push_back(check("curve: |4 sin^2 v^2 + f^2 - 1|", gate, 1e-12));

  std::size_t violations = 0;
  for (std::size_t i = 1; i < model.samples.size(); ++i) {
    const auto& a = model.samples[i - 1];
    const auto& b = model.samples[i];
    if (!(b.g_minus > a.g_minus) || !(b.g_plus < a.g_plus)) ++violations;
  }
  std::ostringstream detail;
  detail << model.samples.size() << " samples";
  out.push_back(check("curve: g_minus increasing, g_plus decreasing", static_cast<double>(violations), 0.0,
                      detail.str()));
  return out;
}

}  // namespace glhs
