// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "glhs/curve.hpp"
#include "glhs/density.hpp"
#include "glhs/errors.hpp"
#include "glhs/moments.hpp"
#include "glhs/simulate.hpp"

using namespace glhs;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome moment_triangle() {
  double worst_contour = 0, worst_density = 0, worst_anchor = 0;
  for (double t : {-0.25, -1.0, -2.0, -4.0}) {
    for (int n = 0; n <= 8; ++n) {
      const double cf = moment_closed_form(n, t);
      const double ct = n == 0 ? 1.0 : moment_contour_auto(n, t);
      const double de = n == 0 ? SpectralMeasure(t).moment(0) : moment_from_density(t, n);
      worst_contour = std::max(worst_contour, rel(ct, cf));
      worst_density = std::max(worst_density, rel(de, cf));
    }
  }
  worst_anchor = std::max({rel(moment_closed_form(1, -1), std::exp(0.5)),
                           rel(moment_closed_form(2, -1), 2 * std::numbers::e),
                           rel(moment_closed_form(3, -1), 5.5 * std::exp(1.5))});
  return {worst_contour <= 1e-10 && worst_density <= 1e-7 && worst_anchor <= 1e-14,
          fmt("contour %.2e, density %.2e, anchors %.2e", worst_contour, worst_density, worst_anchor)};
}

Outcome support_identity() {
  using Float50 = boost::multiprecision::cpp_bin_float_50;
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    const auto s = support(-8 + k * (8 - 0.01) / 49);
    worst = std::max(worst, std::abs(s.x_lo * s.x_hi - 1));
  }
  const Float50 t = -1;
  const Float50 root = sqrt(Float50(0.25) - 1 / t);
  auto g = [&](Float50 x) { return exp(-t * (x + Float50(0.5))) * (1 + 1 / x); };
  const double lo50 = static_cast<double>(g(Float50(-0.5) - root));
  const double hi50 = static_cast<double>(g(Float50(-0.5) + root));
  const auto s = support(-1);
  const bool anchors = std::abs(s.x_lo - lo50) <= 1e-4 && std::abs(s.x_hi - hi50) <= 1e-4 &&
                       std::abs(s.x_lo - 0.12487) <= 1e-4 && std::abs(s.x_hi - 8.0081) <= 1e-4;
  return {worst <= 1e-12 && anchors,
          fmt("max |x_lo x_hi - 1| = %.2e, x_lo = %.6f, x_hi = %.5f", worst, s.x_lo, s.x_hi)};
}

Outcome curve_validity() {
  double c1 = 0, c2 = 0, gate = 0;
  bool positive = true, monotone = true;
  for (double t : {-0.25, -1.0, -4.0}) {
    const auto model = build_curve(t, 1000);
    for (std::size_t i = 0; i < model.samples.size(); ++i) {
      const auto& s = model.samples[i];
      for (double x : {s.x_minus, s.x_plus}) {
        c1 = std::max(c1, std::abs(const1_residual(t, x, s.y)));
        c2 = std::max(c2, std::abs(const2_residual(t, x, s.y)));
      }
      const double v = half_width(t, s.y);
      const double sn = std::sin(t * s.y);
      const double f = f_osc(t, s.y);
      gate = std::max(gate, std::abs(4 * sn * sn * v * v + f * f - 1));
      positive = positive && s.g_minus > 0 && s.g_plus > 0;
      if (i > 0) {
        monotone = monotone && s.g_minus > model.samples[i - 1].g_minus &&
                   s.g_plus < model.samples[i - 1].g_plus;
      }
    }
  }
  return {c1 <= 1e-10 && c2 <= 1e-10 && gate <= 1e-12 && positive && monotone,
          fmt("Const1 %.2e, Const2 %.2e, gate %.2e", c1, c2, gate) + (positive ? "" : ", non-positive g") +
              (monotone ? "" : ", monotonicity broken")};
}

Outcome root_brackets() {
  double worst = 0;
  bool ordered = true;
  for (int k = 0; k < 100; ++k) {
    const double t = -10 + k * (10 - 0.01) / 99;
    const auto geo = curve_geometry(t);
    ordered = ordered && 0 < geo.y_t && geo.y_t < geo.a_t && geo.a_t < -std::numbers::pi / t;
    worst = std::max({worst, std::abs(f_osc(t, geo.y_t) + 1), std::abs(f_osc_deriv(t, geo.a_t))});
  }
  return {ordered && worst <= 1e-12, fmt("max residual %.2e", worst) + (ordered ? "" : ", bracket chain broken")};
}

Outcome finite_dimensional_limit() {
  auto run = [](int dim) {
    SimConfig cfg;
    cfg.t = -1;
    cfg.dim = dim;
    cfg.steps = 512;
    cfg.reps = 50;
    cfg.seed = 42;
    cfg.n_max = 3;
    cfg.integrator = Integrator::ito_euler;
    return empirical_vs_limit(simulate(cfg));
  };
  const auto big = run(256);
  const auto small = run(64);
  bool within = true, not_growing = true;
  std::string detail;
  for (std::size_t i = 0; i < big.rows.size(); ++i) {
    const auto& b = big.rows[i];
    const auto& s = small.rows[i];
    within = within && b.within;
    const double disc_b = std::abs(b.mean - b.limit);
    const double disc_s = std::abs(s.mean - s.limit);
    not_growing = not_growing && disc_b <= disc_s + 3 * std::hypot(b.std_error, s.std_error);
    detail += fmt("n=%.0f: |diff| %.4f (allow %.4f) ", b.n, disc_b, b.allowance) +
              fmt("d=64 |diff| %.4f; ", disc_s);
  }
  return {within && not_growing, detail + (not_growing ? "" : "discrepancy grows with d")};
}

Outcome degenerate_limit() {
  const double t = -1e-3;
  const auto s = support(t);
  const double m1 = moment_from_density(t, 1);
  const double err = std::abs(m1 - std::exp(-t / 2));
  return {s.x_lo >= 0.9 && s.x_hi <= 1.1 && err <= 1e-4,
          fmt("support [%.6f, %.6f], |m_1 - e^{-t/2}| = %.2e", s.x_lo, s.x_hi, err)};
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  status = ::pclose(pipe);
  return out;
}

Outcome determinism() {
  const std::string flags = " simulate --t -1 --dim 48 --reps 12 --seed 42 2>/dev/null";
  int s1 = 0, s4 = 0;
  const auto one = capture(std::string("GLHS_THREADS=1 ") + GLHS_CLI_PATH + flags, s1);
  const auto four = capture(std::string("GLHS_THREADS=4 ") + GLHS_CLI_PATH + flags, s4);
  const bool ok = s1 == 0 && s4 == 0 && !one.empty() && one == four;
  return {ok, fmt("%.0f bytes, identical: ", static_cast<double>(one.size())) + (one == four ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "moment triangle", 30, moment_triangle},
      {2, "support identity", 1, support_identity},
      {3, "curve validity", 5, curve_validity},
      {4, "root brackets", 2, root_brackets},
      {5, "finite-d limit", 300, finite_dimensional_limit},
      {6, "degenerate-limit continuity", 5, degenerate_limit},
      {7, "determinism", 60, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = outcome.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s %d %s: %s [%.2f s of %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name, outcome.detail.c_str(),
                secs, c.budget_seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
