#pragma once

// Scalar numerics shared by the analytic modules: bracketed root finding,
// equal-spaced periodic quadrature and adaptive Gauss-Kronrod quadrature.
// Boost.Math supplies the TOMS 748 solver and the quadrature nodes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "glhs/errors.hpp"

namespace glhs {

inline constexpr double kRootTolAbs = 1e-14;
inline constexpr double kQuadTolRel = 1e-10;
inline constexpr std::uintmax_t kRootMaxIter = 200;
inline constexpr std::uint64_t kQuadMaxEvals = 1'000'000;

/// Interval [lo, hi] whose endpoint values have strictly opposite signs.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;

  Bracket(double lo_, double hi_, double f_lo_, double f_hi_)
      : lo(lo_), hi(hi_), f_lo(f_lo_), f_hi(f_hi_) {
    if (!(lo < hi)) {
      std::ostringstream os;
      os << "bracket requires lo < hi, got [" << lo << ", " << hi << "]";
      throw InvalidBracket(os.str());
    }
    if (!((f_lo < 0 && f_hi > 0) || (f_lo > 0 && f_hi < 0))) {
      std::ostringstream os;
      os << "no sign change on [" << lo << ", " << hi << "]: f = (" << f_lo
         << ", " << f_hi << ")";
      throw InvalidBracket(os.str());
    }
  }

  template <class F>
  static Bracket make(F&& f, double lo, double hi) {
    return Bracket(lo, hi, f(lo), f(hi));
  }
};

/// Bracket-safe root of a continuous scalar function (TOMS 748: bisection
/// safeguarded cubic / inverse-quadratic steps). The returned r has a sign
/// change of f inside [r - tol_abs, r + tol_abs] and lies in [lo, hi].
template <class F>
double find_root(F&& f, const Bracket& bracket, double tol_abs = kRootTolAbs) {
  if (!(tol_abs > 0)) throw DomainError("find_root: tol_abs must be positive");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto done = [tol_abs](double a, double b) {
    const double width = b - a;
    const double floor = 4 * eps * std::max(std::abs(a), std::abs(b));
    return width <= 2 * tol_abs || width <= floor;
  };
  std::uintmax_t iters = kRootMaxIter;
  auto wrapped = [&f](double x) {
    const double v = f(x);
    if (std::isnan(v)) throw NoConvergence("find_root: function returned NaN");
    return v;
  };
  const auto [a, b] = boost::math::tools::toms748_solve(
      wrapped, bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi, done, iters);
  if (iters >= kRootMaxIter && !done(a, b)) {
    std::ostringstream os;
    os << "find_root: no convergence after " << kRootMaxIter
       << " iterations, bracket [" << a << ", " << b << "]";
    throw NoConvergence(os.str());
  }
  return std::clamp(a + (b - a) / 2, bracket.lo, bracket.hi);
}

/// Trapezoidal sum over one period, nodes at theta_k = k * period / nodes.
template <class F>
std::complex<double> integrate_periodic(F&& f, double period, int nodes) {
  if (nodes < 8) throw DomainError("integrate_periodic: need at least 8 nodes");
  const double h = period / nodes;
  std::complex<double> sum{0.0, 0.0};
  for (int k = 0; k < nodes; ++k) sum += std::complex<double>(f(k * h));
  return sum * h;
}

struct QuadratureResult {
  double value;
  double error_estimate;
  std::uint64_t evaluations;
};

namespace detail {

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

/// G7/K15 on [a, b]; the error estimate is |K15 - G7|.
template <class F>
Panel gauss_kronrod_panel(F& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = (a + b) / 2;
  const double half = (b - a) / 2;
  const double centre = f(mid);
  double kronrod = centre * wk[0];
  double gauss = centre * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = f(mid - half * x[i]) + f(mid + half * x[i]);
    kronrod += pair * wk[i];
    if (i % 2 == 0) gauss += pair * wg[i / 2];
  }
  return {a, b, kronrod * half, std::abs(kronrod - gauss) * half};
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod quadrature: the panel with the
/// largest error estimate is bisected until the summed estimate is below
/// tol_rel * |value|. Gauss-Kronrod nodes are interior, so f is never
/// evaluated at a or b, which handles integrable endpoint singularities
/// without a change of variables.
template <class F>
QuadratureResult integrate_adaptive_ex(F&& f, double a, double b,
                                       double tol_rel = kQuadTolRel,
                                       std::uint64_t max_evals = kQuadMaxEvals) {
  if (!(a < b)) throw DomainError("integrate_adaptive: requires a < b");
  if (!(tol_rel > 0)) throw DomainError("integrate_adaptive: tol_rel must be positive");
  std::uint64_t evals = 0;
  auto counted = [&](double x) {
    if (++evals > max_evals) {
      std::ostringstream os;
      os << "integrate_adaptive: evaluation budget " << max_evals
         << " exceeded on [" << a << ", " << b << "]";
      throw NoConvergence(os.str());
    }
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrate_adaptive: integrand not finite at x = " << x;
      throw NoConvergence(os.str());
    }
    return v;
  };
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto splittable = [](const detail::Panel& p) {
    return (p.b - p.a) > 64 * eps * std::max(std::abs(p.a), std::abs(p.b));
  };

  std::priority_queue<detail::Panel> open;
  std::vector<detail::Panel> closed;
  auto first = detail::gauss_kronrod_panel(counted, a, b);
  double value = first.value;
  double error = first.error;
  open.push(first);
  while (!open.empty() && error > tol_rel * std::abs(value)) {
    const detail::Panel worst = open.top();
    open.pop();
    if (!splittable(worst)) {
      closed.push_back(worst);
      continue;
    }
    const double mid = worst.a + (worst.b - worst.a) / 2;
    const auto left = detail::gauss_kronrod_panel(counted, worst.a, mid);
    const auto right = detail::gauss_kronrod_panel(counted, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
  }
  // Re-sum from the panels to drop the drift of the running totals.
  value = 0;
  error = 0;
  for (; !open.empty(); open.pop()) closed.push_back(open.top());
  std::sort(closed.begin(), closed.end(),
            [](const detail::Panel& l, const detail::Panel& r) { return l.a < r.a; });
  for (const auto& p : closed) {
    value += p.value;
    error += p.error;
  }
  return {value, error, evals};
}

template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol_rel = kQuadTolRel) {
  return integrate_adaptive_ex(std::forward<F>(f), a, b, tol_rel).value;
}

}  // namespace glhs
