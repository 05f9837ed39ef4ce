#include "glhs/moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "glhs/density.hpp"
#include "glhs/errors.hpp"
#include "glhs/numerics.hpp"

namespace glhs {

namespace {

void require_order(int n) {
  if (n < 0) throw DomainError("moment order n must be nonnegative");
}

// log C(n, k+1) via log-gamma.
double log_binomial_shifted(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 2.0) - std::lgamma(static_cast<double>(n - k));
}

double log_term(int n, int k, double t) {
  const double log_tn = std::log(-t * n);
  return k * log_tn - std::lgamma(k + 1.0) + log_binomial_shifted(n, k);
}

}  // namespace

std::string_view to_string(MomentMethod method) {
  switch (method) {
    case MomentMethod::closed_form: return "closed-form";
    case MomentMethod::contour: return "contour";
    case MomentMethod::density: return "density";
  }
  return "unknown";
}

MomentMethod parse_moment_method(std::string_view name) {
  if (name == "closed-form" || name == "closed_form") return MomentMethod::closed_form;
  if (name == "contour") return MomentMethod::contour;
  if (name == "density") return MomentMethod::density;
  throw DomainError("unknown moment method '" + std::string(name) + "'");
}

double log_moment(int n, double t) {
  require_order(n);
  if (t > 0) throw DomainError("log_moment requires t <= 0");
  if (n == 0 || t == 0) return 0.0;
  double peak = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) peak = std::max(peak, log_term(n, k, t));
  double scaled = 0;
  for (int k = 0; k < n; ++k) scaled += std::exp(log_term(n, k, t) - peak);
  return -n * t / 2 - std::log(static_cast<double>(n)) + peak + std::log(scaled);
}

ClosedFormMoment moment_closed_form_checked(int n, double t) {
  require_order(n);
  if (n == 0 || t == 0) return {1.0, 1.0, false};
  if (t < 0) {
    const double log_m = log_moment(n, t);
    if (log_m > std::log(std::numeric_limits<double>::max())) {
      std::ostringstream os;
      os << "m_" << n << "(" << t << ") overflows double: log value " << log_m;
      throw Overflow(os.str(), log_m);
    }
    return {std::exp(log_m), 1.0, false};
  }
  // t > 0: alternating terms, magnitudes in log space then a compensated
  // sum relative to the largest term.
  double peak = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) peak = std::max(peak, log_term(n, k, -t));
  double sum = 0;
  double carry = 0;
  double abs_sum = 0;
  for (int k = 0; k < n; ++k) {
    const double mag = std::exp(log_term(n, k, -t) - peak);
    const double term = (k % 2 == 0) ? mag : -mag;
    abs_sum += mag;
    const double next = sum + term;
    carry += (std::abs(sum) >= std::abs(term)) ? (sum - next) + term : (term - next) + sum;
    sum = next;
  }
  sum += carry;
  const double condition = sum == 0 ? std::numeric_limits<double>::infinity() : abs_sum / std::abs(sum);
  const double value = sum * std::exp(-n * t / 2 - std::log(static_cast<double>(n)) + peak);
  return {value, condition, condition > 1e6};
}

double moment_closed_form(int n, double t) { return moment_closed_form_checked(n, t).value; }

double moment_contour(int n, double t, double radius, int nodes) {
  if (n < 1) throw DomainError("moment_contour requires n >= 1");
  if (!(radius > 0)) throw DomainError("moment_contour requires radius > 0");
  if (nodes < 32) throw DomainError("moment_contour requires at least 32 nodes");
  // dz = i z dtheta; the exponent is assembled in log form so that
  // (1 + 1/z)^n and e^{-ntz} never overflow separately.
  const double nd = n;
  const double log_scale = -nd * t / 2 - std::log(2 * std::numbers::pi * nd);
  auto integrand = [&](double theta) {
    const std::complex<double> z = std::polar(radius, theta);
    const std::complex<double> w = nd * std::log(1.0 + 1.0 / z) - nd * t * z + std::log(z) + log_scale;
    return std::exp(w);
  };
  const std::complex<double> raw = integrate_periodic(integrand, 2 * std::numbers::pi, nodes);
  if (std::abs(raw.imag()) > 1e-10 * (1 + std::abs(raw.real()))) {
    std::ostringstream os;
    os << "moment_contour: imaginary residual " << raw.imag() << " for n=" << n << ", t=" << t
       << ", radius=" << radius << ", nodes=" << nodes;
    throw NonRealResult(os.str());
  }
  return raw.real();
}

double moment_contour_auto(int n, double t, double radius, int nodes) {
  constexpr int kMaxNodes = 1 << 16;
  double previous = moment_contour(n, t, radius, nodes);
  double last_change = std::numeric_limits<double>::infinity();
  while (nodes < kMaxNodes) {
    nodes *= 2;
    const double current = moment_contour(n, t, radius, nodes);
    const double change = std::abs(current - previous);
    if (change <= 1e-14 * std::abs(current) || change >= last_change) return current;
    last_change = change;
    previous = current;
  }
  return previous;
}

MomentTable moment_table(int n_max, double t, MomentMethod method) {
  if (n_max < 1) throw DomainError("moment_table requires n_max >= 1");
  MomentTable table{t, {}, method};
  table.values.reserve(n_max + 1);
  table.values.push_back({0, 1.0});
  switch (method) {
    case MomentMethod::closed_form:
      for (int n = 1; n <= n_max; ++n) table.values.push_back({n, moment_closed_form(n, t)});
      break;
    case MomentMethod::contour:
      for (int n = 1; n <= n_max; ++n) table.values.push_back({n, moment_contour_auto(n, t)});
      break;
    case MomentMethod::density: {
      const SpectralMeasure measure(t);
      for (int n = 1; n <= n_max; ++n) table.values.push_back({n, measure.moment(n)});
      break;
    }
  }
  return table;
}

}  // namespace glhs
