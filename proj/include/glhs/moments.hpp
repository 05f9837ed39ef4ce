#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace glhs {

enum class MomentMethod { closed_form, contour, density };

std::string_view to_string(MomentMethod method);
/// Accepts "closed-form"/"closed_form", "contour", "density".
MomentMethod parse_moment_method(std::string_view name);

struct MomentEntry {
  int n;
  double m;
};

/// m_0..m_{n_max} at a fixed time parameter.
struct MomentTable {
  double t;
  std::vector<MomentEntry> values;
  MomentMethod method;
};

/// Closed-form sum with its cancellation diagnostics. `condition` is
/// sum(|terms|) / |sum(terms)|; it is 1 for t <= 0 where all terms are positive.
struct ClosedFormMoment {
  double value;
  double condition;
  bool ill_conditioned;  // condition > 1e6
};

/// log m_n(t) for t <= 0, evaluated by log-sum-exp over the positive terms.
double log_moment(int n, double t);

/// m_n(t) = e^{-nt/2}/n * sum_{k<n} (-tn)^k/k! * C(n, k+1), m_0 = 1.
/// Throws Overflow when the value exceeds the double range.
double moment_closed_form(int n, double t);
ClosedFormMoment moment_closed_form_checked(int n, double t);

/// e^{-nt/2}/(2 pi i n) * contour integral of e^{-ntz}(1 + 1/z)^n dz over |z| = radius,
/// by the trapezoidal rule with a fixed node count.
double moment_contour(int n, double t, double radius, int nodes);

/// moment_contour with node doubling until the value plateaus.
double moment_contour_auto(int n, double t, double radius = 0.5, int nodes = 256);

MomentTable moment_table(int n_max, double t, MomentMethod method);

}  // namespace glhs
