#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "glhs/errors.hpp"
#include "glhs/moments.hpp"

using namespace glhs;

namespace {

// m_1, m_2, m_3 expanded by hand from the residue of e^{-ntz}(1 + 1/z)^n.
double m1(double t) { return std::exp(-t / 2); }
double m2(double t) { return std::exp(-t) * (1 - t); }
double m3(double t) { return std::exp(-1.5 * t) * (1 - 3 * t + 1.5 * t * t); }

// Coefficient extraction in long double with binomials built by Pascal's rule.
long double residue_oracle(int n, long double t) {
  std::vector<long double> binom(n + 1, 0);
  binom[0] = 1;
  for (int r = 1; r <= n; ++r)
    for (int k = r; k > 0; --k) binom[k] += binom[k - 1];
  long double sum = 0, power = 1;
  for (int k = 0; k < n; ++k) {
    sum += power * binom[k + 1];
    power *= -t * n / (k + 1);
  }
  return std::exp(-n * t / 2) * sum / n;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(ClosedForm, AnchorsAtMinusOne) {
  EXPECT_EQ(moment_closed_form(0, -1), 1.0);
  EXPECT_NEAR(moment_closed_form(1, -1), std::exp(0.5), 1e-15);
  EXPECT_NEAR(moment_closed_form(2, -1), 2 * std::numbers::e, 1e-14);
  EXPECT_NEAR(moment_closed_form(3, -1), 5.5 * std::exp(1.5), 1e-13);
}

TEST(ClosedForm, LowOrdersMatchHandExpansion) {
  for (double t : {-8.0, -2.0, -0.25, -1e-3, 0.0, 0.5, 2.0, 5.0}) {
    EXPECT_LE(rel(moment_closed_form(1, t), m1(t)), 1e-15) << t;
    EXPECT_LE(rel(moment_closed_form(2, t), m2(t)), 1e-14) << t;
    if (m3(t) != 0) EXPECT_LE(rel(moment_closed_form(3, t), m3(t)), 1e-13) << t;
  }
}

TEST(ClosedForm, MatchesLongDoubleResidueOracle) {
  for (double t : {-4.0, -1.0, -0.25, -0.01}) {
    for (int n = 1; n <= 20; ++n) {
      const double oracle = static_cast<double>(residue_oracle(n, t));
      EXPECT_LE(rel(moment_closed_form(n, t), oracle), 1e-13) << "n=" << n << " t=" << t;
    }
  }
}

TEST(ClosedForm, TimeZeroGivesOnes) {
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(moment_closed_form(n, 0.0), 1.0);
}

TEST(ClosedForm, NegativeOrderRejected) {
  EXPECT_THROW(moment_closed_form(-1, -1), DomainError);
}

TEST(ClosedForm, OverflowCarriesLogValue) {
  try {
    moment_closed_form(400, -10);
    FAIL() << "expected Overflow";
  } catch (const Overflow& e) {
    EXPECT_NEAR(e.log_value(), log_moment(400, -10), 1e-9 * std::abs(log_moment(400, -10)));
    EXPECT_GT(e.log_value(), std::log(std::numeric_limits<double>::max()));
  }
}

TEST(ClosedForm, LogMomentAgreesWhereRepresentable) {
  for (int n = 1; n <= 30; ++n)
    EXPECT_NEAR(log_moment(n, -1.5), std::log(moment_closed_form(n, -1.5)), 1e-13 * n);
}

TEST(ClosedForm, PositiveTimeFlagsCancellation) {
  const auto mild = moment_closed_form_checked(3, 0.1);
  EXPECT_FALSE(mild.ill_conditioned);
  const auto hard = moment_closed_form_checked(60, 8.0);
  EXPECT_TRUE(hard.ill_conditioned);
  EXPECT_GT(hard.condition, 1e6);
  const auto neg = moment_closed_form_checked(10, -2.0);
  EXPECT_EQ(neg.condition, 1.0);
}

TEST(ClosedForm, LogConvexInOrder) {
  // Moments of a positive measure: m_n^2 <= m_{n-1} m_{n+1}.
  for (double t : {-4.0, -1.0, -0.25}) {
    for (int n = 1; n < 15; ++n) {
      const double a = log_moment(n - 1, t), b = log_moment(n, t), c = log_moment(n + 1, t);
      EXPECT_LE(2 * b, a + c + 1e-12) << n << " " << t;
    }
  }
}

TEST(ClosedForm, IncreasingInMinusT) {
  for (int n = 1; n <= 8; ++n) {
    double prev = 1.0;
    for (double t = -0.1; t >= -6; t -= 0.1) {
      const double m = moment_closed_form(n, t);
      EXPECT_GT(m, prev);
      prev = m;
    }
  }
}

TEST(Contour, AgreesWithClosedForm) {
  for (double t : {-4.0, -2.0, -1.0, -0.25}) {
    for (int n = 1; n <= 8; ++n)
      EXPECT_LE(rel(moment_contour_auto(n, t), moment_closed_form(n, t)), 1e-10) << n << " " << t;
  }
}

TEST(Contour, PositiveTimeAndOtherRadius) {
  EXPECT_LE(rel(moment_contour(2, 0.7, 1.3, 512), m2(0.7)), 1e-12);
  EXPECT_LE(rel(moment_contour(3, -1.0, 2.0, 1024), m3(-1.0)), 1e-10);
}

TEST(Contour, ArgumentChecks) {
  EXPECT_THROW(moment_contour(0, -1, 0.5, 64), DomainError);
  EXPECT_THROW(moment_contour(2, -1, 0.0, 64), DomainError);
  EXPECT_THROW(moment_contour(2, -1, 0.5, 16), DomainError);
}

TEST(MomentTable, AllMethodsAgreeAndStartAtOne) {
  const auto cf = moment_table(6, -1, MomentMethod::closed_form);
  const auto ct = moment_table(6, -1, MomentMethod::contour);
  const auto de = moment_table(6, -1, MomentMethod::density);
  ASSERT_EQ(cf.values.size(), 7u);
  ASSERT_EQ(ct.values.size(), 7u);
  ASSERT_EQ(de.values.size(), 7u);
  EXPECT_EQ(cf.values[0].m, 1.0);
  EXPECT_EQ(ct.values[0].m, 1.0);
  EXPECT_EQ(de.values[0].m, 1.0);
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(cf.values[n].n, n);
    EXPECT_LE(rel(ct.values[n].m, cf.values[n].m), 1e-10);
    EXPECT_LE(rel(de.values[n].m, cf.values[n].m), 1e-7);
  }
}

TEST(MomentTable, DensityMethodNeedsNegativeTime) {
  EXPECT_THROW(moment_table(3, 0.0, MomentMethod::density), DomainError);
  EXPECT_NO_THROW(moment_table(3, 0.5, MomentMethod::contour));
}

TEST(MomentMethodNames, RoundTrip) {
  for (auto m : {MomentMethod::closed_form, MomentMethod::contour, MomentMethod::density})
    EXPECT_EQ(parse_moment_method(to_string(m)), m);
  EXPECT_EQ(parse_moment_method("closed_form"), MomentMethod::closed_form);
  EXPECT_THROW(parse_moment_method("series"), DomainError);
}
