#include "doctest.h"

#include <cmath>

#include "satset/bounds.hpp"

using namespace satset::bounds;
namespace mp = boost::multiprecision;

namespace {

Real power_sum(long long from, long long to, int exponent) {
  Real s = 0;
  for (long long u = from; u <= to; ++u) s += mp::pow(Real(u), exponent);
  return s;
}

bool close(const Real& a, const Real& b, const Real& tol) { return mp::abs(a - b) <= tol * (1 + mp::abs(b)); }

// Akiyama-Tanigawa; gives B_1 = +1/2 but even-index values agree.
Rational bernoulli_oracle(int m) {
  std::vector<Rational> a(m + 1);
  for (int k = 0; k <= m; ++k) {
    a[k] = Rational(1, k + 1);
    for (int j = k; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
  }
  return a[0];
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    for (int m = 2; m <= 60; m += 2) REQUIRE(bernoulli(m) == bernoulli_oracle(m));
    CHECK_THROWS_AS((void)bernoulli(3), BoundsError);
    CHECK_THROWS_AS((void)bernoulli(0), BoundsError);
  }

  TEST_CASE("closed-form sums equal direct power sums") {
    const Real tol("1e-40");
    for (int R = 3; R <= 9; ++R) {
      for (long long q : {2, 5, 13, 1000}) {
        for (long long w : {1, 2, 3, 7, 20, 55}) {
          CAPTURE(R);
          CAPTURE(w);
          REQUIRE(close(D_minus(Real(w), Real(q), R), power_sum(1, w - 1, R - 1) / (q + 1), tol));
          REQUIRE(close(D_plus(Real(w), Real(q), R), power_sum(1, w, 2 * R - 2) / (2 * Real(q) * q), tol));
        }
      }
    }
  }

  TEST_CASE("constants") {
    CHECK(close(c_new(3), mp::cbrt(Real(2)), Real("1e-45")));
    CHECK(close(c_knw(3, KnownCase::R3), mp::cbrt(Real(18)), Real("1e-45")));
    CHECK_THROWS_AS((void)c_knw(4, KnownCase::R3), BoundsError);
    CHECK_THROWS_AS((void)c_new(2), BoundsError);
    CHECK(close(c_knw(5, KnownCase::r_eq_tR1_tge2), Real("17.15"), Real("1e-45")));
    for (int R = 3; R <= 150; ++R)
      REQUIRE(close(ratio(R, KnownCase::r_eq_R1), ratio_closed_form(R), Real("1e-40")));
    CHECK(known_case_from_string(to_string(KnownCase::r_eq_R1)) == KnownCase::r_eq_R1);
    CHECK_THROWS_AS((void)known_case_from_string("x"), BoundsError);
  }

  TEST_CASE("Stirling sandwich and approach to 1/e") {
    Real previous_gap = 10;
    for (int R = 3; R <= 150; ++R) {
      const Stirling s = stirling_bounds(R);
      const Real c = c_new(R);
      REQUIRE(s.lower <= c);
      REQUIRE(c <= s.upper);
      const Real gap = mp::abs(c - 1 / e_const());
      REQUIRE(gap < previous_gap);
      previous_gap = gap;
    }
    CHECK(mp::abs(ratio_closed_form(150) - 151) < Real("0.01"));
  }

  TEST_CASE("ratios increase with R") {
    for (int R = 4; R < 150; ++R) {
      REQUIRE(ratio_closed_form(R) < ratio_closed_form(R + 1));
      REQUIRE(ratio(R, KnownCase::r_eq_tR1_tge2) < ratio(R + 1, KnownCase::r_eq_tR1_tge2));
    }
  }

  TEST_CASE("affine union lower bound") {
    CHECK(G_min_lower(1, 5, 3) == Rational(3 * (11 - 3), 2));
    CHECK(G_min_lower(1, 13, 3) == Rational(3 * (27 - 3), 2));
    CHECK(G_min_lower(1, 7, 4) == Rational(7 * 4 * (15 - 4), 2));
    CHECK_THROWS_WITH_AS((void)G_min_lower(2, 13, 3), doctest::Contains("q + 1 = 14"), BoundsError);
  }

  TEST_CASE("trajectory is decreasing and stops at the binomial limit") {
    const Trajectory t = U_upper_trajectory(1000, 3, 50);
    REQUIRE(t.truncated_at);
    // C(3w, 2) <= 1001 holds up to w = 15 (990), not at w = 16 (1128).
    CHECK(*t.truncated_at == 16);
    CHECK(t.values.size() == 16);
    CHECK(t.values[0] == Rational(1000000000));
    for (std::size_t w = 1; w < t.values.size(); ++w) {
      CHECK(t.values[w] < t.values[w - 1]);
      CHECK(t.values[w] > 0);
    }
  }

  TEST_CASE("sufficient-w margin") {
    // The margin at the rounded sufficient w is negative and shrinks toward 0.
    Real previous = -1e9;
    for (long long q : {1000LL, 100000LL, 10000000LL, 1000000000LL}) {
      const int w = w_sufficient(q, 3);
      const Real m = sufficiency_margin(w, Real(q), 3);
      CHECK(m < 0);
      CHECK(m > previous);
      previous = m;
      const auto exact = w_sufficient_exact(q, 3, 20 * w);
      if (q == 1000) {
        // The w^{2R-1} term overtakes before the margin turns positive.
        CHECK_FALSE(exact);
        continue;
      }
      REQUIRE(exact);
      CHECK(*exact >= w);
      CHECK(sufficiency_margin(*exact, Real(q), 3) >= 0);
      CHECK(sufficiency_margin(*exact - 1, Real(q), 3) < 0);
    }
    const auto k = k_min_feasible(1000000, 3);
    REQUIRE(k);
    CHECK(*k >= mp::pow(c_new(3), 3));
  }

  TEST_CASE("substituted upper sum dominates the sum at the sufficient w") {
    for (long long q : {100000LL, 1000000LL}) {
      for (int R : {3, 4}) {
        const Real k = mp::pow(c_new(R), R);
        const Real w = mp::pow(k * q * mp::log(Real(q)), Real(1) / R) + 1;
        CHECK(D_plus_substituted(k, Real(q), R) >= D_plus(w, Real(q), R));
      }
    }
  }

  TEST_CASE("length bound pieces") {
    const Real q = 13;
    const Real expected = c_new(3) * mp::cbrt(q * mp::log(q)) + 4;
    CHECK(close(length_bound(13, 3, 1), expected, Real("1e-40")));
    CHECK(close(lower_bound_order(13, 3, 2), mp::pow(q, Real(4) / 3), Real("1e-40")));
    CHECK(length_bound(13, 3, 2) > length_bound(13, 3, 1));
    CHECK(exp_bound(1, 13, 3) > 0);
  }

  TEST_CASE("decimal rendering") {
    CHECK(fixed(Real("0.5"), 0) == "1");
    CHECK(fixed(Real("-1.25"), 1) == "-1.3");
    CHECK(fixed(Real("0.0004"), 3) == "0.000");
    CHECK(fixed(Real("151.00000"), 4) == "151.0000");
    CHECK(fixed(Real("12.3456"), 2) == "12.35");
  }

  TEST_CASE("tables and report") {
    CHECK(table1().size() == 13);
    CHECK(table2().size() == 12);
    const std::string t1 = emit_table1();
    CHECK(t1.find("7,0.84050266,0.1201,0.84193234,0.1203,0.84193331\n") != std::string::npos);
    const std::string t2 = emit_table2();
    CHECK(t2.find("4,1.1067,5.493,4.9632,12,3.10\n") != std::string::npos);
    const auto j = report(BoundReport{3, 5, 2});
    CHECK(j["schema"] == 1);
    CHECK(j["r"] == 7);
    CHECK(j.contains("length_bound"));
    CHECK(j["binomial_hypothesis_holds_at_w_sufficient"] == false);
    CHECK_FALSE(report(BoundReport{4, std::nullopt, std::nullopt}).contains("w_sufficient"));
  }
}
