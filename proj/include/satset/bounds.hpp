#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace satset::bounds {

/// 50 significant decimal digits.
using Real = boost::multiprecision::cpp_bin_float_50;
using BigInt = boost::multiprecision::cpp_int;
/// Canonical exact rational (gcd 1, positive denominator).
using Rational = boost::multiprecision::cpp_rational;

class BoundsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which previously known constant applies.
enum class KnownCase {
  R3,            // R = 3, r = 3t + 1
  r_eq_R1,       // R >= 3, r = R + 1
  r_eq_tR1_tge2  // R >= 3, r = tR + 1, t >= 2
};

std::string to_string(KnownCase c);
KnownCase known_case_from_string(const std::string& s);

BigInt factorial(int n);
BigInt binomial(long long n, long long k);

Real e_const();
Real pi_const();

/// (R! / R^{R-2})^{1/R}
Real c_new(int R);

/// Known constant for the given case; throws BoundsError when the case does
/// not apply to R.
Real c_knw(int R, KnownCase kc);

/// c_knw / c_new.
Real ratio(int R, KnownCase kc);

/// (R^2/(R-1)) ((R-1)/R)^{1/R}, the simplified form of ratio(R, r_eq_R1).
Real ratio_closed_form(int R);

struct Stirling {
  Real lower;  // (1/e)(2 pi R^5)^{1/(2R)}
  Real upper;  // lower * e^{1/(12 R^2)}
};
Stirling stirling_bounds(int R);

/// Exact Bernoulli number B_m for even m >= 2 (B_1 = -1/2 convention in the
/// recurrence). Throws BoundsError for odd or nonpositive m.
Rational bernoulli(int m);

/// Faulhaber-form sum over u = 1..w-1 of u^{R-1}, divided by (q+1).
Real D_minus(const Real& w, const Real& q, int R);
/// Faulhaber-form sum over m = 1..w of m^{2R-2}, divided by 2 q^2.
Real D_plus(const Real& w, const Real& q, int R);
/// Upper estimate of D_plus at w = (k q ln q)^{1/R} + 1 with every w-power
/// replaced by the matching power of ((k+1) q ln q)^{1/R}.
Real D_plus_substituted(const Real& k, const Real& q, int R);

/// Lower bound q^{R-3} B (q + 1/2 - B/2) with B = C(wR, R-1); throws
/// BoundsError when B > q + 1.
Rational G_min_lower(int w, long long q, int R);

struct Trajectory {
  /// values[w] bounds #U_w for w = 0..; values[0] = q^R.
  std::vector<Rational> values;
  /// First m whose binomial exceeds q + 1, if the list was cut short.
  std::optional<int> truncated_at;
};
/// q^R prod_{m<=w} (1 - G_min_lower(m)/(q^{R-2}(q+1))) for w = 0..w_max.
Trajectory U_upper_trajectory(long long q, int R, int w_max);

/// q^R exp((R^R/R!)(-D_minus + (R^R/R!) D_plus)).
Real exp_bound(int w, long long q, int R);

/// ceil(c_new(R) (q ln q)^{1/R} + 1)
int w_sufficient(long long q, int R);

/// D_minus - (R^R/R!) D_plus - (R!/R^{R-1}) ln q. Nonnegative iff w satisfies
/// the sufficient-w inequality.
Real sufficiency_margin(const Real& w, const Real& q, int R);

/// Smallest integer w in [1, w_cap] with nonnegative sufficiency margin.
std::optional<int> w_sufficient_exact(long long q, int R, int w_cap);

/// Smallest k on the grid c_new(R)^R * (1 + j/1000), j = 0..steps, such that
/// w = (k q ln q)^{1/R} + 1 has nonnegative margin. Diagnostic only.
std::optional<Real> k_min_feasible(long long q, int R, int steps = 20000);

/// Upper bound on the length for codimension r = tR + 1. For t = 1 this is
/// c_new q^{1/R} (ln q)^{1/R} + 1 + R.
Real length_bound(long long q, int R, int t);

/// q^{(r-R)/R}, the order of the lower bound, for context.
Real lower_bound_order(long long q, int R, int t);

/// Decimal rendering rounded half away from zero.
std::string fixed(const Real& x, int decimals);

struct Table1Row {
  int R;
  Real lower;
  Real c_new;
  Real upper;
};
struct Table2Row {
  int R;
  Real c_new;
  Real known_A;      // c_knw for r = R + 1
  Real ratio_B;      // closed form, about R + 1
  Real ratio_tge2;   // 3.43R / c_new
};

const std::vector<int>& table1_R();
const std::vector<int>& table2_R();
std::vector<Table1Row> table1();
std::vector<Table2Row> table2();
std::string emit_table1();
std::string emit_table2();

struct BoundReport {
  int R = 3;
  std::optional<long long> q;
  std::optional<int> t;
};
/// JSON with constants for R and, when q and t are set, the q-dependent bounds.
nlohmann::json report(const BoundReport& request);

}  // namespace satset::bounds
