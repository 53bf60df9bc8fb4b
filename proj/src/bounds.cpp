#include "satset/bounds.hpp"

#include <map>
#include <mutex>

#include <boost/math/constants/constants.hpp>

namespace satset::bounds {

namespace mp = boost::multiprecision;

namespace {

void require_R(int R) {
  if (R < 3) throw BoundsError("R >= 3 required, got " + std::to_string(R));
}

Real to_real(const BigInt& n) { return Real(n); }
Real to_real(const Rational& r) { return Real(mp::numerator(r)) / Real(mp::denominator(r)); }

Real root(const Real& x, int n) { return mp::pow(x, Real(1) / n); }

// R^R / R!
Real rr_over_fact(int R) { return to_real(BigInt(mp::pow(BigInt(R), R))) / to_real(factorial(R)); }

}  // namespace

std::string to_string(KnownCase c) {
  switch (c) {
    case KnownCase::R3: return "R3";
    case KnownCase::r_eq_R1: return "r_eq_R1";
    case KnownCase::r_eq_tR1_tge2: return "r_eq_tR1_tge2";
  }
  return "?";
}

KnownCase known_case_from_string(const std::string& s) {
  if (s == "R3") return KnownCase::R3;
  if (s == "r_eq_R1") return KnownCase::r_eq_R1;
  if (s == "r_eq_tR1_tge2") return KnownCase::r_eq_tR1_tge2;
  throw BoundsError("unknown case '" + s + "'");
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt b = 1;
  for (long long i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

Real e_const() { return boost::math::constants::e<Real>(); }
Real pi_const() { return boost::math::constants::pi<Real>(); }

Real c_new(int R) {
  require_R(R);
  const Rational x(factorial(R), mp::pow(BigInt(R), R - 2));
  return root(to_real(x), R);
}

Real c_knw(int R, KnownCase kc) {
  require_R(R);
  switch (kc) {
    case KnownCase::R3:
      if (R != 3) throw BoundsError("case R3 applies only to R = 3, got R = " + std::to_string(R));
      return root(Real(18), 3);
    case KnownCase::r_eq_R1:
      return Real(R) / Real(R - 1) * root(to_real(BigInt(R) * (R - 1) * factorial(R)), R);
    case KnownCase::r_eq_tR1_tge2:
      return Real(343) / 100 * R;
  }
  throw BoundsError("unknown case");
}

Real ratio(int R, KnownCase kc) { return c_knw(R, kc) / c_new(R); }

Real ratio_closed_form(int R) {
  require_R(R);
  return Real(R) * R / (R - 1) * root(Real(R - 1) / R, R);
}

Stirling stirling_bounds(int R) {
  require_R(R);
  const Real lower = root(2 * pi_const() * mp::pow(Real(R), 5), 2 * R) / e_const();
  const Real upper = lower * mp::exp(Real(1) / (12 * Real(R) * R));
  return {lower, upper};
}

Rational bernoulli(int m) {
  if (m < 2 || m % 2 != 0) throw BoundsError("bernoulli: even m >= 2 required, got " + std::to_string(m));
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard lock(mu);
  for (int n = static_cast<int>(cache.size()); n <= m; ++n) {
    Rational acc = 0;
    for (int k = 0; k < n; ++k) acc += Rational(binomial(n + 1, k)) * cache[k];
    cache.push_back(-acc / (n + 1));
  }
  return cache[m];
}

Real D_minus(const Real& w, const Real& q, int R) {
  require_R(R);
  const Real u = w - 1;
  Real s = mp::pow(u, R) / (R * (q + 1)) + mp::pow(u, R - 1) / (2 * (q + 1));
  const int upper = (R - 2 + 1) / 2;  // ceil((R-2)/2)
  for (int j = 1; j <= upper; ++j) {
    s += to_real(bernoulli(2 * j)) / (2 * j) * to_real(binomial(R - 1, 2 * j - 1)) *
         mp::pow(u, R - 2 * j) / (q + 1);
  }
  return s;
}

Real D_plus(const Real& w, const Real& q, int R) {
  require_R(R);
  const Real q2 = q * q;
  Real s = mp::pow(w, 2 * R - 1) / (2 * (2 * R - 1) * q2) + mp::pow(w, 2 * R - 2) / (4 * q2);
  for (int j = 1; j <= R - 1; ++j) {
    s += to_real(bernoulli(2 * j)) / (2 * j) * to_real(binomial(2 * R - 2, 2 * j - 1)) *
         mp::pow(w, 2 * R - 2 * j - 1) / (2 * q2);
  }
  return s;
}

Real D_plus_substituted(const Real& k, const Real& q, int R) {
  return D_plus(root((k + 1) * q * mp::log(q), R), q, R);
}

Rational G_min_lower(int w, long long q, int R) {
  require_R(R);
  if (w < 1) throw BoundsError("G_min_lower: w >= 1 required");
  const BigInt B = binomial(static_cast<long long>(w) * R, R - 1);
  if (B > q + 1) {
    throw BoundsError("G_min_lower: C(" + std::to_string(w * R) + "," + std::to_string(R - 1) +
                      ") = " + B.str() + " exceeds q + 1 = " + std::to_string(q + 1));
  }
  // q^{R-3} B (2q + 1 - B) / 2
  return Rational(mp::pow(BigInt(q), R - 3) * B * (2 * BigInt(q) + 1 - B), 2);
}

Trajectory U_upper_trajectory(long long q, int R, int w_max) {
  require_R(R);
  Trajectory t;
  Rational current(mp::pow(BigInt(q), R));
  t.values.push_back(current);
  const BigInt denom = mp::pow(BigInt(q), R - 2) * (q + 1);
  for (int m = 1; m <= w_max; ++m) {
    Rational g;
    try {
      g = G_min_lower(m, q, R);
    } catch (const BoundsError&) {
      t.truncated_at = m;
      break;
    }
    current *= Rational(1) - g / Rational(denom);
    t.values.push_back(current);
  }
  return t;
}

Real exp_bound(int w, long long q, int R) {
  const Real c = rr_over_fact(R);
  const Real qq(q);
  return mp::pow(qq, R) * mp::exp(c * (-D_minus(w, qq, R) + c * D_plus(w, qq, R)));
}

int w_sufficient(long long q, int R) {
  const Real qq(q);
  const Real w = c_new(R) * root(qq * mp::log(qq), R) + 1;
  return mp::ceil(w).convert_to<int>();
}

Real sufficiency_margin(const Real& w, const Real& q, int R) {
  const Real c = rr_over_fact(R);
  return D_minus(w, q, R) - c * D_plus(w, q, R) - mp::log(q) / c * R;
}

std::optional<int> w_sufficient_exact(long long q, int R, int w_cap) {
  const Real qq(q);
  for (int w = 1; w <= w_cap; ++w)
    if (sufficiency_margin(w, qq, R) >= 0) return w;
  return std::nullopt;
}

std::optional<Real> k_min_feasible(long long q, int R, int steps) {
  const Real qq(q);
  const Real base = mp::pow(c_new(R), R);
  const Real qlnq = qq * mp::log(qq);
  for (int j = 0; j <= steps; ++j) {
    const Real k = base * (1 + Real(j) / 1000);
    if (sufficiency_margin(root(k * qlnq, R) + 1, qq, R) >= 0) return k;
  }
  return std::nullopt;
}

Real length_bound(long long q, int R, int t) {
  require_R(R);
  if (t < 1) throw BoundsError("length_bound: t >= 1 required");
  const Real qq(q);
  const int r = t * R + 1;
  const Real lead_exp = Real(r - R) / R;
  const Real tail = mp::pow(qq, t - 1);  // q^{(r-R-1)/R}
  return c_new(R) * mp::pow(qq, lead_exp) * root(mp::log(qq), R) + (1 + R) * tail +
         R * (tail - 1) / (qq - 1);
}

Real lower_bound_order(long long q, int R, int t) {
  const int r = t * R + 1;
  return mp::pow(Real(q), Real(r - R) / R);
}

std::string fixed(const Real& x, int decimals) {
  const BigInt scaled = mp::round(x * mp::pow(Real(10), decimals)).convert_to<BigInt>();
  const bool negative = scaled < 0;
  std::string digits = (negative ? BigInt(-scaled) : scaled).str();
  if (decimals > 0) {
    if (static_cast<int>(digits.size()) <= decimals)
      digits.insert(0, static_cast<std::size_t>(decimals + 1 - digits.size()), '0');
    digits.insert(digits.size() - decimals, ".");
  }
  return negative ? "-" + digits : digits;
}

const std::vector<int>& table1_R() {
  static const std::vector<int> rows{3, 4, 5, 6, 7, 8, 9, 10, 25, 50, 100, 125, 150};
  return rows;
}

const std::vector<int>& table2_R() {
  static const std::vector<int> rows{4, 5, 6, 7, 8, 9, 10, 25, 50, 100, 125, 150};
  return rows;
}

std::vector<Table1Row> table1() {
  std::vector<Table1Row> out;
  for (int R : table1_R()) {
    const Stirling s = stirling_bounds(R);
    out.push_back({R, s.lower, c_new(R), s.upper});
  }
  return out;
}

std::vector<Table2Row> table2() {
  std::vector<Table2Row> out;
  for (int R : table2_R()) {
    out.push_back({R, c_new(R), c_knw(R, KnownCase::r_eq_R1), ratio_closed_form(R),
                   ratio(R, KnownCase::r_eq_tR1_tge2)});
  }
  return out;
}

std::string emit_table1() {
  std::string csv = "R,stirling_lower,stirling_lower_per_R,c_new,c_new_per_R,stirling_upper\n";
  for (const auto& row : table1()) {
    csv += std::to_string(row.R) + ',' + fixed(row.lower, 8) + ',' + fixed(row.lower / row.R, 4) +
           ',' + fixed(row.c_new, 8) + ',' + fixed(row.c_new / row.R, 4) + ',' +
           fixed(row.upper, 8) + '\n';
  }
  return csv;
}

std::string emit_table2() {
  std::string csv = "R,c_new,c_knw_r_eq_R1,ratio_r_eq_R1,ratio_r_eq_tR1,ratio_r_eq_tR1_per_R\n";
  for (const auto& row : table2()) {
    csv += std::to_string(row.R) + ',' + fixed(row.c_new, 4) + ',' + fixed(row.known_A, 3) + ',' +
           fixed(row.ratio_B, 4) + ',' + fixed(row.ratio_tge2, 0) + ',' +
           fixed(row.ratio_tge2 / row.R, 2) + '\n';
  }
  return csv;
}

nlohmann::json report(const BoundReport& request) {
  const int R = request.R;
  require_R(R);
  const Stirling s = stirling_bounds(R);
  nlohmann::json j;
  j["schema"] = 1;
  j["R"] = R;
  j["c_new"] = c_new(R).convert_to<double>();
  j["stirling_lower"] = s.lower.convert_to<double>();
  j["stirling_upper"] = s.upper.convert_to<double>();
  j["inverse_e"] = (1 / e_const()).convert_to<double>();

  nlohmann::json known = nlohmann::json::array();
  auto add_case = [&](KnownCase kc) {
    known.push_back({{"case", to_string(kc)},
                     {"c_knw", c_knw(R, kc).convert_to<double>()},
                     {"ratio", ratio(R, kc).convert_to<double>()}});
  };
  if (R == 3) add_case(KnownCase::R3);
  add_case(KnownCase::r_eq_R1);
  add_case(KnownCase::r_eq_tR1_tge2);
  j["known"] = known;
  j["ratio_closed_form_r_eq_R1"] = ratio_closed_form(R).convert_to<double>();

  if (request.q) {
    const long long q = *request.q;
    const int t = request.t.value_or(1);
    j["q"] = q;
    j["t"] = t;
    j["r"] = t * R + 1;
    j["w_sufficient"] = w_sufficient(q, R);
    const Real margin = sufficiency_margin(w_sufficient(q, R), Real(q), R);
    j["w_sufficient_margin"] = margin.convert_to<double>();
    const auto exact = w_sufficient_exact(q, R, 4 * w_sufficient(q, R) + 64);
    j["w_sufficient_exact"] = exact ? nlohmann::json(*exact) : nlohmann::json(nullptr);
    j["binomial_hypothesis_holds_at_w_sufficient"] =
        binomial(static_cast<long long>(w_sufficient(q, R)) * R, R - 1) <= q + 1;
    j["length_bound_t1"] = length_bound(q, R, 1).convert_to<double>();
    j["length_bound"] = length_bound(q, R, t).convert_to<double>();
    j["lower_bound_order"] = lower_bound_order(q, R, t).convert_to<double>();
  }
  return j;
}

}  // namespace satset::bounds
