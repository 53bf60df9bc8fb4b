#include "satset/lift.hpp"

#include <limits>

#include "satset/geometry.hpp"

namespace satset::lift {

LiftedParams lift_params(long long n0, int r0, long long q, int R, int m) {
  if (q < 2) throw LiftError("q >= 2 required");
  if (R < 1) throw LiftError("R >= 1 required");
  if (m < 1) throw LiftError("m >= 1 required");
  if (n0 < 1 || r0 < 1) throw LiftError("n0 and r0 must be positive");
  if (n0 > q + 1) {
    throw LiftError("n0 = " + std::to_string(n0) + " > q+1 = " + std::to_string(q + 1) +
                    "; the lift needs n0 <= q+1");
  }
  __int128 qm = 1;
  for (int k = 0; k < m; ++k) {
    qm *= q;
    if (qm > std::numeric_limits<long long>::max()) throw LiftError("q^m overflows 64 bits");
  }
  const __int128 n = static_cast<__int128>(n0) * qm + static_cast<__int128>(R) * theta(m, q);
  if (n > std::numeric_limits<long long>::max()) throw LiftError("lifted length overflows 64 bits");

  LiftedParams p{n0, r0, q, R, m, static_cast<long long>(n), r0 + R * m, std::nullopt};
  if (r0 == R + 1) p.t = m + 1;
  return p;
}

Family family(long long n0, long long q, int R, int t_max) {
  Family f;
  if (n0 > q + 1) {
    f.diagnostic = "base length n0 = " + std::to_string(n0) + " exceeds q+1 = " + std::to_string(q + 1) +
                   "; no lift";
    return f;
  }
  for (int m = 1; m <= t_max - 1; ++m) {
    FamilyEntry e;
    e.params = lift_params(n0, R + 1, q, R, m);
    e.bound = bounds::length_bound(q, R, m + 1).convert_to<double>();
    e.within_bound = static_cast<double>(e.params.n) <= e.bound;
    f.entries.push_back(e);
  }
  return f;
}

nlohmann::json to_json(const LiftedParams& p) {
  nlohmann::json j{{"n0", p.n0}, {"r0", p.r0}, {"q", p.q}, {"R", p.R}, {"m", p.m}, {"n", p.n}, {"r", p.r}};
  j["t"] = p.t ? nlohmann::json(*p.t) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const Family& f) {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : f.entries) {
    nlohmann::json x = to_json(e.params);
    x["bound"] = e.bound;
    x["within_bound"] = e.within_bound;
    j["entries"].push_back(x);
  }
  if (!f.diagnostic.empty()) j["diagnostic"] = f.diagnostic;
  return j;
}

}  // namespace satset::lift
