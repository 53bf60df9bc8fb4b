#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "satset/bounds.hpp"

namespace satset::lift {

class LiftError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters of the lifted code: length n = n0 q^m + R theta_{m,q}, codimension r = r0 + R m.
struct LiftedParams {
  long long n0 = 0;
  int r0 = 0;
  long long q = 0;
  int R = 0;
  int m = 0;
  long long n = 0;
  int r = 0;
  /// Set when r0 = R + 1; then r = tR + 1.
  std::optional<int> t;
};

/// Throws LiftError when n0 > q + 1, m < 1, or the length overflows.
LiftedParams lift_params(long long n0, int r0, long long q, int R, int m);

struct FamilyEntry {
  LiftedParams params;
  /// Length bound for r = tR + 1 (monitoring only).
  double bound = 0;
  bool within_bound = false;
};

struct Family {
  std::vector<FamilyEntry> entries;
  /// Why the family is empty, if it is.
  std::string diagnostic;
};

/// Entries for m = 1..t_max-1 from a base code of length n0 and codimension
/// R + 1. Empty with a diagnostic when n0 > q + 1.
Family family(long long n0, long long q, int R, int t_max);

nlohmann::json to_json(const LiftedParams& p);
nlohmann::json to_json(const Family& f);

}  // namespace satset::lift
