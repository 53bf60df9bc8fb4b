#include "doctest.h"

#include "satset/geometry.hpp"
#include "satset/lift.hpp"

using namespace satset;
using namespace satset::lift;

TEST_SUITE("lift") {
  TEST_CASE("hand-computed parameters") {
    const LiftedParams a = lift_params(8, 4, 7, 3, 2);
    CHECK(a.n == 8 * 49 + 3 * 57);
    CHECK(a.n == 563);
    CHECK(a.r == 10);
    CHECK(a.t == 3);
    const LiftedParams b = lift_params(5, 4, 4, 3, 1);
    CHECK(b.n == 35);
    CHECK(b.r == 7);
    CHECK(b.t == 2);
    CHECK_FALSE(lift_params(5, 6, 4, 3, 1).t);
  }

  TEST_CASE("precondition and argument errors") {
    CHECK_THROWS_WITH_AS((void)lift_params(9, 4, 7, 3, 1), doctest::Contains("q+1 = 8"), LiftError);
    CHECK_NOTHROW((void)lift_params(8, 4, 7, 3, 1));
    CHECK_THROWS_AS((void)lift_params(5, 4, 4, 3, 0), LiftError);
    CHECK_THROWS_AS((void)lift_params(5, 4, 256, 3, 40), LiftError);
  }

  TEST_CASE("codimension and length arithmetic") {
    for (long long q : {3, 4, 5, 7, 8, 9, 11, 13, 16, 25}) {
      for (int R : {3, 4, 5}) {
        for (int m = 1; m <= 4; ++m) {
          const auto p = lift_params(q + 1, R + 1, q, R, m);
          long long qm = 1;
          for (int k = 0; k < m; ++k) qm *= q;
          CHECK(p.n - (q + 1) * qm == R * static_cast<long long>(theta(m, q)));
          if (m > 1) CHECK(p.r - lift_params(q + 1, R + 1, q, R, m - 1).r == R);
          CHECK(p.r == *p.t * R + 1);
        }
      }
    }
  }

  TEST_CASE("family listing") {
    const Family f = family(9, 13, 3, 4);
    REQUIRE(f.entries.size() == 3);
    CHECK(f.entries[0].params.r == 7);
    CHECK(f.entries[1].params.r == 10);
    CHECK(f.entries[2].params.r == 13);
    CHECK(f.diagnostic.empty());
    for (const auto& e : f.entries) CHECK(e.bound > 0);

    const Family empty = family(12, 5, 3, 4);
    CHECK(empty.entries.empty());
    CHECK_FALSE(empty.diagnostic.empty());
    const auto j = to_json(f);
    CHECK(j["entries"].size() == 3);
  }

  TEST_CASE("lifted length meets the bound exactly when n0 leaves room for R") {
    // bound(t) - n(t-1) = q^{t-1} (length_bound(t=1) - R - n0)
    for (long long q : {5, 7, 13, 101, 1009}) {
      for (int R : {3, 4}) {
        const double room = bounds::length_bound(q, R, 1).convert_to<double>() - R;
        for (long long n0 = 1; n0 <= q + 1; ++n0) {
          const Family f = family(n0, q, R, 3);
          for (const auto& e : f.entries) CHECK(e.within_bound == (static_cast<double>(n0) <= room));
        }
      }
    }
  }
}
