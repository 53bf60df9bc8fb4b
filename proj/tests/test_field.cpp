#include "doctest.h"

#include <string>
#include <vector>

#include "satset/field.hpp"

using namespace satset;

namespace {

std::vector<int> prime_powers(int limit) {
  std::vector<int> out;
  for (int q = 2; q <= limit; ++q) {
    int p = 2;
    while (q % p) ++p;
    int r = q;
    while (r % p == 0) r /= p;
    if (r == 1) out.push_back(q);
  }
  return out;
}

// Smallest monic irreducible of degree e <= 3 over GF(p): no roots suffices.
std::vector<int> smallest_cubic_or_quadratic(int p, int e) {
  for (int code = 0;; ++code) {
    std::vector<int> c(e + 1, 0);
    int rest = code;
    for (int k = 0; k < e; ++k) {
      c[k] = rest % p;
      rest /= p;
    }
    if (rest) break;
    c[e] = 1;
    bool root = false;
    for (int x = 0; x < p && !root; ++x) {
      long long v = 0, xp = 1;
      for (int k = 0; k <= e; ++k) {
        v += c[k] * xp;
        xp = xp * x % p;
      }
      root = v % p == 0;
    }
    if (!root) return c;
  }
  return {};
}

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("field axioms hold exhaustively for every q <= 64") {
    for (int q : prime_powers(64)) {
      CAPTURE(q);
      const Field f(q);
      for (int a = 0; a < q; ++a) {
        CHECK(f.add(a, 0) == a);
        CHECK(f.mul(a, 1) == a);
        CHECK(f.add(a, f.neg(a)) == 0);
        if (a) CHECK(f.mul(a, f.inv(a)) == 1);
        for (int b = 0; b < q; ++b) {
          REQUIRE(f.add(a, b) == f.add(b, a));
          REQUIRE(f.mul(a, b) == f.mul(b, a));
          REQUIRE(f.sub(f.add(a, b), b) == a);
          for (int c = 0; c < q; ++c) {
            REQUIRE(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
            REQUIRE(f.add(a, f.add(b, c)) == f.add(f.add(a, b), c));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          }
        }
      }
    }
  }

  TEST_CASE("larger fields have inverses and no zero divisors") {
    for (int q : {81, 125, 128, 243, 256}) {
      CAPTURE(q);
      const Field f(q);
      for (int a = 1; a < q; ++a) {
        REQUIRE(f.mul(a, f.inv(a)) == 1);
        for (int b = 1; b < q; ++b) REQUIRE(f.mul(a, b) != 0);
      }
    }
  }

  TEST_CASE("multiplicative group is cyclic") {
    for (int q : prime_powers(256)) {
      const Field f(q);
      bool found = false;
      for (int g = 1; g < q && !found; ++g) {
        int order = 1;
        Element x = g;
        while (x != 1) {
          x = f.mul(x, g);
          ++order;
        }
        found = order == q - 1;
      }
      CHECK_MESSAGE(found, "q = " << q);
    }
  }

  TEST_CASE("Frobenius map is additive") {
    for (int q : {4, 8, 9, 16, 25, 27, 49}) {
      const Field f(q);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          REQUIRE(f.pow(f.add(a, b), f.p()) == f.add(f.pow(a, f.p()), f.pow(b, f.p())));
    }
  }

  TEST_CASE("modulus is the smallest monic irreducible") {
    CHECK(Field(4).modulus() == std::vector<int>{1, 1, 1});
    CHECK(Field(8).modulus() == std::vector<int>{1, 1, 0, 1});
    CHECK(Field(9).modulus() == std::vector<int>{1, 0, 1});
    CHECK(Field(7).modulus().empty());
    for (int q : {4, 8, 9, 25, 27, 49, 121, 125, 169}) {
      const Field f(q);
      CHECK(f.modulus() == smallest_cubic_or_quadratic(f.p(), f.e()));
    }
  }

  TEST_CASE("element encoding follows polynomial digits") {
    const Field f4(4);
    CHECK(f4.mul(2, 2) == 3);  // x^2 = x + 1
    const Field f8(8);
    CHECK(f8.mul(2, 4) == 3);  // x^3 = x + 1
    const Field f9(9);
    CHECK(f9.mul(3, 3) == 2);  // x^2 = -1
  }

  TEST_CASE("pow handles zero and negative exponents") {
    const Field f(13);
    CHECK(f.pow(5, 0) == 1);
    CHECK(f.pow(0, 0) == 1);
    CHECK(f.pow(0, 3) == 0);
    for (int a = 1; a < 13; ++a) {
      CHECK(f.pow(a, -1) == f.inv(a));
      CHECK(f.pow(a, 12) == 1);
    }
    CHECK_THROWS_AS((void)f.pow(0, -1), DivisionByZero);
  }

  TEST_CASE("invalid orders are rejected with a factorization") {
    CHECK_THROWS_AS(Field(6), FieldError);
    CHECK_THROWS_AS(Field(1), FieldError);
    CHECK_THROWS_AS(Field(0), FieldError);
    CHECK_THROWS_AS(Field(512), FieldError);
    try {
      (void)decompose_prime_power(12);
      FAIL("12 accepted");
    } catch (const FieldError& e) {
      CHECK(std::string(e.what()).find("12 = 2^2 * 3") != std::string::npos);
    }
    CHECK(decompose_prime_power(243).p == 3);
    CHECK(decompose_prime_power(243).e == 5);
    const Field f(5);
    CHECK_THROWS_AS((void)f.inv(0), DivisionByZero);
    CHECK_THROWS_AS((void)f.div(1, 0), DivisionByZero);
  }

  TEST_CASE("fields compare by order and modulus") {
    CHECK(Field(9) == Field(9));
    CHECK_FALSE(Field(9) == Field(8));
  }
}
