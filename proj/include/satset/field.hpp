#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace satset {

/// Element of GF(q) encoded as an index in [0, q). For q = p the index is the
/// residue; for q = p^e it is the base-p digit vector of the polynomial
/// representative (digit k = coefficient of x^k). 0 and 1 are the identities.
using Element = std::uint8_t;

/// Largest field order with precomputed tables.
inline constexpr int kMaxFieldOrder = 256;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public FieldError {
 public:
  DivisionByZero() : FieldError("inverse of zero in GF(q)") {}
};

/// GF(p^e) with full addition and multiplication tables.
///
/// Immutable after construction. Extension fields use the lexicographically
/// smallest monic irreducible modulus of degree e, where polynomials are
/// ordered by the integer sum_k c_k p^k of their non-leading coefficients.
class Field {
 public:
  /// Throws FieldError when q is not a prime power or exceeds kMaxFieldOrder.
  explicit Field(int q);

  int p() const noexcept { return p_; }
  int e() const noexcept { return e_; }
  int q() const noexcept { return q_; }

  /// Coefficients c_0..c_e (low to high, c_e = 1) of the modulus; empty for
  /// prime fields.
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  Element add(Element a, Element b) const noexcept { return add_[a * q_ + b]; }
  Element sub(Element a, Element b) const noexcept { return add_[a * q_ + neg_[b]]; }
  Element mul(Element a, Element b) const noexcept { return mul_[a * q_ + b]; }
  Element neg(Element a) const noexcept { return neg_[a]; }

  /// Throws DivisionByZero for a = 0.
  Element inv(Element a) const {
    if (a == 0) throw DivisionByZero();
    return inv_[a];
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// a^k for k >= 0; negative k uses the inverse.
  Element pow(Element a, long long k) const;

  /// Row pointers into the tables for hot loops.
  const Element* mul_row(Element a) const noexcept { return mul_.data() + a * q_; }
  const Element* add_row(Element a) const noexcept { return add_.data() + a * q_; }

  bool operator==(const Field& other) const noexcept {
    return q_ == other.q_ && modulus_ == other.modulus_;
  }

 private:
  int p_ = 0;
  int e_ = 0;
  int q_ = 0;
  std::vector<int> modulus_;
  std::vector<Element> add_;
  std::vector<Element> mul_;
  std::vector<Element> neg_;
  std::vector<Element> inv_;
};

/// Prime-power decomposition q = p^e. Throws FieldError naming the
/// factorization when q is not a prime power.
struct PrimePower {
  int p;
  int e;
};
PrimePower decompose_prime_power(long long q);

/// Same as Field(q); mirrors the factory name used in the CLI and docs.
inline Field make_field(int q) { return Field(q); }

/// Polynomials over GF(p) as coefficient vectors (low to high, no trailing
/// zeros; the zero polynomial is empty).
namespace poly {
std::vector<int> mod(std::vector<int> a, const std::vector<int>& b, int p);
bool is_irreducible(const std::vector<int>& f, int p);
}  // namespace poly

}  // namespace satset
