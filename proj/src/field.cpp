#include "satset/field.hpp"

#include <sstream>

namespace satset {

namespace {

void trim(std::vector<int>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int inverse_mod_prime(int a, int p) {
  // a^(p-2) mod p
  long long result = 1, base = a % p;
  for (int k = p - 2; k > 0; k >>= 1) {
    if (k & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<int>(result);
}

std::vector<int> digits(int idx, int p, int e) {
  std::vector<int> d(e);
  for (int k = 0; k < e; ++k) {
    d[k] = idx % p;
    idx /= p;
  }
  return d;
}

int from_digits(const std::vector<int>& d, int p) {
  int idx = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) idx = idx * p + *it;
  return idx;
}

}  // namespace

PrimePower decompose_prime_power(long long q) {
  if (q < 2) throw FieldError("field order must be at least 2, got " + std::to_string(q));
  long long p = 0;
  for (long long d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {static_cast<int>(q), 1};
  long long rest = q;
  int e = 0;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest == 1) return {static_cast<int>(p), e};

  std::ostringstream msg;
  msg << q << " is not a prime power (" << q << " =";
  long long n = q;
  bool first = true;
  for (long long d = 2; d * d <= n; ++d) {
    int k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k > 0) {
      msg << (first ? " " : " * ") << d;
      if (k > 1) msg << '^' << k;
      first = false;
    }
  }
  if (n > 1) msg << (first ? " " : " * ") << n;
  msg << ')';
  throw FieldError(msg.str());
}

namespace poly {

std::vector<int> mod(std::vector<int> a, const std::vector<int>& b, int p) {
  trim(a);
  std::vector<int> d = b;
  trim(d);
  if (d.empty()) throw FieldError("polynomial division by zero");
  const int lead_inv = inverse_mod_prime(d.back(), p);
  while (a.size() >= d.size()) {
    const int coef = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - d.size();
    for (std::size_t k = 0; k < d.size(); ++k) {
      a[shift + k] = ((a[shift + k] - coef * d[k]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

bool is_irreducible(const std::vector<int>& f, int p) {
  std::vector<int> g = f;
  trim(g);
  const int deg = static_cast<int>(g.size()) - 1;
  if (deg < 1) return false;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int d = 1; 2 * d <= deg; ++d) {
    long long count = 1;
    for (int k = 0; k < d; ++k) count *= p;
    for (long long code = 0; code < count; ++code) {
      std::vector<int> divisor = digits(static_cast<int>(code), p, d);
      divisor.push_back(1);
      if (mod(g, divisor, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace poly

Field::Field(int q) {
  const PrimePower pp = decompose_prime_power(q);
  if (q > kMaxFieldOrder) {
    throw FieldError("GF(" + std::to_string(q) + ") exceeds the supported order " +
                     std::to_string(kMaxFieldOrder));
  }
  p_ = pp.p;
  e_ = pp.e;
  q_ = q;

  if (e_ > 1) {
    int tail_count = 1;
    for (int k = 0; k < e_; ++k) tail_count *= p_;
    for (int code = 0; code < tail_count; ++code) {
      std::vector<int> f = digits(code, p_, e_);
      f.push_back(1);
      if (poly::is_irreducible(f, p_)) {
        modulus_ = f;
        break;
      }
    }
    if (modulus_.empty()) throw FieldError("no irreducible modulus found");
  }

  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);

  for (int a = 0; a < q_; ++a) {
    const std::vector<int> da = digits(a, p_, e_);
    std::vector<int> dn(e_);
    for (int k = 0; k < e_; ++k) dn[k] = (p_ - da[k]) % p_;
    neg_[a] = static_cast<Element>(from_digits(dn, p_));
    for (int b = 0; b < q_; ++b) {
      const std::vector<int> db = digits(b, p_, e_);
      std::vector<int> sum(e_);
      for (int k = 0; k < e_; ++k) sum[k] = (da[k] + db[k]) % p_;
      add_[a * q_ + b] = static_cast<Element>(from_digits(sum, p_));

      std::vector<int> prod(2 * e_ - 1, 0);
      for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      std::vector<int> reduced = e_ > 1 ? poly::mod(prod, modulus_, p_) : prod;
      reduced.resize(e_, 0);
      if (e_ == 1) reduced[0] %= p_;
      mul_[a * q_ + b] = static_cast<Element>(from_digits(reduced, p_));
    }
  }
  for (int a = 1; a < q_; ++a) {
    for (int b = 1; b < q_; ++b) {
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = static_cast<Element>(b);
        break;
      }
    }
  }
}

Element Field::pow(Element a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Element result = 1;
  Element base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

}  // namespace satset
