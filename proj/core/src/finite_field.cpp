#include "fuchsian/finite_field.hpp"

#include <array>

#include "fuchsian/errors.hpp"

namespace fuchsian {

namespace {

using Digits = std::array<u64, 3>;

Digits split(u64 a, u64 ell, int e) {
  Digits d{0, 0, 0};
  for (int i = 0; i < e; ++i) {
    d[i] = a % ell;
    a /= ell;
  }
  return d;
}

u64 join(const Digits& d, u64 ell, int e) {
  u64 a = 0;
  for (int i = e - 1; i >= 0; --i) a = a * ell + d[i];
  return a;
}

// Monic of degree 2 or 3 is irreducible iff it has no root in F_ell.
bool has_root(const std::vector<u64>& low, u64 ell) {
  const std::size_t e = low.size();
  for (u64 x = 0; x < ell; ++x) {
    u64 v = 1;  // leading coefficient, Horner from the top
    for (std::size_t i = e; i-- > 0;) v = (mulmod(v, x, ell) + low[i]) % ell;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

FiniteField::FiniteField(u64 q) : q_(q) {
  u64 ell;
  int e;
  if (!is_odd_prime_power(q, &ell, &e)) throw PreconditionError(std::to_string(q) + " is not an odd prime power");
  if (e > 3) throw CapacityError("field degree above 3 is not supported");
  ell_ = ell;
  e_ = e;
  if (e == 1) return;
  // Lexicographic order on (c_{e-1}, ..., c_0).
  u64 count = ipow(ell, static_cast<unsigned>(e));
  for (u64 code = 0; code < count; ++code) {
    std::vector<u64> low(static_cast<std::size_t>(e));
    u64 c = code;
    for (int i = 0; i < e; ++i) {
      low[static_cast<std::size_t>(i)] = c % ell;
      c /= ell;
    }
    if (!has_root(low, ell)) {
      modulus_ = low;
      return;
    }
  }
  throw InternalContradiction("no irreducible polynomial found");
}

u64 FiniteField::add(u64 a, u64 b) const {
  if (e_ == 1) {
    u64 s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Digits x = split(a, ell_, e_), y = split(b, ell_, e_);
  for (int i = 0; i < e_; ++i) x[i] = (x[i] + y[i]) % ell_;
  return join(x, ell_, e_);
}

u64 FiniteField::neg(u64 a) const {
  if (e_ == 1) return a == 0 ? 0 : q_ - a;
  Digits x = split(a, ell_, e_);
  for (int i = 0; i < e_; ++i) x[i] = x[i] ? ell_ - x[i] : 0;
  return join(x, ell_, e_);
}

u64 FiniteField::sub(u64 a, u64 b) const { return add(a, neg(b)); }

u64 FiniteField::mul(u64 a, u64 b) const {
  if (e_ == 1) return mulmod(a, b, q_);
  Digits x = split(a, ell_, e_), y = split(b, ell_, e_);
  std::array<u64, 5> prod{0, 0, 0, 0, 0};
  for (int i = 0; i < e_; ++i)
    for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % ell_;
  // x^e = -sum modulus_[i] x^i
  for (int k = 2 * e_ - 2; k >= e_; --k) {
    u64 c = prod[k];
    if (!c) continue;
    prod[k] = 0;
    for (int i = 0; i < e_; ++i) prod[k - e_ + i] = (prod[k - e_ + i] + (ell_ - c) * modulus_[i]) % ell_;
  }
  Digits r{prod[0], prod[1], prod[2]};
  return join(r, ell_, e_);
}

u64 FiniteField::pow(u64 a, u64 n) const {
  u64 r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

u64 FiniteField::inv(u64 a) const {
  if (a == 0) throw PreconditionError("inverse of zero");
  return pow(a, q_ - 2);
}

u64 FiniteField::from_int(i64 n) const {
  i64 r = n % static_cast<i64>(ell_);
  if (r < 0) r += static_cast<i64>(ell_);
  return static_cast<u64>(r);
}

bool FiniteField::is_square(u64 a) const { return a == 0 || pow(a, (q_ - 1) / 2) == 1; }

}  // namespace fuchsian
