#include "fuchsian/arith.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "fuchsian/errors.hpp"

namespace fuchsian {

namespace {

void require_prime(u64 ell) {
  if (!is_prime(ell)) throw PreconditionError("valuation base " + std::to_string(ell) + " is not prime");
}

}  // namespace

std::optional<i64> valuation(u64 ell, u64 d) {
  require_prime(ell);
  if (d == 0) return std::nullopt;
  i64 v = 0;
  while (d % ell == 0) {
    d /= ell;
    ++v;
  }
  return v;
}

std::optional<i64> valuation(u64 ell, const BigInt& d) {
  require_prime(ell);
  if (d == 0) return std::nullopt;
  BigInt x = abs(d);
  BigInt p = ell;
  mp_bitcnt_t v = mpz_remove(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return static_cast<i64>(v);
}

std::optional<i64> valuation(u64 ell, const Rational& x) {
  if (x == 0) {
    require_prime(ell);
    return std::nullopt;
  }
  return *valuation(ell, BigInt(x.get_num())) - *valuation(ell, BigInt(x.get_den()));
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  if (n == 0) throw PreconditionError("cannot factor 0");
  std::vector<std::pair<u64, int>> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
    if (is_prime(n)) break;
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> ds{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t cur = ds.size();
    u64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> ps;
  for (auto [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

int moebius(u64 n) {
  if (n == 0) throw PreconditionError("moebius of 0");
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

u64 totient(u64 n) {
  if (n == 0) throw PreconditionError("totient of 0");
  u64 phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

int moebius_sum_over_divisors(u64 n) {
  int s = 0;
  for (u64 d : divisors(n)) s += moebius(d);
  return s;
}

std::pair<u64, u64> crt_solve(const std::vector<std::pair<u64, u64>>& congruences) {
  BigInt r = 0, m = 1;
  for (auto [res, mod] : congruences) {
    if (mod == 0) throw PreconditionError("crt modulus 0");
    BigInt bm = mod;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), bm.get_mpz_t());
    if (g != 1) throw PreconditionError("crt moduli not pairwise coprime");
    // r + m*t = res (mod mod)
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), BigInt(m % bm).get_mpz_t(), bm.get_mpz_t());
    BigInt t = (BigInt(res) - r) % bm;
    if (t < 0) t += bm;
    t = t * inv % bm;
    r += m * t;
    m *= bm;
    r %= m;
  }
  if (!m.fits_ulong_p()) throw CapacityError("crt modulus exceeds 64 bits");
  return {r.get_ui(), m.get_ui()};
}

u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("integer overflow in product");
  return r;
}

u64 checked_lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b);
}

u64 lcm_of(const std::vector<i64>& xs) {
  u64 l = 1;
  for (i64 x : xs) {
    if (x <= 0) throw PreconditionError("lcm of non-positive entry");
    l = checked_lcm(l, static_cast<u64>(x));
  }
  return l;
}

u64 ipow(u64 base, unsigned e) {
  u64 r = 1;
  while (e--) r = checked_mul(r, base);
  return r;
}

bool is_odd_prime_power(u64 q, u64* ell, int* e) {
  if (q < 3 || q % 2 == 0) return false;
  auto f = factorize(q);
  if (f.size() != 1) return false;
  if (ell) *ell = f[0].first;
  if (e) *e = f[0].second;
  return true;
}

FactoredInteger::FactoredInteger(u64 n) {
  if (n == 0) throw PreconditionError("FactoredInteger of 0");
  for (auto [p, e] : factorize(n)) exps_[p] = e;
}

FactoredInteger FactoredInteger::power(u64 base, const BigInt& exponent) {
  if (exponent < 0) throw PreconditionError("negative exponent");
  FactoredInteger f(base);
  if (exponent == 0) return FactoredInteger();
  for (auto& [p, e] : f.exps_) e *= exponent;
  return f;
}

FactoredInteger& FactoredInteger::operator*=(const FactoredInteger& other) {
  for (const auto& [p, e] : other.exps_) exps_[p] += e;
  return *this;
}

BigInt FactoredInteger::bit_length_bound() const {
  BigInt bits = 0;
  for (const auto& [p, e] : exps_) {
    BigInt bp = p;
    bits += e * BigInt(mpz_sizeinbase(bp.get_mpz_t(), 2));
  }
  return bits;
}

BigInt FactoredInteger::value(std::size_t max_bits) const {
  if (bit_length_bound() > max_bits) throw CapacityError("factored value too large to expand");
  BigInt v = 1;
  for (const auto& [p, e] : exps_) {
    BigInt t;
    mpz_ui_pow_ui(t.get_mpz_t(), p, e.get_ui());
    v *= t;
  }
  return v;
}

std::string FactoredInteger::to_string() const {
  if (exps_.empty()) return "1";
  std::string s;
  for (const auto& [p, e] : exps_) {
    if (!s.empty()) s += " * ";
    s += std::to_string(p);
    if (e != 1) s += "^" + e.get_str();
  }
  return s;
}

std::string FactoredInteger::decimal_approx() const {
  // log10 of the value at a precision that covers the integer part of the
  // largest exponent plus enough fractional bits for three digits.
  long prec = 96;
  for (const auto& [p, e] : exps_) prec = std::max<long>(prec, 96 + static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)));
  prec += 8;
  mpfr_t acc, term, ex;
  mpfr_inits2(prec, acc, term, ex, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(acc, 1);
  for (const auto& [p, e] : exps_) {
    mpfr_set_ui(term, p, MPFR_RNDN);
    mpfr_log10(term, term, MPFR_RNDN);
    mpfr_set_z(ex, e.get_mpz_t(), MPFR_RNDN);
    mpfr_mul(term, term, ex, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
  }
  mpfr_floor(term, acc);
  BigInt exponent;
  mpfr_get_z(exponent.get_mpz_t(), term, MPFR_RNDN);
  mpfr_sub(acc, acc, term, MPFR_RNDN);  // fractional part
  mpfr_exp10(acc, acc, MPFR_RNDN);      // mantissa in [1,10)
  mpfr_mul_ui(acc, acc, 100, MPFR_RNDN);
  mpfr_round(acc, acc);
  long digits = mpfr_get_si(acc, MPFR_RNDN);
  mpfr_clears(acc, term, ex, static_cast<mpfr_ptr>(nullptr));
  if (digits >= 1000) {
    digits /= 10;
    exponent += 1;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%ld.%02ld", digits / 100, digits % 100);
  return std::string(buf) + "e" + exponent.get_str();
}

}  // namespace fuchsian
