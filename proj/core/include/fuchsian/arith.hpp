#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fuchsian {

using BigInt = mpz_class;
using Rational = mpq_class;

using u64 = std::uint64_t;
using i64 = std::int64_t;

// nullopt stands for +infinity (valuation of zero).
std::optional<i64> valuation(u64 ell, u64 d);
std::optional<i64> valuation(u64 ell, const BigInt& d);
std::optional<i64> valuation(u64 ell, const Rational& x);

bool is_prime(u64 n);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

// Prime factorization, primes ascending.
std::vector<std::pair<u64, int>> factorize(u64 n);
std::vector<u64> divisors(u64 n);
std::vector<u64> prime_divisors(u64 n);

int moebius(u64 n);
u64 totient(u64 n);
int moebius_sum_over_divisors(u64 n);

// Returns (residue, modulus). Moduli must be pairwise coprime.
std::pair<u64, u64> crt_solve(const std::vector<std::pair<u64, u64>>& congruences);

// Overflow-checked helpers; throw CapacityError on overflow.
u64 checked_mul(u64 a, u64 b);
u64 checked_lcm(u64 a, u64 b);
u64 lcm_of(const std::vector<i64>& xs);
u64 ipow(u64 base, unsigned e);

// q = ell^e with ell an odd prime; e reported through the out parameter.
bool is_odd_prime_power(u64 q, u64* ell = nullptr, int* e = nullptr);

// Positive integer kept as prime -> exponent.
class FactoredInteger {
 public:
  FactoredInteger() = default;
  explicit FactoredInteger(u64 n);
  static FactoredInteger power(u64 base, const BigInt& exponent);

  FactoredInteger& operator*=(const FactoredInteger& other);
  friend FactoredInteger operator*(FactoredInteger a, const FactoredInteger& b) {
    a *= b;
    return a;
  }
  bool operator==(const FactoredInteger& other) const = default;

  const std::map<u64, BigInt>& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }
  BigInt bit_length_bound() const;  // >= log2(value), exact upper bound
  // Exact value; throws CapacityError when the value would exceed max_bits.
  BigInt value(std::size_t max_bits = 1u << 26) const;
  // "2^3 * 3 * 7"
  std::string to_string() const;
  // Three significant digits in scientific notation, e.g. "5.97e35".
  std::string decimal_approx() const;

 private:
  std::map<u64, BigInt> exps_;
};

}  // namespace fuchsian
