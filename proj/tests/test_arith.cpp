#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fuchsian/arith.hpp"
#include "fuchsian/errors.hpp"

using namespace fuchsian;

TEST(Valuation, Basics) {
  EXPECT_EQ(valuation(2, u64{12}), 2);
  EXPECT_FALSE(valuation(5, u64{0}).has_value());
  EXPECT_EQ(valuation(3, Rational(10, 9)), -2);
  EXPECT_THROW(valuation(4, u64{8}), PreconditionError);
}

TEST(Valuation, Ultrametric) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-500, 500), den(1, 500);
  for (u64 ell : {2, 3, 5, 7}) {
    for (int it = 0; it < 500; ++it) {
      Rational r(num(rng), den(rng)), s(num(rng), den(rng));
      r.canonicalize();
      s.canonicalize();
      if (r == 0 || s == 0 || r + s == 0) continue;
      i64 vr = *valuation(ell, r), vs = *valuation(ell, s), vsum = *valuation(ell, Rational(r + s));
      EXPECT_GE(vsum, std::min(vr, vs));
      if (vr != vs) {
        EXPECT_EQ(vsum, std::min(vr, vs));
      }
    }
  }
}

TEST(Moebius, Values) {
  EXPECT_EQ(moebius(1), 1);
  EXPECT_EQ(moebius(6), 1);
  EXPECT_EQ(moebius(12), 0);
  EXPECT_EQ(moebius(30), -1);
  EXPECT_EQ(moebius_sum_over_divisors(1), 1);
  EXPECT_EQ(moebius_sum_over_divisors(30), 0);
  EXPECT_EQ(moebius_sum_over_divisors(97), 0);
}

TEST(Totient, AgainstCoprimeCount) {
  EXPECT_EQ(totient(1), 1u);
  EXPECT_EQ(totient(9), 6u);
  for (u64 n = 1; n <= 700; ++n) {
    u64 count = 0;
    for (u64 r = 1; r <= n; ++r) count += std::gcd(r, n) == 1;
    ASSERT_EQ(totient(n), count) << n;
  }
}

TEST(Multiplicative, CoprimePairs) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<u64> pick(1, 3000);
  int checked = 0;
  while (checked < 300) {
    u64 a = pick(rng), b = pick(rng);
    if (std::gcd(a, b) != 1) continue;
    ++checked;
    EXPECT_EQ(moebius(a * b), moebius(a) * moebius(b));
    EXPECT_EQ(totient(a * b), totient(a) * totient(b));
  }
}

TEST(Moebius, InversionRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<u64> pick(1, 10000);
  std::uniform_int_distribution<i64> val(-1000, 1000);
  for (int it = 0; it < 40; ++it) {
    u64 n = pick(rng);
    auto ds = divisors(n);
    std::map<u64, i64> f, g;
    for (u64 d : ds) f[d] = val(rng);
    for (u64 d : ds)
      for (u64 e : divisors(d)) g[d] += f[e];
    for (u64 d : ds) {
      i64 back = 0;
      for (u64 e : divisors(d)) back += moebius(d / e) * g[e];
      ASSERT_EQ(back, f[d]);
    }
  }
}

TEST(Crt, Examples) {
  EXPECT_EQ(crt_solve({{1, 3}, {2, 5}}), (std::pair<u64, u64>{7, 15}));
  EXPECT_EQ(crt_solve({{0, 7}}), (std::pair<u64, u64>{0, 7}));
  EXPECT_EQ(crt_solve({{1, 2}, {1, 3}, {1, 5}}), (std::pair<u64, u64>{1, 30}));
  EXPECT_THROW(crt_solve({{1, 4}, {1, 6}}), PreconditionError);
}

TEST(Crt, ScanOracle) {
  for (u64 a = 0; a < 4; ++a)
    for (u64 b = 0; b < 9; ++b)
      for (u64 c = 0; c < 5; ++c) {
        auto [r, m] = crt_solve({{a, 4}, {b, 9}, {c, 5}});
        ASSERT_EQ(m, 180u);
        u64 want = 0;
        while (!(want % 4 == a && want % 9 == b && want % 5 == c)) ++want;
        ASSERT_EQ(r, want);
      }
}

TEST(Primes, MillerRabinAgainstSieve) {
  std::vector<bool> composite(20000, false);
  for (u64 i = 2; i < 20000; ++i) {
    if (!composite[i])
      for (u64 j = i * i; j < 20000; j += i) composite[j] = true;
    ASSERT_EQ(is_prime(i), !composite[i]) << i;
  }
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(1000000007));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
}

TEST(Factorize, RoundTrip) {
  for (u64 n = 1; n < 5000; ++n) {
    u64 back = 1;
    for (auto [p, e] : factorize(n)) {
      ASSERT_TRUE(is_prime(p));
      back *= ipow(p, static_cast<unsigned>(e));
    }
    ASSERT_EQ(back, n);
  }
}

TEST(PrimePower, Detection) {
  u64 ell = 0;
  int e = 0;
  EXPECT_TRUE(is_odd_prime_power(27, &ell, &e));
  EXPECT_EQ(ell, 3u);
  EXPECT_EQ(e, 3);
  EXPECT_FALSE(is_odd_prime_power(8));
  EXPECT_FALSE(is_odd_prime_power(15));
  EXPECT_FALSE(is_odd_prime_power(1));
}

TEST(Checked, Overflow) {
  EXPECT_THROW(checked_mul(1ULL << 40, 1ULL << 40), CapacityError);
  EXPECT_EQ(checked_lcm(4, 6), 12u);
  EXPECT_EQ(lcm_of({15, 42, 63}), 630u);
}

TEST(FactoredInteger, OrderOfExampleOne) {
  auto q = FactoredInteger::power(5, 48) * FactoredInteger(168);
  EXPECT_EQ(q.to_string(), "2^3 * 3 * 5^48 * 7");
  BigInt want;
  mpz_pow_ui(want.get_mpz_t(), BigInt(5).get_mpz_t(), 48);
  want *= 168;
  EXPECT_EQ(q.value(), want);
  EXPECT_EQ(q.decimal_approx(), "5.97e35");
}

TEST(FactoredInteger, DecimalApproxOfHugeValue) {
  auto q = FactoredInteger::power(7, 200) * FactoredInteger(660);
  EXPECT_EQ(q.decimal_approx(), "6.90e171");
  EXPECT_TRUE(FactoredInteger(1).is_one());
  EXPECT_EQ(FactoredInteger(1).to_string(), "1");
}

TEST(FactoredInteger, BitLengthBoundIsUpperBound) {
  for (u64 n : {2ULL, 3ULL, 255ULL, 256ULL, 1000003ULL, 999999999989ULL}) {
    FactoredInteger f(n);
    EXPECT_GE(f.bit_length_bound(), BigInt(mpz_sizeinbase(f.value().get_mpz_t(), 2) - 1));
  }
}
