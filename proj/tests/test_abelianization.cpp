#include <gtest/gtest.h>

#include <random>

#include "fuchsian/abelianization.hpp"
#include "fuchsian/errors.hpp"
#include "fuchsian/scrapes.hpp"

using namespace fuchsian;

namespace {

Signature sig(const char* text) { return parse_signature(text); }

// mid_i straight from the definition: i-th smallest valuation per prime.
std::vector<i64> mids_oracle(const std::vector<i64>& m) {
  std::vector<i64> out(m.size(), 1);
  for (u64 p = 2; p <= 1000; ++p) {
    if (!is_prime(p)) continue;
    std::vector<int> v;
    for (i64 x : m) {
      int e = 0;
      while (x % static_cast<i64>(p) == 0) x /= static_cast<i64>(p), ++e;
      v.push_back(e);
    }
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < v[i]; ++e) out[i] *= static_cast<i64>(p);
  }
  return out;
}

}  // namespace

TEST(Mids, Examples) {
  EXPECT_EQ(mids({15, 42, 63}), (std::vector<i64>{3, 21, 630}));
  EXPECT_EQ(mids({21, 21, 90}), (std::vector<i64>{3, 21, 630}));
  EXPECT_EQ(mids({9}), (std::vector<i64>{9}));
}

TEST(Mids, ChainProductAndOracle) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<i64> val(1, 400);
  for (int it = 0; it < 1000; ++it) {
    std::vector<i64> m(static_cast<std::size_t>(len(rng)));
    for (auto& x : m) x = val(rng);
    auto d = mids(m);
    ASSERT_EQ(d, mids_oracle(m));
    BigInt pm = 1, pd = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      pm *= m[i];
      pd *= d[i];
      if (i) {
        ASSERT_EQ(d[i] % d[i - 1], 0);
      }
    }
    ASSERT_EQ(pm, pd);
    ASSERT_EQ(static_cast<u64>(d.back()), lcm_of(m));
  }
}

TEST(Abelianize, Examples) {
  auto a = abelianize(sig("(0;0;15,42,63)"));
  EXPECT_EQ(a.free_rank, 0);
  EXPECT_EQ(a.stripped_torsion(), (std::vector<i64>{3, 21}));
  EXPECT_TRUE(abelianize(sig("(0;0;4,3,7)")).stripped_torsion().empty());
  EXPECT_EQ(abelianize(sig("(3;0;-)")).free_rank, 6);
  auto b = abelianize(sig("(0;3;2,2)"));
  EXPECT_EQ(b.free_rank, 2);
  EXPECT_EQ(b.stripped_torsion(), (std::vector<i64>{2, 2}));
  EXPECT_EQ(to_string(a), "Z_3 x Z_21");
  EXPECT_EQ(to_string(abelianize(sig("(0;0;2,3,7)"))), "1");
}

TEST(SameAbelianization, Examples) {
  EXPECT_TRUE(same_abelianization(sig("(0;0;15,42,63)"), sig("(0;0;21,21,90)")));
  EXPECT_TRUE(same_abelianization(sig("(0;0;4,3,7)"), sig("(0;0;2,3,7)")));
  EXPECT_FALSE(same_abelianization(sig("(0;0;2,3,7)"), sig("(0;0;2,2,2,3)")));
}

TEST(LcmForcedEqual, Examples) {
  EXPECT_EQ(lcm_forced_equal(sig("(0;0;15,42,63)"), sig("(0;0;21,21,90)")), 630);
  EXPECT_EQ(lcm_forced_equal(sig("(0;0;2,3,7)"), sig("(0;0;2,3,7)")), 42);
  EXPECT_THROW(lcm_forced_equal(sig("(2;0;4,6)"), sig("(2;0;2,12)")), PreconditionError);
}

// Equal abelianization and equal chi force equal multisets when k <= 2.
TEST(LessThanTwo, Exhaustive) {
  std::vector<std::vector<i64>> all;
  for (i64 a = 2; a <= 30; ++a) {
    all.push_back({a});
    for (i64 b = a; b <= 30; ++b) all.push_back({a, b});
  }
  for (const auto& m : all)
    for (const auto& n : all) {
      if (m.size() != n.size() || m == n) continue;
      Signature sm{2, 0, m}, sn{2, 0, n};
      bool same = same_abelianization(sm, sn) && euler_char(sm) == euler_char(sn);
      ASSERT_FALSE(same) << join_ints(m) << " vs " << join_ints(n);
    }
}

// Unpunctured (g;0;n) with gcd(n)=1 and punctured (0;2g+1;m) share b1; the
// abelianizations then agree exactly when the torsion parts do.
TEST(MixedType, PunctureFoldingCase) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<i64> val(2, 30);
  int hits = 0;
  for (int it = 0; it < 3000; ++it) {
    std::vector<i64> n{val(rng), val(rng), val(rng)};
    if (std::gcd(std::gcd(n[0], n[1]), n[2]) != 1) continue;
    Signature un{1, 0, n};
    auto ab = abelianize(un);
    // Punctured side with torsion chosen as the unpunctured chain.
    std::vector<i64> m = ab.stripped_torsion();
    Signature pu = normalize({0, 3, m});
    EXPECT_EQ(first_betti(pu), first_betti(un));
    EXPECT_TRUE(same_abelianization(pu, un));
    ++hits;
  }
  EXPECT_GT(hits, 100);
}

TEST(AbelianQuotient, Divisibility) {
  AbelianInvariants z3z21{0, {3, 21}};
  EXPECT_TRUE(is_abelian_quotient({3, 3}, z3z21));
  EXPECT_TRUE(is_abelian_quotient({21}, z3z21));
  EXPECT_FALSE(is_abelian_quotient({9}, z3z21));
  EXPECT_FALSE(is_abelian_quotient({3, 3, 3}, z3z21));
  EXPECT_TRUE(is_abelian_quotient({5, 5}, AbelianInvariants{2, {}}));
  EXPECT_TRUE(is_abelian_quotient({4, 2, 2}, AbelianInvariants{1, {2, 2}}));
}
