#include <gtest/gtest.h>

#include <random>

#include "fuchsian/errors.hpp"
#include "fuchsian/signatures.hpp"

using namespace fuchsian;

namespace {

Signature sig(const char* text) { return parse_signature(text); }

Signature random_raw(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(0, 3), len(0, 5), cone(0, 12);
  Signature s;
  s.genus = small(rng);
  s.punctures = small(rng);
  int k = len(rng);
  for (int i = 0; i < k; ++i) {
    int c = cone(rng);
    s.cones.push_back(c == 0 ? kInfiniteCone : c);
  }
  return s;
}

}  // namespace

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize({1, 1, {3, 1, kInfiniteCone}}), (Signature{0, 4, {3}}));
  EXPECT_EQ(normalize({0, 0, {2, 3, 7}}), (Signature{0, 0, {2, 3, 7}}));
  EXPECT_EQ(normalize({2, 1, {5}}), (Signature{0, 5, {5}}));
  EXPECT_EQ(normalize({0, 0, {7, 2, 3}}).cones, (std::vector<i64>{2, 3, 7}));
}

TEST(Normalize, IdempotentAndPreservesChi) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 2000; ++it) {
    Signature raw = random_raw(rng);
    Signature n = normalize(raw);
    ASSERT_EQ(normalize(n), n);
    for (i64 c : n.cones) ASSERT_GE(c, 2);
    ASSERT_TRUE(std::is_sorted(n.cones.begin(), n.cones.end()));
    if (n.punctured()) {
      ASSERT_EQ(n.genus, 0);
    }
    ASSERT_EQ(euler_char(raw), euler_char(n));
  }
}

TEST(EulerChar, Examples) {
  EXPECT_EQ(euler_char(sig("(0;0;4,3,7)")), Rational(-23, 84));
  EXPECT_EQ(euler_char(sig("(0;0;2,3,7)")), Rational(-1, 42));
  EXPECT_EQ(euler_char(sig("(1;0;-)")), 0);
  EXPECT_EQ(euler_char(sig("(0;0;15,42,63)")), Rational(-563, 630));
  EXPECT_EQ(euler_char(sig("(0;0;21,21,90)")), Rational(-563, 630));
}

TEST(FirstBetti, Examples) {
  EXPECT_EQ(first_betti(sig("(0;3;2,2)")), 2);
  EXPECT_EQ(first_betti(sig("(2;0;5)")), 4);
  EXPECT_EQ(first_betti(sig("(0;0;15,42,63)")), 0);
}

TEST(FirstBetti, BoundsWithEqualityExactlyWhenTorsionFree) {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 2000; ++it) {
    Signature s = normalize(random_raw(rng));
    Rational chi = euler_char(s);
    Rational bound = (s.punctured() ? 1 : 2) - chi;
    Rational b1 = first_betti(s);
    ASSERT_LE(b1, bound) << to_string(s);
    ASSERT_EQ(b1 == bound, s.cones.empty()) << to_string(s);
  }
}

TEST(IsFuchsian, Examples) {
  EXPECT_TRUE(is_fuchsian(sig("(0;0;2,3,7)")));
  EXPECT_FALSE(is_fuchsian(sig("(0;2;-)")));
  EXPECT_FALSE(is_fuchsian(sig("(0;0;2,3,5)")));
  EXPECT_FALSE(is_fuchsian(sig("(0;0;2,3,6)")));
  EXPECT_TRUE(is_fuchsian(sig("(2;0;-)")));
}

TEST(Isomorphic, Examples) {
  EXPECT_TRUE(isomorphic(sig("(1;1;3)"), sig("(0;3;3)")));
  EXPECT_FALSE(isomorphic(sig("(0;0;2,3,7)"), sig("(0;0;4,3,7)")));
  EXPECT_FALSE(isomorphic(sig("(0;0;15,42,63)"), sig("(0;0;21,21,90)")));
}

TEST(Parse, GrammarAndRoundTrip) {
  EXPECT_EQ(sig("(1;1;3,inf)"), (Signature{0, 4, {3}}));
  EXPECT_EQ(to_string(sig("(0;0;15,42,63)")), "(0;0;15,42,63)");
  EXPECT_EQ(to_string(sig("(3;0;-)")), "(3;0;-)");
  EXPECT_EQ(to_compact_string(Signature{100, 0, {3, 3, 3, 7}}), "(100;0;3^(3),7)");
  std::mt19937_64 rng(1);
  for (int it = 0; it < 500; ++it) {
    Signature s = normalize(random_raw(rng));
    ASSERT_EQ(parse_signature(to_string(s)), s);
  }
}

TEST(Parse, ErrorsCarryOffsets) {
  try {
    parse_signature("(0;0;)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset, 5u);
  }
  EXPECT_THROW(parse_signature("0;0;2,3,7"), ParseError);
  EXPECT_THROW(parse_signature("(0;0;2,3,7"), ParseError);
  EXPECT_THROW(parse_signature("(0;0;2,x,7)"), ParseError);
  EXPECT_THROW(parse_signature("(0;0;2,3,7) "), ParseError);
  EXPECT_THROW(parse_signature("(-1;0;2)"), ParseError);
}
