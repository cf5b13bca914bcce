#include <gtest/gtest.h>

#include <random>

#include "fuchsian/errors.hpp"
#include "fuchsian/finite_field.hpp"
#include "fuchsian/finite_groups.hpp"
#include "fuchsian/perm_group.hpp"

using namespace fuchsian;

namespace {

Signature sig(const char* text) { return parse_signature(text); }

std::set<u64> census(const PSL2& G) {
  std::set<u64> out;
  for (const auto& x : G.all_elements()) out.insert(G.element_order(x));
  return out;
}

// {1, 2, 3, divisors of (q-1)/2 and (q+1)/2, ell}.
std::set<u64> predicted_orders(u64 q) {
  u64 ell = 0;
  is_odd_prime_power(q, &ell);
  std::set<u64> out{1, ell};
  for (u64 d : divisors((q - 1) / 2)) out.insert(d);
  for (u64 d : divisors((q + 1) / 2)) out.insert(d);
  return out;
}

}  // namespace

TEST(FiniteField, AxiomsOnSmallFields) {
  for (u64 q : {3ULL, 5ULL, 9ULL, 25ULL, 27ULL, 49ULL}) {
    FiniteField F(q);
    std::set<u64> squares;
    for (u64 a = 0; a < q; ++a) {
      ASSERT_EQ(F.add(a, F.neg(a)), 0u);
      if (a) {
        ASSERT_EQ(F.mul(a, F.inv(a)), 1u);
      }
      ASSERT_EQ(F.pow(a, q), a);
      squares.insert(F.mul(a, a));
      for (u64 b = 0; b < q; b += 3) ASSERT_EQ(F.mul(a, b), F.mul(b, a));
    }
    ASSERT_EQ(squares.size(), (q + 1) / 2);
  }
}

TEST(Dihedral, Law) {
  DihedralGroup D(7);
  EXPECT_EQ(D.order(), 14u);
  EXPECT_EQ(D.element_order(D.r()), 7u);
  EXPECT_EQ(D.element_order(D.s()), 2u);
  EXPECT_EQ(D.element_order(D.identity()), 1u);
  // s r s = r^-1
  EXPECT_EQ(D.mul(D.mul(D.s(), D.r()), D.s()), D.inv(D.r()));
  EXPECT_EQ(D.elements().size(), 14u);
}

TEST(PSL2, OrdersAndCensus) {
  for (u64 q : {3ULL, 5ULL, 7ULL, 9ULL, 11ULL, 13ULL, 25ULL, 27ULL}) {
    PSL2 G(q);
    EXPECT_EQ(G.order(), BigInt(q * (q * q - 1) / 2));
    EXPECT_EQ(G.all_elements().size(), G.order().get_ui());
    EXPECT_EQ(census(G), predicted_orders(q)) << q;
    EXPECT_TRUE(G.has_element_of_order(2));
  }
  EXPECT_EQ(census(PSL2(11)), (std::set<u64>{1, 2, 3, 5, 6, 11}));
}

TEST(PSL2, ElementOfOrder) {
  for (u64 q : {5ULL, 7ULL, 11ULL, 13ULL, 27ULL, 61ULL, 337ULL}) {
    PSL2 G(q);
    for (u64 c : G.element_orders()) EXPECT_EQ(G.element_order(G.element_of_order(c)), c);
  }
  EXPECT_THROW(PSL2(11).element_of_order(4), PreconditionError);
  EXPECT_THROW(PSL2(11).make(1, 1, 1, 1), PreconditionError);
}

TEST(PSL2, CanonicalIdempotent) {
  PSL2 G(13);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Mat2 x = G.random_element(rng);
    EXPECT_EQ(G.canonical(x), x);
    EXPECT_TRUE(G.is_identity(G.mul(x, G.inv(x))));
    EXPECT_TRUE(G.is_identity(G.pow(x, G.element_order(x))));
  }
}

TEST(PSL2, GeneratedSubgroupOfOrdersFiveAndThree) {
  PSL2 G(11);
  std::mt19937_64 rng(5);
  Mat2 a = G.element_of_order(5);
  bool found = false;
  for (int it = 0; it < 200 && !found; ++it) {
    Mat2 b = G.random_conjugate(G.element_of_order(3), rng);
    auto H = G.generated_subgroup({a, b});
    if (H.size() == 660) {
      found = true;
      EXPECT_EQ(G.subgroup_order({a, b}), BigInt(660));
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(G.generated_subgroup({G.identity()}).size(), 1u);
}

TEST(PSL2, SchreierSimsMatchesClosure) {
  std::mt19937_64 rng(3);
  for (u64 q : {5ULL, 7ULL, 9ULL, 13ULL}) {
    PSL2 G(q);
    for (int it = 0; it < 10; ++it) {
      std::vector<Mat2> gens{G.random_element(rng)};
      if (it % 2) gens.push_back(G.random_element(rng));
      EXPECT_EQ(G.subgroup_order(gens), BigInt(G.generated_subgroup(gens).size()));
    }
  }
  PSL2 big(1009);
  std::mt19937_64 r2(2);
  EXPECT_EQ(big.subgroup_order({big.random_element(r2), big.random_element(r2)}), BigInt(513621360));
}

TEST(PermGroup, Symmetric) {
  Perm cycle{1, 2, 3, 4, 0}, swap{1, 0, 2, 3, 4};
  EXPECT_EQ(permutation_group_order({cycle, swap}, 5), BigInt(120));
  EXPECT_EQ(permutation_group_order({cycle}, 5), BigInt(5));
  EXPECT_EQ(permutation_group_order({}, 5), BigInt(1));
  EXPECT_TRUE(perm_is_identity(perm_compose(cycle, perm_inverse(cycle))));
}

TEST(Descriptor, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_group_descriptor("psl2:7")), "psl2:7");
  EXPECT_EQ(parse_group_descriptor("dihedral:10").order, BigInt(10));
  EXPECT_EQ(parse_group_descriptor("alt4").order, BigInt(12));
  EXPECT_EQ(parse_group_descriptor("cyclic:6").order, BigInt(6));
  EXPECT_EQ(parse_group_descriptor("trivial").order, BigInt(1));
  EXPECT_THROW(parse_group_descriptor("psl2:8"), PreconditionError);
  EXPECT_THROW(parse_group_descriptor("sym:4"), ParseError);
}

TEST(GroupTable, Classes) {
  GroupTable A4 = make_table(GroupDescriptor::alt4());
  EXPECT_EQ(A4.size(), 12u);
  EXPECT_EQ(A4.classes().size(), 4u);
  EXPECT_EQ(A4.element_orders(), (std::set<u64>{1, 2, 3}));
  GroupTable P7 = make_table(GroupDescriptor::psl2(7));
  EXPECT_EQ(P7.classes().size(), 6u);
}

TEST(Epimorphisms, TrivialTarget) {
  GroupTable T = make_table(GroupDescriptor::trivial());
  for (const char* s : {"(0;0;2,3,7)", "(2;0;-)", "(0;3;4)"}) {
    EXPECT_EQ(enumerate_epimorphisms(sig(s), T).count, 1u);
    EXPECT_TRUE(exists_epimorphism(sig(s), T));
  }
}

TEST(Epimorphisms, HurwitzCount) {
  GroupTable P7 = make_table(GroupDescriptor::psl2(7));
  EXPECT_EQ(enumerate_epimorphisms(sig("(0;0;2,3,7)"), P7).count, 336u);
  {
    EpiQuery q;
    q.collect = true;
    auto r = enumerate_epimorphisms(sig("(0;0;2,3,7)"), P7, q);
    EXPECT_EQ(r.count, 336u);
    for (const auto& h : r.homs) ASSERT_TRUE(satisfies_relation(sig("(0;0;2,3,7)"), P7, h));
  }
}

TEST(Epimorphisms, ExampleThreeProfiles) {
  GroupTable A4 = make_table(GroupDescriptor::alt4());
  EXPECT_TRUE(exists_epimorphism(sig("(0;0;2,3,3,315)"), A4, {2, 3, 3, 3}));
  // Cones sort to 15,18,21; the profile (3,2,3) is aligned with them.
  EXPECT_TRUE(exists_epimorphism(sig("(0;0;15,18,21)"), A4, {3, 2, 3}));
  EXPECT_TRUE(exists_epimorphism(sig("(0;0;15,18,21)"), A4, {3, 3, 3}));
}

TEST(Epimorphisms, InvariantUnderPermutingEqualCones) {
  GroupTable A4 = make_table(GroupDescriptor::alt4());
  auto a = enumerate_epimorphisms(sig("(0;0;3,3,6)"), A4, {{3, 3, 2}}).count;
  auto b = enumerate_epimorphisms(Signature{0, 0, {3, 3, 6}}, A4, {{3, 3, 2}}).count;
  EXPECT_EQ(a, b);
  GroupTable D = make_table(GroupDescriptor::dihedral(12));
  for (const char* s : {"(1;0;2,2,3)", "(0;1;2,2,6)"}) {
    Signature x = sig(s);
    EpiQuery q;
    q.collect = true;
    u64 base = enumerate_epimorphisms(x, D, q).count;
    EpiQuery pruned;
    EXPECT_EQ(enumerate_epimorphisms(x, D, pruned).count, base);
  }
}

// Before surjectivity, homomorphisms from a punctured group number
// |G|^{2g+p-1} * prod #{x : x^{m_i} = 1}.
TEST(Epimorphisms, FreeProductCount) {
  GroupTable A4 = make_table(GroupDescriptor::alt4());
  GroupTable S = make_table(GroupDescriptor::dihedral(6));
  for (const GroupTable* G : {&A4, &S}) {
    for (const char* text : {"(0;1;2,3)", "(0;2;2)", "(0;3;3)", "(0;2;2,3)"}) {
      Signature s = sig(text);
      EpiQuery q;
      q.surjective = false;
      u64 got = enumerate_epimorphisms(s, *G, q).count;
      u64 want = 1;
      for (i64 e = 0; e < 2 * s.genus + s.punctures - 1; ++e) want *= G->size();
      for (i64 m : s.cones) {
        u64 roots = 0;
        for (GroupTable::Elem x = 0; x < G->size(); ++x) roots += static_cast<i64>(G->element_order(x)) <= m && m % static_cast<i64>(G->element_order(x)) == 0;
        want *= roots;
      }
      EXPECT_EQ(got, want) << text << " -> " << G->name();
    }
  }
}

TEST(Epimorphisms, CapacityGuard) {
  EpiQuery q;
  q.max_leaves = 10;
  GroupTable P7 = make_table(GroupDescriptor::psl2(7));
  EXPECT_THROW(enumerate_epimorphisms(sig("(0;0;2,3,7)"), P7, q), CapacityError);
  EXPECT_THROW(make_table(GroupDescriptor::psl2(31)), CapacityError);
}

TEST(ProductOneTuple, Small) {
  GroupTable P5 = make_table(GroupDescriptor::psl2(5));
  EXPECT_TRUE(exists_product_one_tuple(P5, {2, 3, 5}));
  EXPECT_FALSE(exists_product_one_tuple(P5, {2, 2, 4}));
  EXPECT_TRUE(exists_product_one_tuple(P5, {1, 1}));
}
