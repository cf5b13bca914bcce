#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuchsian/arith.hpp"
#include "fuchsian/finite_groups.hpp"
#include "fuchsian/scrapes.hpp"
#include "fuchsian/signatures.hpp"

namespace fuchsian {

// Explicit generator images, in the order a1,b1,...,ag,bg,y1..yp,x1..xk.
struct Witness {
  enum class Kind { none, dihedral, psl2, table };
  Kind kind = Kind::none;
  i64 dihedral_n = 0;
  std::vector<DihedralElement> dihedral;
  u64 q = 0;
  std::vector<Mat2> psl;
  std::vector<GroupTable::Elem> table;
};

struct SmoothRep {
  Signature source;
  GroupDescriptor target;          // the image
  std::vector<i64> elliptic_orders;  // aligned with source.cones
  std::vector<i64> parabolic_orders;
  Witness witness;
};

// Relations, exact orders and image order. On failure writes a reason.
bool check_witness(const SmoothRep& rep, std::string* why = nullptr);

// Every m_i divides one of ell, (q-1)/2, (q+1)/2. Requires |m| >= 3.
bool macbeath_admits(const std::vector<i64>& m, u64 q);
// Same, except that (2,2,ell) is rejected when q = 3 mod 4: a product of two
// involutions of order ell would need a dihedral subgroup of order 2*ell,
// and the normalizer of a Sylow ell-subgroup has odd order then.
bool macbeath_admits_refined(const std::vector<i64>& m, u64 q);

// Smooth map of (g;p;m), g >= 1, onto a dihedral group. Only a1, b1 are
// nontrivial among the hyperbolic generators; parabolic ones map trivially.
SmoothRep smooth_dihedral(const std::vector<i64>& m, i64 genus = 1, i64 punctures = 0);

struct PrimeSearchSpec {
  u64 X = 1, M = 1;
  std::vector<u64> P, P1, P2, P3;
  std::vector<u64> moduli;  // one per incongruence q != +-1 (mod *)
  u64 modulus_lcm = 2;      // lcm of 2X and the moduli
};

PrimeSearchSpec prime_search_spec(const Factor& x);
bool satisfies_spec(const PrimeSearchSpec& spec, u64 q);

struct FindQResult {
  u64 q = 0;
  PrimeSearchSpec spec;
  u64 ceiling = 0;
  // The lemma's own route: k from the k_p choices, then a prime in 1 + 2kX + yL.
  std::optional<u64> constructive_k;
  std::optional<u64> constructive_q;
};

inline constexpr u64 kDefaultMaxScan = 10'000'000;

// Smallest odd prime power (exponent <= 3) satisfying the spec.
FindQResult find_q(const Factor& x, u64 max_scan = kDefaultMaxScan, bool diagnostics = false);

// q = l^e with l an odd prime and e <= 3.
bool is_small_prime_power(u64 q);

// Elements of exactly these orders in PSL(2,q) with product 1, found by a
// seeded random search. Entries equal to 1 map to the identity.
std::optional<std::vector<Mat2>> psl2_product_one_tuple(const PSL2& G, const std::vector<i64>& orders,
                                                        u64 salt = 0);

// Smooth-type map into PSL(2,q) where generator orders are prescribed for
// parabolic and elliptic generators (1 = trivial); hyperbolic ones trivial.
SmoothRep psl2_rep(const Signature& s, u64 q, const std::vector<i64>& parabolic, const std::vector<i64>& elliptic);

// Punctured source: x_i random of order elliptic[i], y1 of order first_parabolic
// when given, y_p absorbing the relation, other generators trivial.
SmoothRep psl2_free_rep(const Signature& s, u64 q, const std::vector<i64>& elliptic,
                        std::optional<u64> first_parabolic = std::nullopt);

struct Smoothness {
  std::vector<i64> factor;  // aligned with s.cones
  Rational chi;
};

// Least chi(c) over c | m realizable by an epimorphism onto G; brute force.
// Throws PreconditionError when G is not a quotient at all.
Smoothness maximal_smoothness(const GroupTable& G, const Signature& s);

// Riemann-Hurwitz. Throws InconsistencyError for non-integral genus.
Signature kernel_signature(const Signature& s, u64 G_order, const std::vector<i64>& parabolic_orders,
                           const std::vector<i64>& elliptic_orders);

}  // namespace fuchsian
