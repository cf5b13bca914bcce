#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuchsian/abelianization.hpp"
#include "fuchsian/arith.hpp"
#include "fuchsian/finite_groups.hpp"
#include "fuchsian/scrapes.hpp"
#include "fuchsian/signatures.hpp"
#include "fuchsian/smooth_reps.hpp"

namespace fuchsian {

// f = 2 - |G| chi(g;0;c) for an unpunctured winner, 1 - |G| chi(g;p;c) otherwise.
BigInt extension_rank(const Signature& winner, const BigInt& G_order, const std::vector<i64>& c);
// Smallest 1 < a <= L+1 coprime to L = lcm(M_left, M_right).
u64 select_extension_exponent(u64 M_left, u64 M_right);
FactoredInteger certificate_order(u64 a, const BigInt& f, const BigInt& G_order);

// First Betti number of the kernel of a map onto a group of order G_order
// whose elliptic images have orders d (punctured sources assume p > 0).
BigInt kernel_betti(const Signature& s, const BigInt& G_order, const std::vector<i64>& d);

// Element orders of the group a descriptor names (a superset for huge subgroups).
std::vector<u64> element_orders_of(const GroupDescriptor& g);

struct BoundReport {
  u64 base = 2;      // L + 1
  BigInt exponent;   // 15 + L^(15(b+k))
  bool satisfied = false;
  std::string exponent_factored;
};

BoundReport check_bound(u64 L, i64 b, i64 k, u64 a, const BigInt& f, const BigInt& G_order);

struct QuotientCertificate {
  Side winner = Side::left;
  Signature winner_sig, loser_sig;
  std::vector<std::string> trace;  // A, B, C1, C2, D1, D2
  std::vector<std::string> notes;
  GroupDescriptor base_group;
  std::vector<i64> smooth_factor;  // aligned with winner_sig.cones
  std::optional<std::vector<i64>> loser_max_factor;
  std::vector<i64> abelian_factors;  // branches A and B: Q = Z_a^f x these
  std::optional<SmoothRep> rep;
  u64 q = 0;
  u64 a = 2;
  BigInt f;
  FactoredInteger order;
  u64 L = 1;
  i64 b = 0, k = 0;
  BoundReport bound;
};

struct DistinguishOptions {
  u64 max_scan = kDefaultMaxScan;
  bool lemma_diagnostics = true;
};

QuotientCertificate distinguish(const Signature& left, const Signature& right, const DistinguishOptions& opt = {});

struct VerificationReport {
  struct Check {
    std::string name;
    bool passed;
    std::string detail;
  };
  bool ok = true;
  std::vector<Check> checks;
  std::optional<BigInt> loser_b1_max;
};

VerificationReport verify_certificate(const QuotientCertificate& cert, const Signature& left, const Signature& right);

std::string side_name(Side s);

}  // namespace fuchsian
