#pragma once

#include <vector>

#include "fuchsian/arith.hpp"
#include "fuchsian/signatures.hpp"

namespace fuchsian {

struct AbelianInvariants {
  i64 free_rank = 0;
  // Each entry divides the next; trivial factors are kept.
  std::vector<i64> torsion_chain;

  std::vector<i64> stripped_torsion() const;
  u64 torsion_order() const;
  bool operator==(const AbelianInvariants& other) const;
};

// mid_i: for each prime, the i-th smallest valuation across the entries.
std::vector<i64> mids(const std::vector<i64>& m);

AbelianInvariants abelianize(const Signature& s);
bool same_abelianization(const Signature& a, const Signature& b);

// Requires unpunctured inputs with equal abelianization and equal chi;
// returns the common lcm of the cone orders.
i64 lcm_forced_equal(const Signature& a, const Signature& b);

// Whether the finite abelian group prod Z_{q_i} is a quotient of
// Z^{free_rank} x prod Z_{torsion_i}.
bool is_abelian_quotient(const std::vector<i64>& cyclic_factors, const AbelianInvariants& source);

std::string to_string(const AbelianInvariants& a);

}  // namespace fuchsian
