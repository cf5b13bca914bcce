#pragma once

#include <vector>

#include "fuchsian/arith.hpp"

namespace fuchsian {

// F_q with q = ell^e, e <= 3. Elements are integers in [0, q) whose base-ell
// digits are polynomial coefficients (constant term first), reduced modulo
// the lexicographically least monic irreducible polynomial of degree e.
class FiniteField {
 public:
  explicit FiniteField(u64 q);

  u64 q() const { return q_; }
  u64 characteristic() const { return ell_; }
  int degree() const { return e_; }
  // Low-to-high coefficients of the modulus, leading 1 omitted.
  const std::vector<u64>& modulus() const { return modulus_; }

  u64 add(u64 a, u64 b) const;
  u64 sub(u64 a, u64 b) const;
  u64 neg(u64 a) const;
  u64 mul(u64 a, u64 b) const;
  u64 pow(u64 a, u64 n) const;
  u64 inv(u64 a) const;
  u64 from_int(i64 n) const;
  bool is_square(u64 a) const;

 private:
  u64 q_, ell_;
  int e_;
  std::vector<u64> modulus_;
};

}  // namespace fuchsian
