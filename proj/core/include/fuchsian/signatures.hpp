#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fuchsian/arith.hpp"

namespace fuchsian {

// Raw cone value standing for an infinite cone order (a puncture).
inline constexpr i64 kInfiniteCone = 0;

struct Signature {
  i64 genus = 0;
  i64 punctures = 0;
  std::vector<i64> cones;

  bool operator==(const Signature&) const = default;
  bool punctured() const { return punctures > 0; }
  std::size_t k() const { return cones.size(); }
};

Signature normalize(Signature raw);

// chi(g;p;c) for an arbitrary cone list; entries equal to 1 contribute 0.
Rational euler_char(i64 genus, i64 punctures, const std::vector<i64>& cones);
Rational euler_char(const Signature& s);
// Sum of (1 - 1/c_i); the cone part of chi.
Rational cone_defect(const std::vector<i64>& cones);

i64 first_betti(const Signature& s);
bool is_fuchsian(const Signature& s);
bool isomorphic(const Signature& a, const Signature& b);

// "(g;p;m1,m2,...)" with "-" for no cones and "inf" for an infinite cone.
// The result is normalized.
Signature parse_signature(std::string_view text);
Signature parse_raw_signature(std::string_view text);
std::string to_string(const Signature& s);
// Same, but runs of equal cones are written c^(n).
std::string to_compact_string(const Signature& s);

// "15,42,63"; "-" is the empty list.
std::vector<i64> parse_int_list(std::string_view text);
std::string join_ints(const std::vector<i64>& xs, const char* sep = ",");

}  // namespace fuchsian
