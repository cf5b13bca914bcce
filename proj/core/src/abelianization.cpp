#include "fuchsian/abelianization.hpp"

#include <algorithm>
#include <map>

#include "fuchsian/errors.hpp"

namespace fuchsian {

std::vector<i64> AbelianInvariants::stripped_torsion() const {
  std::vector<i64> out;
  for (i64 t : torsion_chain)
    if (t != 1) out.push_back(t);
  return out;
}

u64 AbelianInvariants::torsion_order() const {
  u64 n = 1;
  for (i64 t : torsion_chain) n = checked_mul(n, static_cast<u64>(t));
  return n;
}

bool AbelianInvariants::operator==(const AbelianInvariants& other) const {
  return free_rank == other.free_rank && stripped_torsion() == other.stripped_torsion();
}

std::vector<i64> mids(const std::vector<i64>& m) {
  const std::size_t k = m.size();
  std::vector<i64> out(k, 1);
  std::map<u64, std::vector<int>> vals;
  for (std::size_t i = 0; i < k; ++i) {
    if (m[i] <= 0) throw PreconditionError("mids need finite positive entries");
    for (auto [p, e] : factorize(static_cast<u64>(m[i]))) vals[p].resize(k, 0), vals[p][i] = e;
  }
  for (auto& [p, v] : vals) {
    v.resize(k, 0);
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<i64>(checked_mul(out[i], ipow(p, v[i])));
  }
  return out;
}

AbelianInvariants abelianize(const Signature& s) {
  for (i64 c : s.cones)
    if (c == kInfiniteCone) throw PreconditionError("abelianize needs a normalized signature");
  AbelianInvariants a;
  a.free_rank = first_betti(s);
  a.torsion_chain = mids(s.cones);
  if (!s.punctured() && !a.torsion_chain.empty()) a.torsion_chain.pop_back();
  return a;
}

bool same_abelianization(const Signature& a, const Signature& b) { return abelianize(a) == abelianize(b); }

i64 lcm_forced_equal(const Signature& a, const Signature& b) {
  if (a.punctured() || b.punctured()) throw PreconditionError("lcm_forced_equal needs unpunctured signatures");
  if (!same_abelianization(a, b)) throw PreconditionError("abelianizations differ");
  if (euler_char(a) != euler_char(b)) throw PreconditionError("Euler characteristics differ");
  u64 M = lcm_of(a.cones), N = lcm_of(b.cones);
  if (M != N) throw InternalContradiction("equal abelianization and chi but lcm " + std::to_string(M) + " != " + std::to_string(N));
  return static_cast<i64>(M);
}

namespace {

// prime -> exponents of the p-parts, descending.
std::map<u64, std::vector<int>> partitions(const std::vector<i64>& cyclic) {
  std::map<u64, std::vector<int>> parts;
  for (i64 c : cyclic) {
    if (c <= 0) throw PreconditionError("cyclic factor must be positive");
    for (auto [p, e] : factorize(static_cast<u64>(c))) parts[p].push_back(e);
  }
  for (auto& [p, v] : parts) std::sort(v.rbegin(), v.rend());
  return parts;
}

}  // namespace

bool is_abelian_quotient(const std::vector<i64>& cyclic_factors, const AbelianInvariants& source) {
  // Z^r x T surjects onto A iff, prime by prime, dropping the r largest
  // parts of A leaves a partition contained in that of T.
  auto a = partitions(cyclic_factors);
  auto t = partitions(source.torsion_chain);
  const std::size_t r = static_cast<std::size_t>(source.free_rank);
  for (auto& [p, ap] : a) {
    const auto& tp = t[p];
    for (std::size_t i = r; i < ap.size(); ++i) {
      int have = (i - r) < tp.size() ? tp[i - r] : 0;
      if (ap[i] > have) return false;
    }
  }
  return true;
}

std::string to_string(const AbelianInvariants& a) {
  std::string s;
  if (a.free_rank == 1) s = "Z";
  if (a.free_rank > 1) s = "Z^" + std::to_string(a.free_rank);
  for (i64 t : a.stripped_torsion()) s += (s.empty() ? "Z_" : " x Z_") + std::to_string(t);
  return s.empty() ? "1" : s;
}

}  // namespace fuchsian
