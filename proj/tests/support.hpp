#pragma once

#include <array>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "fuchsian/abelianization.hpp"
#include "fuchsian/scrapes.hpp"
#include "fuchsian/signatures.hpp"

namespace fuchsian::fixtures {

inline Rational closed_chi_sum(const std::vector<i64>& values, const std::vector<i64>& parent) {
  return reciprocal_sum(closure(make_factor(parent, values)).values);
}

// The candidate scrapes m^{s l}, n^{s l} around a bad pair
// (g^i h^j, g^{i+1} h^b), (g^i h^b, g^{i+1} h^j), with l-exponents delta and
// eps. Entries 1 and 2 get parents enlarged by cofactors coprime to g, h, l.
struct CandidatePair {
  std::vector<i64> m, n, m_parent, n_parent;
};

inline i64 ipow_i(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline CandidatePair scrape_candidates(i64 g, i64 h, i64 l, int i, int j, int b, const std::array<int, 4>& delta,
                                       const std::array<int, 4>& eps, const std::array<i64, 4>& cof) {
  CandidatePair c;
  c.m = {ipow_i(l, delta[0]) * ipow_i(g, i) * ipow_i(h, j), ipow_i(l, delta[1]) * ipow_i(g, i + 1) * ipow_i(h, b),
         ipow_i(l, delta[2]), ipow_i(l, delta[3])};
  c.n = {ipow_i(l, eps[0]) * ipow_i(g, i) * ipow_i(h, b), ipow_i(l, eps[1]) * ipow_i(g, i + 1) * ipow_i(h, j),
         ipow_i(l, eps[2]), ipow_i(l, eps[3])};
  c.m_parent = {c.m[0] * cof[0], c.m[1] * cof[1], c.m[2], c.m[3]};
  c.n_parent = {c.n[0] * cof[2], c.n[1] * cof[3], c.n[2], c.n[3]};
  return c;
}

// Distinct sorted multisets of length k, entries in [2, max_entry], sharing
// mids and chi; found by grouping every multiset on those two invariants.
inline std::vector<std::pair<std::vector<i64>, std::vector<i64>>> equal_invariant_pairs(std::size_t k, i64 max_entry,
                                                                                      std::size_t limit) {
  std::map<std::pair<std::vector<i64>, Rational>, std::vector<std::vector<i64>>> groups;
  std::vector<i64> m(k, 2);
  while (true) {
    groups[{mids(m), reciprocal_sum(m)}].push_back(m);
    std::size_t pos = k;
    while (pos > 0 && m[pos - 1] == max_entry) --pos;
    if (pos == 0) break;
    ++m[pos - 1];
    for (std::size_t x = pos; x < k; ++x) m[x] = m[pos - 1];
  }
  std::vector<std::pair<std::vector<i64>, std::vector<i64>>> out;
  for (const auto& [key, members] : groups)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (out.size() == limit) return out;
        out.emplace_back(members[a], members[b]);
      }
  return out;
}

// Random normalized Fuchsian signature: genus and punctures at most 2,
// at most four cones from {2,...,6}.
inline Signature random_fuchsian(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(0, 2), len(0, 4), cone(2, 6);
  while (true) {
    Signature s{small(rng), small(rng), {}};
    int k = len(rng);
    for (int i = 0; i < k; ++i) s.cones.push_back(cone(rng));
    s = normalize(s);
    if (is_fuchsian(s)) return s;
  }
}

}  // namespace fuchsian::fixtures
