#pragma once

#include <string>
#include <vector>

#include "fuchsian/arith.hpp"

namespace fuchsian {

// values[i] divides parent[i] for every i.
struct Factor {
  std::vector<i64> parent;
  std::vector<i64> values;

  bool operator==(const Factor&) const = default;
  std::vector<i64> stripped() const;  // values without 1s, sorted
  u64 lcm() const { return lcm_of(values); }
};

Factor make_factor(std::vector<i64> parent, std::vector<i64> values);

// m_s: elementwise gcd(d, M/s) with M = lcm(m). Requires s | M.
Factor scrape(const std::vector<i64>& m, i64 s);
// m^t = m_{M/t}. Requires t | M.
Factor coscrape(const std::vector<i64>& m, i64 t);
// Elementwise gcd(d, t) for any t >= 1; agrees with coscrape when t | M.
Factor gcd_factor(const std::vector<i64>& m, i64 t);

Factor closure(const Factor& c);

// Bad iff, after dropping 1s, one entry or two distinct entries remain.
bool is_good(const std::vector<i64>& m);

// Sum of 1/c_i; two cone lists have equal chi (same g, p, length) iff
// these sums agree, and smaller chi means a smaller sum.
Rational reciprocal_sum(const std::vector<i64>& c);

// Smallest s | M with chi(closure(m_s)) != chi(closure(n_s)).
i64 find_distinguishing_scrape(const std::vector<i64>& m, const std::vector<i64>& n);

enum class Side { left, right };

struct GoodScrape {
  i64 t = 0;
  int clause = 0;     // 1: chi differs, both good; 2: exactly one good
  Side winner = Side::left;  // smaller chi (clause 1) or the good side (clause 2)
  Factor m_bar, n_bar;
};

// Scans t | lcm(M, N) ascending using elementwise gcd with t. Requires equal
// mids except possibly the last one.
GoodScrape find_good_distinguishing_scrape(const std::vector<i64>& m, const std::vector<i64>& n);

std::vector<i64> pad_with_ones(std::vector<i64> m, std::size_t k);

}  // namespace fuchsian
