#include "fuchsian/scrapes.hpp"

#include <algorithm>
#include <numeric>

#include "fuchsian/errors.hpp"
#include "fuchsian/abelianization.hpp"

namespace fuchsian {

std::vector<i64> Factor::stripped() const {
  std::vector<i64> out;
  for (i64 v : values)
    if (v != 1) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

Factor make_factor(std::vector<i64> parent, std::vector<i64> values) {
  if (parent.size() != values.size()) throw PreconditionError("factor and parent differ in length");
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] <= 0 || values[i] <= 0 || parent[i] % values[i] != 0)
      throw PreconditionError("entry " + std::to_string(values[i]) + " does not divide " + std::to_string(parent[i]));
  }
  return Factor{std::move(parent), std::move(values)};
}

Factor gcd_factor(const std::vector<i64>& m, i64 t) {
  if (t <= 0) throw PreconditionError("scrape divisor must be positive");
  Factor f{m, m};
  for (auto& v : f.values) {
    if (v <= 0) throw PreconditionError("scrapes need finite positive entries");
    v = std::gcd(v, t);
  }
  return f;
}

Factor scrape(const std::vector<i64>& m, i64 s) {
  i64 M = static_cast<i64>(lcm_of(m));
  if (s <= 0 || M % s != 0) throw PreconditionError(std::to_string(s) + " does not divide lcm " + std::to_string(M));
  return gcd_factor(m, M / s);
}

Factor coscrape(const std::vector<i64>& m, i64 t) {
  i64 M = static_cast<i64>(lcm_of(m));
  if (t <= 0 || M % t != 0) throw PreconditionError(std::to_string(t) + " does not divide lcm " + std::to_string(M));
  return gcd_factor(m, t);
}

Factor closure(const Factor& c) {
  Factor out = c;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    i64 v = out.values[i], p = out.parent[i];
    if (v == 1 && p % 2 == 0 && p % 3 != 0) {
      out.values[i] = 2;
    } else if (v == 1 && p % 3 == 0) {
      out.values[i] = 3;
    } else if (v == 2 && p % 6 == 0) {
      out.values[i] = 3;
    }
  }
  return out;
}

bool is_good(const std::vector<i64>& m) {
  std::vector<i64> s;
  for (i64 v : m)
    if (v != 1) s.push_back(v);
  if (s.size() == 1) return false;
  if (s.size() == 2 && s[0] != s[1]) return false;
  return true;
}

Rational reciprocal_sum(const std::vector<i64>& c) {
  Rational r = 0;
  for (i64 v : c) r += Rational(1, v);
  r.canonicalize();
  return r;
}

namespace {

std::vector<i64> sorted(std::vector<i64> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

i64 find_distinguishing_scrape(const std::vector<i64>& m, const std::vector<i64>& n) {
  if (m.size() != n.size()) throw PreconditionError("multisets must have equal length");
  if (sorted(m) == sorted(n)) throw PreconditionError("multisets are equal");
  if (mids(m) != mids(n)) throw PreconditionError("mids differ");
  if (reciprocal_sum(m) != reciprocal_sum(n)) throw PreconditionError("Euler characteristics differ");
  u64 M = lcm_of(m);
  if (lcm_of(n) != M) throw PreconditionError("lcms differ");
  for (u64 s : divisors(M)) {
    auto a = closure(scrape(m, static_cast<i64>(s)));
    auto b = closure(scrape(n, static_cast<i64>(s)));
    if (reciprocal_sum(a.values) != reciprocal_sum(b.values)) return static_cast<i64>(s);
  }
  throw InternalContradiction("no distinguishing scrape among the divisors of " + std::to_string(M));
}

GoodScrape find_good_distinguishing_scrape(const std::vector<i64>& m, const std::vector<i64>& n) {
  if (m.size() != n.size()) throw PreconditionError("multisets must have equal length");
  if (sorted(m) == sorted(n)) throw PreconditionError("multisets are equal");
  if (!is_good(m) || !is_good(n)) throw PreconditionError("both multisets must be good");
  // Unpunctured abelianizations ignore the last mid, so lcm(m) may differ from lcm(n).
  auto a = mids(m), b = mids(n);
  if (!std::equal(a.begin(), a.end() - 1, b.begin())) throw PreconditionError("abelianizations differ");
  u64 L = checked_lcm(lcm_of(m), lcm_of(n));
  for (u64 t : divisors(L)) {
    GoodScrape r;
    r.t = static_cast<i64>(t);
    r.m_bar = closure(gcd_factor(m, r.t));
    r.n_bar = closure(gcd_factor(n, r.t));
    bool gm = is_good(r.m_bar.values), gn = is_good(r.n_bar.values);
    if (gm && gn) {
      Rational a = reciprocal_sum(r.m_bar.values), b = reciprocal_sum(r.n_bar.values);
      if (a == b) continue;
      r.clause = 1;
      r.winner = a < b ? Side::left : Side::right;  // smaller chi = smaller reciprocal sum
      return r;
    }
    if (gm != gn) {
      r.clause = 2;
      r.winner = gm ? Side::left : Side::right;
      return r;
    }
  }
  throw InternalContradiction("no good distinguishing scrape among the divisors of " + std::to_string(L));
}

std::vector<i64> pad_with_ones(std::vector<i64> m, std::size_t k) {
  while (m.size() < k) m.insert(m.begin(), 1);
  return m;
}

}  // namespace fuchsian
