#include "fuchsian/scrape_matrices.hpp"

#include <algorithm>
#include <numeric>

#include "fuchsian/errors.hpp"

namespace fuchsian {

namespace {

u64 scrape_value(u64 d, u64 M, u64 s) { return std::gcd(d, M / s); }

u64 closed_value(u64 v, u64 parent) {
  if (v == 1 && parent % 2 == 0 && parent % 3 != 0) return 2;
  if (v == 1 && parent % 3 == 0) return 3;
  if (v == 2 && parent % 6 == 0) return 3;
  return v;
}

ScrapeMatrix blank(u64 M) {
  if (M == 0) throw PreconditionError("modulus must be positive");
  ScrapeMatrix A;
  A.modulus = M;
  A.index = divisors(M);
  A.rows.assign(A.index.size(), std::vector<Rational>(A.index.size(), Rational(0)));
  return A;
}

// Möbius inversion of the rows of A over the divisor lattice.
ScrapeMatrix moebius_rows(const ScrapeMatrix& A) {
  ScrapeMatrix B = blank(A.modulus);
  const auto& idx = A.index;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (idx[i] % idx[j]) continue;
      int mu = moebius(idx[i] / idx[j]);
      if (mu == 0) continue;
      for (std::size_t c = 0; c < idx.size(); ++c) B.rows[i][c] += mu * A.rows[j][c];
    }
  }
  return B;
}

ScrapeMatrix recursive_rows(const ScrapeMatrix& A) {
  ScrapeMatrix B = blank(A.modulus);
  const auto& idx = A.index;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    B.rows[i] = A.rows[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (idx[i] % idx[j]) continue;
      for (std::size_t c = 0; c < idx.size(); ++c) B.rows[i][c] -= B.rows[j][c];
    }
  }
  return B;
}

// Product of the full prime powers of M over the primes dividing d.
u64 full_support(u64 d, u64 M, bool skip2 = false) {
  u64 s = 1;
  for (auto [p, e] : factorize(d)) {
    if (skip2 && p == 2) continue;
    s *= ipow(p, static_cast<unsigned>(*valuation(p, M)));
  }
  return s;
}

}  // namespace

std::size_t ScrapeMatrix::column_of(u64 d) const {
  auto it = std::lower_bound(index.begin(), index.end(), d);
  if (it == index.end() || *it != d) throw PreconditionError(std::to_string(d) + " is not a divisor of the modulus");
  return static_cast<std::size_t>(it - index.begin());
}

const Rational& ScrapeMatrix::at(u64 s, u64 d) const { return rows[column_of(s)][column_of(d)]; }

u64 pivot_of(u64 s, u64 M) {
  if (s == 0 || M % s) throw PreconditionError(std::to_string(s) + " does not divide " + std::to_string(M));
  u64 t = 1;
  for (auto [p, j] : factorize(s)) {
    auto a = *valuation(p, M);
    t *= ipow(p, static_cast<unsigned>(a - j + 1));
  }
  return t;
}

ScrapeMatrix build_E(u64 M) {
  ScrapeMatrix A = blank(M);
  for (std::size_t i = 0; i < A.index.size(); ++i)
    for (std::size_t c = 0; c < A.index.size(); ++c)
      A.rows[i][c] = Rational(1, scrape_value(A.index[c], M, A.index[i]));
  return A;
}

ScrapeMatrix build_F(u64 M) {
  ScrapeMatrix A = blank(M);
  for (std::size_t i = 0; i < A.index.size(); ++i)
    for (std::size_t c = 0; c < A.index.size(); ++c) {
      u64 d = A.index[c];
      A.rows[i][c] = Rational(1, closed_value(scrape_value(d, M, A.index[i]), d));
    }
  return A;
}

ScrapeMatrix build_X(u64 M) {
  ScrapeMatrix A = blank(M);
  for (std::size_t i = 0; i < A.index.size(); ++i) {
    u64 s = A.index[i], ps = pivot_of(s, M);
    for (std::size_t c = 0; c < A.index.size(); ++c) {
      u64 d = A.index[c];
      if (d % ps) continue;
      A.rows[i][c] = Rational(totient(d / scrape_value(d, M, s)), d);
      A.rows[i][c].canonicalize();
    }
  }
  return A;
}

ScrapeMatrix build_X_moebius(u64 M) { return moebius_rows(build_E(M)); }
ScrapeMatrix build_X_recursive(u64 M) { return recursive_rows(build_E(M)); }
ScrapeMatrix build_Y_recursive(u64 M) { return recursive_rows(build_F(M)); }

ScrapeMatrix build_Y(u64 M) {
  ScrapeMatrix A = build_X(M);
  const u64 a = static_cast<u64>(*valuation(2, M));
  const u64 b = static_cast<u64>(*valuation(3, M));
  for (std::size_t i = 0; i < A.index.size(); ++i) {
    u64 s = A.index[i];
    for (std::size_t c = 0; c < A.index.size(); ++c) {
      u64 d = A.index[c];
      bool two = d % 2 == 0, three = d % 3 == 0;
      Rational corr = 0;
      if (two && !three && s == full_support(d, M)) {
        corr = Rational(1, 2);
      } else if (three && !two && s == full_support(d, M)) {
        corr = Rational(2, 3);
      } else if (three && d % 4 == 0 && s == ipow(2, static_cast<unsigned>(a - 1)) * full_support(d, M, true)) {
        corr = Rational(1, 6);
      } else if (three && two && d % 4 != 0 && s == full_support(d, M, true)) {
        corr = Rational(1, 6);
      } else if (three && two && s == full_support(d, M)) {
        corr = Rational(1, 2);
      }
      (void)b;
      A.rows[i][c] -= corr;
    }
  }
  return A;
}

ScrapeMatrix append_patch_rows(const ScrapeMatrix& A) {
  ScrapeMatrix B = A;
  const u64 M = A.modulus;
  const std::size_t n = A.index.size();
  auto exactly_divides = [](u64 p, u64 d) { return d % p == 0 && (d / p) % p != 0; };
  if (M % 2 == 0) {
    std::vector<Rational> r(n, Rational(0));
    for (std::size_t c = 0; c < n; ++c)
      if (exactly_divides(2, A.index[c])) r[c] = 1;
    B.rows.push_back(r);
  }
  if (M % 3 == 0) {
    std::vector<Rational> r(n, Rational(0));
    for (std::size_t c = 0; c < n; ++c)
      if (exactly_divides(3, A.index[c])) r[c] = 1;
    B.rows.push_back(r);
  }
  if (M % 12 == 0) B.rows.emplace_back(n, Rational(1));
  return B;
}

std::size_t rank(const std::vector<std::vector<Rational>>& rows_in) {
  auto rows = rows_in;
  if (rows.empty()) return 0;
  const std::size_t ncols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

std::size_t rank(const ScrapeMatrix& A) { return rank(A.rows); }

std::vector<u64> pivotless_columns(const ScrapeMatrix& A) {
  std::vector<u64> out;
  for (u64 d : A.index)
    if (A.at(pivot_of(d, A.modulus), d) == 0) out.push_back(d);
  return out;
}

bool is_pivot_triangular(const ScrapeMatrix& A) {
  for (u64 d : A.index) {
    std::size_t row = A.column_of(pivot_of(d, A.modulus));
    for (std::size_t c = 0; c < A.column_of(d); ++c)
      if (A.rows[row][c] != 0) return false;
  }
  return true;
}

Rational reduce_twelve_row(u64 M) {
  if (M % 12) throw PreconditionError("reduce_twelve_row needs 12 | M");
  ScrapeMatrix Y = build_Y(M);
  std::vector<u64> D;
  for (u64 d : Y.index)
    if (d <= 12) D.push_back(d);
  auto restrict_row = [&](const std::vector<Rational>& full) {
    std::vector<Rational> r;
    for (u64 d : D) r.push_back(full[Y.column_of(d)]);
    return r;
  };
  auto exactly_divides = [](u64 p, u64 d) { return d % p == 0 && (d / p) % p != 0; };
  std::vector<Rational> v(D.size(), Rational(1));
  for (std::size_t j = 0; j < D.size(); ++j) {
    u64 col = D[j];
    if (col == 12 || v[j] == 0) continue;
    std::vector<Rational> row;
    if (col == 2 || col == 3) {
      for (u64 d : D) row.push_back(exactly_divides(col, d) ? Rational(1) : Rational(0));
    } else {
      row = restrict_row(Y.rows[Y.column_of(pivot_of(col, M))]);
    }
    if (row[j] == 0) throw InternalContradiction("missing pivot at column " + std::to_string(col));
    Rational f = v[j] / row[j];
    for (std::size_t c = 0; c < D.size(); ++c) v[c] -= f * row[c];
  }
  auto it = std::find(D.begin(), D.end(), 12);
  return v[static_cast<std::size_t>(it - D.begin())];
}

}  // namespace fuchsian
