#pragma once

#include <vector>

#include "fuchsian/arith.hpp"

namespace fuchsian {

// Rows are indexed by divisors s of M (then any appended rows), columns by
// divisors d of M, both ascending.
struct ScrapeMatrix {
  u64 modulus = 1;
  std::vector<u64> index;
  std::vector<std::vector<Rational>> rows;

  std::size_t column_of(u64 d) const;
  const Rational& at(u64 s, u64 d) const;
};

u64 pivot_of(u64 s, u64 M);

ScrapeMatrix build_E(u64 M);
ScrapeMatrix build_F(u64 M);
// Closed form: 0 if pivot(s) does not divide d, else phi(d/d_s)/d.
ScrapeMatrix build_X(u64 M);
ScrapeMatrix build_X_moebius(u64 M);
// Row operations on E: X_1 = E_1, X_s = E_s - sum of X_c over proper c | s.
ScrapeMatrix build_X_recursive(u64 M);
// X minus the five-case correction table.
ScrapeMatrix build_Y(u64 M);
ScrapeMatrix build_Y_recursive(u64 M);

// Appends the rows for the columns 2, 3 and 12 that divide M:
// sum over 2||d, sum over 3||d, and the all-ones row.
ScrapeMatrix append_patch_rows(const ScrapeMatrix& A);

std::size_t rank(const std::vector<std::vector<Rational>>& rows);
std::size_t rank(const ScrapeMatrix& A);

// Columns d whose would-be pivot entry A[pivot(d)][d] vanishes.
std::vector<u64> pivotless_columns(const ScrapeMatrix& A);
// Whether some row permutation makes A upper triangular.
bool is_pivot_triangular(const ScrapeMatrix& A);

// Reduce the all-ones row on the columns D = {d | M, d <= 12} with the rows
// pivot(j) (patch rows for j = 2, 3), j in D \ {12}; returns the leftover
// entry in column 12. Requires 12 | M.
Rational reduce_twelve_row(u64 M);

}  // namespace fuchsian
