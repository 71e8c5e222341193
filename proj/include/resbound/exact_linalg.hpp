#pragma once

#include "resbound/matrix.hpp"

#include <vector>

namespace resbound {

using IntVec = std::vector<mpz_class>;
using RatVec = std::vector<mpq_class>;

/// Reduced row echelon form in place; returns pivot columns. Zero entries
/// are skipped, so sparse operator matrices reduce in near-linear time.
std::vector<std::size_t> rref(ExactMatrix &m);

/// Basis of {v : m v = 0}, one vector per free column (free entry 1).
std::vector<std::vector<GaussRat>> nullspace(const ExactMatrix &m);

/// Rank by fraction-free (Bareiss) elimination over Z[i] after clearing
/// denominators row by row.
std::size_t rank(const ExactMatrix &m);

/// Determinant by Bareiss elimination.
GaussRat determinant(const ExactMatrix &m);

/// Row Hermite normal form: nonzero rows only, positive pivots, entries
/// above each pivot reduced into [0, pivot).
std::vector<IntVec> hermite_normal_form(std::vector<IntVec> rows);

/// HNF basis of {k in Z^n : <row, k> = 0 for every row}. Rows are
/// rational; each is scaled to integers first.
std::vector<IntVec> integer_kernel(const std::vector<RatVec> &rows, std::size_t n);

/// HNF basis of Z^n intersected with the rational span of the given
/// integer vectors.
std::vector<IntVec> saturate(const std::vector<IntVec> &vectors, std::size_t n);

/// Rational rank of a set of rational vectors.
std::size_t rational_rank(const std::vector<RatVec> &rows);

} // namespace resbound
