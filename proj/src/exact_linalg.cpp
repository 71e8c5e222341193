#include "resbound/exact_linalg.hpp"

#include <algorithm>

namespace resbound {

std::vector<std::size_t> rref(ExactMatrix &m) {
    std::vector<std::size_t> pivots;
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t r = 0;
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && m(p, c).is_zero()) ++p;
        if (p == R) continue;
        if (p != r)
            for (std::size_t j = 0; j < C; ++j) std::swap(m(p, j), m(r, j));
        GaussRat inv = GaussRat(1) / m(r, c);
        support.clear();
        for (std::size_t j = c; j < C; ++j) {
            if (m(r, j).is_zero()) continue;
            if (!inv.is_one()) m(r, j) *= inv;
            support.push_back(j);
        }
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            GaussRat f = m(i, c);
            for (std::size_t j : support) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<GaussRat>> nullspace(const ExactMatrix &m) {
    ExactMatrix a = m;
    auto pivots = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<GaussRat>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<GaussRat> v(a.cols());
        v[f] = GaussRat(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

// Integer image of one row: returns the scale factor used (lcm of all
// denominators).
mpz_class clear_row(const ExactMatrix &m, std::size_t i, std::vector<GaussInt> &out) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).re().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).im().get_den_mpz_t());
    }
    out.resize(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        mpq_class re = m(i, j).re() * l, im = m(i, j).im() * l;
        out[j] = GaussInt{re.get_num(), im.get_num()};
    }
    return l;
}

struct BareissResult {
    std::size_t rank = 0;
    GaussInt last_pivot{1, 0};
    int sign = 1;
    mpz_class scale = 1;
};

BareissResult bareiss(const ExactMatrix &m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<GaussInt>> a(R);
    BareissResult res;
    for (std::size_t i = 0; i < R; ++i) res.scale *= clear_row(m, i, a[i]);
    GaussInt prev{1, 0};
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && a[p][c].is_zero()) ++p;
        if (p == R) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            res.sign = -res.sign;
        }
        const GaussInt piv = a[r][c];
        for (std::size_t i = r + 1; i < R; ++i) {
            const GaussInt lead = a[i][c];
            for (std::size_t j = c + 1; j < C; ++j) {
                GaussInt v = piv * a[i][j] - lead * a[r][j];
                a[i][j] = v.is_zero() ? v : divide_exact(v, prev);
            }
            a[i][c] = GaussInt{};
        }
        prev = piv;
        ++r;
    }
    res.rank = r;
    res.last_pivot = prev;
    return res;
}

mpz_class floor_div(const mpz_class &a, const mpz_class &b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

void axpy(IntVec &dst, const mpz_class &q, const IntVec &src) {
    for (std::size_t j = 0; j < dst.size(); ++j)
        if (sgn(src[j]) != 0) dst[j] -= q * src[j];
}

// Unimodular row echelon on the first `ncols` columns; returns the number
// of pivot rows. Rows below that are zero on those columns.
std::size_t echelon(std::vector<IntVec> &rows, std::size_t ncols, bool reduce_above) {
    const std::size_t m = rows.size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m; ++c) {
        bool found = false;
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i) {
                if (sgn(rows[i][c]) == 0) continue;
                if (best == m || mpz_cmpabs(rows[i][c].get_mpz_t(), rows[best][c].get_mpz_t()) < 0) best = i;
            }
            if (best == m) break;
            found = true;
            std::swap(rows[best], rows[r]);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (sgn(rows[i][c]) == 0) continue;
                axpy(rows[i], floor_div(rows[i][c], rows[r][c]), rows[r]);
                if (sgn(rows[i][c]) != 0) clean = false;
            }
            if (clean) break;
        }
        if (!found) continue;
        if (sgn(rows[r][c]) < 0)
            for (auto &x : rows[r]) x = -x;
        if (reduce_above)
            for (std::size_t i = 0; i < r; ++i)
                if (sgn(rows[i][c]) != 0) axpy(rows[i], floor_div(rows[i][c], rows[r][c]), rows[r]);
        ++r;
    }
    return r;
}

} // namespace

std::size_t rank(const ExactMatrix &m) { return bareiss(m).rank; }

GaussRat determinant(const ExactMatrix &m) {
    if (!m.is_square()) throw std::invalid_argument("determinant: matrix must be square");
    if (m.rows() == 0) return GaussRat(1);
    auto res = bareiss(m);
    if (res.rank < m.rows()) return GaussRat();
    GaussRat d(mpq_class(res.last_pivot.re), mpq_class(res.last_pivot.im));
    d *= GaussRat(mpq_class(res.sign));
    d /= GaussRat(mpq_class(res.scale));
    return d;
}

std::vector<IntVec> hermite_normal_form(std::vector<IntVec> rows) {
    if (rows.empty()) return rows;
    const std::size_t n = rows[0].size();
    std::size_t r = echelon(rows, n, true);
    rows.resize(r);
    return rows;
}

std::vector<IntVec> integer_kernel(const std::vector<RatVec> &rows, std::size_t n) {
    std::vector<IntVec> scaled;
    for (const auto &row : rows) {
        if (row.size() != n) throw std::invalid_argument("integer_kernel: row length mismatch");
        mpz_class l = 1;
        for (const auto &q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        IntVec v(n);
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
            mpq_class s = row[j] * l;
            v[j] = s.get_num();
            nonzero = nonzero || sgn(v[j]) != 0;
        }
        if (nonzero) scaled.push_back(std::move(v));
    }
    const std::size_t r = scaled.size();
    // Augmented rows [M^T | I]: unimodular elimination on the M^T part
    // leaves kernel vectors in the identity part of the zero rows.
    std::vector<IntVec> aug(n, IntVec(r + n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < r; ++k) aug[i][k] = scaled[k][i];
        aug[i][r + i] = 1;
    }
    std::size_t piv = echelon(aug, r, false);
    std::vector<IntVec> kernel;
    for (std::size_t i = piv; i < n; ++i) kernel.emplace_back(aug[i].begin() + static_cast<std::ptrdiff_t>(r), aug[i].end());
    return hermite_normal_form(std::move(kernel));
}

std::vector<IntVec> saturate(const std::vector<IntVec> &vectors, std::size_t n) {
    if (vectors.empty()) return {};
    ExactMatrix V(vectors.size(), n);
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) V(i, j) = GaussRat(mpq_class(vectors[i][j]));
    std::vector<RatVec> complement;
    for (const auto &v : nullspace(V)) {
        RatVec row;
        for (const auto &x : v) row.push_back(x.re());
        complement.push_back(std::move(row));
    }
    return integer_kernel(complement, n);
}

std::size_t rational_rank(const std::vector<RatVec> &rows) {
    if (rows.empty()) return 0;
    ExactMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = GaussRat(rows[i][j]);
    return rank(m);
}

} // namespace resbound
