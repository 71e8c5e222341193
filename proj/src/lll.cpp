#include "resbound/lll.hpp"

namespace resbound {

namespace {

struct GramSchmidt {
    std::vector<std::vector<mpq_class>> mu;
    std::vector<mpq_class> B; // squared norms of the orthogonalized vectors
};

GramSchmidt gram_schmidt(const std::vector<IntVec> &b) {
    const std::size_t n = b.size();
    const std::size_t d = n ? b[0].size() : 0;
    GramSchmidt gs;
    gs.mu.assign(n, std::vector<mpq_class>(n));
    gs.B.assign(n, 0);
    std::vector<std::vector<mpq_class>> star(n, std::vector<mpq_class>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) star[i][k] = b[i][k];
        for (std::size_t j = 0; j < i; ++j) {
            mpq_class num = 0;
            for (std::size_t k = 0; k < d; ++k) num += mpq_class(b[i][k]) * star[j][k];
            gs.mu[i][j] = num / gs.B[j];
            for (std::size_t k = 0; k < d; ++k) star[i][k] -= gs.mu[i][j] * star[j][k];
        }
        mpq_class s = 0;
        for (std::size_t k = 0; k < d; ++k) s += star[i][k] * star[i][k];
        if (sgn(s) == 0) throw std::invalid_argument("lll_reduce: basis vectors are linearly dependent");
        gs.B[i] = s;
    }
    return gs;
}

mpz_class round_nearest(const mpq_class &q) {
    // floor(q + 1/2)
    mpq_class shifted = q + mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return r;
}

} // namespace

void lll_reduce(std::vector<IntVec> &b, const mpq_class &delta) {
    const std::size_t n = b.size();
    if (n < 2) return;
    GramSchmidt gs = gram_schmidt(b);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            mpz_class q = round_nearest(gs.mu[k][j]);
            if (sgn(q) == 0) continue;
            for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= q * b[j][t];
            for (std::size_t t = 0; t < j; ++t) gs.mu[k][t] -= q * gs.mu[j][t];
            gs.mu[k][j] -= q;
        }
        mpq_class lhs = gs.B[k];
        mpq_class rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.B[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gs = gram_schmidt(b);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
}

} // namespace resbound
