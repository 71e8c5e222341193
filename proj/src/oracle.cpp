#include "resbound/oracle.hpp"

#include "resbound/exact_linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace resbound {

namespace {

using RowIndex = std::map<Exponent, std::size_t, GrlexLess>;

// Columns are the coefficient vectors of the given polynomials.
ExactMatrix columns_matrix(const std::vector<Poly> &cols) {
    RowIndex rows;
    for (const auto &p : cols)
        for (const auto &[e, c] : p.terms()) rows.emplace(e, 0);
    std::size_t r = 0;
    for (auto &[e, i] : rows) i = r++;
    ExactMatrix m(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto &[e, c] : cols[j].terms()) m(rows.at(e), j) = c;
    return m;
}

// Polynomials sum_j v_j x^{basis_j} with images[j] the image of x^{basis_j}
// and the combination of images zero.
std::vector<Poly> kernel_polys(std::size_t n, const std::vector<Exponent> &basis, const std::vector<Poly> &images) {
    std::vector<Poly> out;
    ExactMatrix m = columns_matrix(images);
    if (m.rows() == 0) {
        for (const auto &e : basis) out.push_back(Poly::monomial(e));
        return echelon_basis(out);
    }
    for (const auto &v : nullspace(m)) {
        Poly p(n);
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (!v[j].is_zero()) p.add_term(basis[j], v[j]);
        out.push_back(std::move(p));
    }
    return echelon_basis(out);
}

std::vector<Poly> lie_images(const VectorField &f, const std::vector<Exponent> &basis) {
    std::vector<Poly> out;
    out.reserve(basis.size());
    for (const auto &e : basis) out.push_back(lie_derivative(Poly::monomial(e), f));
    return out;
}

// Total order on polynomials for canonical output: degree, then terms from
// the top down.
bool poly_less(const Poly &a, const Poly &b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    auto ia = a.terms().rbegin(), ib = b.terms().rbegin();
    for (; ia != a.terms().rend() && ib != b.terms().rend(); ++ia, ++ib) {
        if (ia->first != ib->first) return GrlexLess{}(ib->first, ia->first);
        if (ia->second != ib->second) return canonical_less(ia->second, ib->second);
    }
    return a.size() < b.size();
}

void add_pairs(std::vector<DarbouxPair> &out, const std::vector<Poly> &Gs, const Poly &K) {
    for (const auto &G : Gs) {
        if (G.is_constant()) continue;
        bool seen = std::any_of(out.begin(), out.end(), [&](const DarbouxPair &p) { return p.K == K && p.G == G; });
        if (!seen) out.push_back({G, K});
    }
}

// Alternating solve for L(G) = K G with K of degree deg f - 1: for fixed K,
// G is the smallest right singular vector; for fixed G, K is the least-squares
// solution; Gauss-Newton on both finishes. Converged cofactors are snapped
// to Q(i) and solved exactly, so a loose snap cannot admit a false pair.
void search_nonconstant(const VectorField &f, unsigned deg, const std::vector<Exponent> &basis,
                        const std::vector<Poly> &lie, const DarbouxOptions &opts, std::vector<DarbouxPair> &out) {
    const std::size_t n = f.nvars();
    const auto df = static_cast<unsigned>(f.degree());
    const auto kbasis = monomials_up_to(n, 0, df - 1);
    RowIndex rows;
    std::size_t r = 0;
    for (const auto &e : monomials_up_to(n, 0, deg + df - 1)) rows.emplace(e, r++);
    // The constant monomial is left out: G = 1, K = 0 attracts every start.
    const std::vector<Exponent> gbasis(basis.begin() + 1, basis.end());
    const auto R = static_cast<Eigen::Index>(rows.size());
    const auto B = static_cast<Eigen::Index>(gbasis.size());
    const auto KB = static_cast<Eigen::Index>(kbasis.size());

    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(R, B);
    for (Eigen::Index j = 0; j < B; ++j)
        for (const auto &[e, c] : lie[static_cast<std::size_t>(j) + 1].terms()) L(static_cast<Eigen::Index>(rows.at(e)), j) = c.to_complex();
    std::vector<std::vector<Eigen::Index>> prod(kbasis.size(), std::vector<Eigen::Index>(gbasis.size()));
    for (std::size_t a = 0; a < kbasis.size(); ++a)
        for (std::size_t b = 0; b < gbasis.size(); ++b) {
            Exponent e(n);
            for (std::size_t i = 0; i < n; ++i) e[i] = kbasis[a][i] + gbasis[b][i];
            prod[a][b] = static_cast<Eigen::Index>(rows.at(e));
        }

    auto shifted = [&](const Eigen::VectorXcd &kappa) {
        Eigen::MatrixXcd M = L;
        for (Eigen::Index a = 0; a < KB; ++a)
            for (Eigen::Index b = 0; b < B; ++b) M(prod[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], b) -= kappa(a);
        return M;
    };
    auto products = [&](const Eigen::VectorXcd &g) {
        Eigen::MatrixXcd N = Eigen::MatrixXcd::Zero(R, KB);
        for (Eigen::Index a = 0; a < KB; ++a)
            for (Eigen::Index b = 0; b < B; ++b) N(prod[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], a) += g(b);
        return N;
    };

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> start(-2.0, 2.0);
    for (int s = 0; s < opts.starts; ++s) {
        Eigen::VectorXcd kappa(KB);
        for (Eigen::Index a = 0; a < KB; ++a) kappa(a) = start(rng);
        Eigen::VectorXcd g;
        for (int it = 0; it < 10; ++it) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted(kappa), Eigen::ComputeFullV);
            g = svd.matrixV().col(B - 1);
            kappa = products(g).colPivHouseholderQr().solve(L * g);
        }
        // Gauss-Newton on M(kappa) g = 0 with g^H dg = 0.
        double sigma = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 60; ++it) {
            Eigen::VectorXcd res = shifted(kappa) * g;
            sigma = res.norm();
            if (sigma < 1e-13 || !std::isfinite(sigma)) break;
            Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(R + 1, B + KB);
            J.topLeftCorner(R, B) = shifted(kappa);
            J.topRightCorner(R, KB) = -products(g);
            J.bottomLeftCorner(1, B) = g.adjoint();
            Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(R + 1);
            rhs.head(R) = -res;
            Eigen::VectorXcd step = J.completeOrthogonalDecomposition().solve(rhs);
            g += step.head(B);
            kappa += step.tail(KB);
            const double scale = g.norm();
            g /= scale;
        }
        if (sigma > 1e-8) continue;
        Poly K(n);
        bool ok = true;
        for (Eigen::Index a = 0; a < KB && ok; ++a) {
            auto q = gauss_approx(std::complex<long double>(kappa(a)), 1e-5L, 100);
            if (!q) ok = false;
            else if (!q->is_zero()) K.add_term(kbasis[static_cast<std::size_t>(a)], *q);
        }
        if (!ok || K.is_constant()) continue;
        std::vector<Poly> images;
        for (std::size_t b = 0; b < basis.size(); ++b) images.push_back(lie[b] - K * Poly::monomial(basis[b]));
        add_pairs(out, kernel_polys(n, basis, images), K);
    }
}

std::vector<GaussRat> sample_point(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-100, 100), den(1, 10);
    std::vector<GaussRat> p;
    p.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        long a = num(rng);
        long b = den(rng);
        p.emplace_back(rational(a, b));
    }
    return p;
}

long lowest_degree(const RationalFn &F) { return static_cast<long>(F.num().order()) - F.den().order(); }

// Determinant over the field of rational functions by Gaussian elimination.
RationalFn determinant(std::vector<std::vector<RationalFn>> m) {
    const std::size_t k = m.size();
    const std::size_t nv = k ? m[0][0].nvars() : 0;
    RationalFn det(Poly::constant(nv, GaussRat(1)));
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && m[p][c].is_zero()) ++p;
        if (p == k) return RationalFn(nv);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < k; ++r) {
            if (m[r][c].is_zero()) continue;
            RationalFn t = m[r][c] / m[c][c];
            for (std::size_t j = c; j < k; ++j) m[r][j] -= t * m[c][j];
        }
    }
    return det;
}

RationalFn jacobian_minor(const std::vector<RationalFn> &Fs, const std::vector<std::size_t> &cols) {
    std::vector<std::vector<RationalFn>> m;
    for (const auto &F : Fs) {
        std::vector<RationalFn> row;
        for (auto c : cols) row.push_back(F.derivative(c));
        m.push_back(std::move(row));
    }
    return determinant(std::move(m));
}

// First column subset (lexicographic) with a nonvanishing Jacobian minor.
std::vector<std::size_t> nonvanishing_minor(const std::vector<RationalFn> &Fs) {
    const std::size_t n = Fs[0].nvars(), k = Fs.size();
    std::vector<std::size_t> cols(k);
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    while (true) {
        if (!jacobian_minor(Fs, cols).is_zero()) return cols;
        std::size_t i = k;
        while (i > 0 && cols[i - 1] == n - k + i - 1) --i;
        if (i == 0) throw std::logic_error("ziglin_reduce: Jacobian has no nonvanishing maximal minor");
        ++cols[i - 1];
        for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
    }
}

long defect(const std::vector<RationalFn> &Fs, const std::vector<std::size_t> &cols) {
    long mu = lowest_degree(jacobian_minor(Fs, cols)) + static_cast<long>(Fs.size());
    for (const auto &F : Fs) mu -= lowest_degree(F);
    return mu;
}

std::size_t rank_of(const std::vector<RationalFn> &Fs, std::uint64_t seed) {
    return Fs.empty() ? 0 : independence_rank(Fs, 20, seed).rank;
}

} // namespace

std::vector<Poly> echelon_basis(const std::vector<Poly> &polys) {
    if (polys.empty()) return {};
    const std::size_t n = polys[0].nvars();
    RowIndex cols;
    for (const auto &p : polys)
        for (const auto &[e, c] : p.terms()) cols.emplace(e, 0);
    std::vector<Exponent> order;
    for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
        it->second = order.size();
        order.push_back(it->first);
    }
    ExactMatrix m(polys.size(), order.size());
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (const auto &[e, c] : polys[i].terms()) m(i, cols.at(e)) = c;
    auto pivots = rref(m);
    std::vector<Poly> out;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Poly p(n);
        for (std::size_t j = 0; j < order.size(); ++j)
            if (!m(i, j).is_zero()) p.add_term(order[j], m(i, j));
        out.push_back(p.monic());
    }
    return out;
}

std::vector<Poly> polynomial_first_integrals(const VectorField &f, unsigned max_deg) {
    if (max_deg < 1) throw std::invalid_argument("polynomial_first_integrals: max_deg must be at least 1");
    auto basis = monomials_up_to(f.nvars(), 1, max_deg);
    return kernel_polys(f.nvars(), basis, lie_images(f, basis));
}

std::vector<DarbouxPair> darboux_polynomials(const VectorField &f, unsigned deg, const DarbouxOptions &opts) {
    if (deg < 1) throw std::invalid_argument("darboux_polynomials: deg must be at least 1");
    const std::size_t n = f.nvars();
    const auto basis = monomials_up_to(n, 0, deg);
    const auto lie = lie_images(f, basis);
    std::vector<DarbouxPair> out;

    std::vector<GaussRat> cofactors{GaussRat(0)};
    const std::vector<GaussRat> origin(n);
    auto sp = eigenvalues(jacobian_at(f, origin));
    if (sp.mode == Mode::exact) {
        auto lam = sp.exact_tuple();
        for (const auto &m : basis) {
            GaussRat c;
            for (std::size_t i = 0; i < n; ++i) c += GaussRat(static_cast<long>(m[i])) * lam[i];
            if (std::find(cofactors.begin(), cofactors.end(), c) == cofactors.end()) cofactors.push_back(c);
        }
    }
    for (const auto &c : cofactors) {
        std::vector<Poly> images;
        for (std::size_t j = 0; j < basis.size(); ++j) images.push_back(lie[j] - Poly::monomial(basis[j], c));
        add_pairs(out, kernel_polys(n, basis, images), Poly::constant(n, c));
    }
    if (f.degree() >= 2) search_nonconstant(f, deg, basis, lie, opts, out);

    std::sort(out.begin(), out.end(), [](const DarbouxPair &a, const DarbouxPair &b) {
        if (a.K != b.K) return poly_less(a.K, b.K);
        return poly_less(a.G, b.G);
    });
    return out;
}

IndependenceCertificate independence_rank(const std::vector<RationalFn> &Fs, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("independence_rank: trials must be at least 1");
    IndependenceCertificate cert;
    cert.functions = Fs;
    cert.trials = trials;
    cert.seed = seed;
    if (Fs.empty()) return cert;
    const std::size_t m = Fs.size(), n = Fs[0].nvars();
    std::vector<std::vector<RationalFn>> jac(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) jac[i].push_back(Fs[i].derivative(j));
    const std::size_t full = std::min(m, n);
    std::mt19937_64 rng(seed);
    int good = 0;
    for (int attempt = 0; attempt < 10 * trials && good < trials; ++attempt) {
        auto p = sample_point(rng, n);
        ExactMatrix J(m, n);
        try {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) J(i, j) = jac[i][j].evaluate(p);
        } catch (const DenominatorVanishes &) {
            continue;
        }
        ++good;
        cert.sample_points.push_back(std::move(p));
        cert.rank = std::max(cert.rank, rank(J));
        if (cert.rank == full) break;
    }
    if (good == 0) throw std::domain_error("independence_rank: every sample point hits a vanishing denominator");
    return cert;
}

std::vector<RationalFn> rational_first_integrals(const VectorField &f, unsigned deg, const DarbouxOptions &opts,
                                                 int trials) {
    if (deg < 1) throw std::invalid_argument("rational_first_integrals: deg must be at least 1");
    std::vector<RationalFn> cands;
    for (auto &p : polynomial_first_integrals(f, deg)) cands.emplace_back(std::move(p));
    auto pairs = darboux_polynomials(f, deg, opts);
    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i + 1;
        for (; j < pairs.size() && pairs[j].K == pairs[i].K; ++j) {
            const Poly &a = pairs[i].G, &b = pairs[j].G;
            if (GrlexLess{}(b.leading_exponent(), a.leading_exponent())) cands.emplace_back(a, b);
            else cands.emplace_back(b, a);
        }
        i = j;
    }

    auto weight = [](const RationalFn &F) { return F.num().degree() + F.den().degree(); };
    std::stable_sort(cands.begin(), cands.end(),
                     [&](const RationalFn &a, const RationalFn &b) { return weight(a) < weight(b); });

    std::vector<RationalFn> kept;
    std::size_t r = 0;
    for (const auto &F : cands) {
        if (r == f.nvars()) break;
        if (!lie_derivative(F, f).is_zero()) continue;
        kept.push_back(F);
        std::size_t r2 = independence_rank(kept, trials, opts.seed).rank;
        if (r2 > r) r = r2;
        else kept.pop_back();
    }
    return kept;
}

LowestOrderPart lowest_order_part(const RationalFn &F) {
    if (F.num().is_zero() || F.den().is_zero())
        throw std::invalid_argument("lowest_order_part: numerator and denominator must be nonzero");
    const int a = F.num().order(), b = F.den().order();
    return {RationalFn(F.num().homogeneous_part(static_cast<unsigned>(a)),
                       F.den().homogeneous_part(static_cast<unsigned>(b))),
            static_cast<long>(a) - b};
}

RationalFn compose(const Poly &P, const std::vector<RationalFn> &Fs) {
    if (P.nvars() != Fs.size()) throw std::invalid_argument("compose: variable count mismatch");
    const std::size_t m = Fs.size();
    const std::size_t n = m ? Fs[0].nvars() : 0;
    std::vector<unsigned> D(m);
    std::vector<std::vector<Poly>> gp(m), hp(m);
    Poly den = Poly::constant(n, GaussRat(1));
    for (std::size_t j = 0; j < m; ++j) {
        D[j] = P.degree_in(j);
        gp[j].push_back(Poly::constant(n, GaussRat(1)));
        hp[j].push_back(Poly::constant(n, GaussRat(1)));
        for (unsigned e = 1; e <= D[j]; ++e) {
            gp[j].push_back(gp[j].back() * Fs[j].num());
            hp[j].push_back(hp[j].back() * Fs[j].den());
        }
        den *= hp[j][D[j]];
    }
    // P(G/H) * prod H_j^{D_j} = sum c_a prod G_j^{a_j} H_j^{D_j - a_j}
    Poly num(n);
    for (const auto &[a, c] : P.terms()) {
        Poly t = Poly::constant(n, c);
        for (std::size_t j = 0; j < m; ++j) t *= gp[j][a[j]] * hp[j][D[j] - a[j]];
        num += t;
    }
    return RationalFn(num, den);
}

std::optional<Poly> algebraic_dependency(const std::vector<RationalFn> &Fs, unsigned deg_cap, std::uint64_t seed) {
    if (deg_cap < 1) throw std::invalid_argument("algebraic_dependency: deg_cap must be at least 1");
    if (Fs.empty()) return std::nullopt;
    const std::size_t m = Fs.size(), n = Fs[0].nvars();
    std::mt19937_64 rng(seed);
    for (unsigned D = 1; D <= deg_cap; ++D) {
        auto mons = monomials_up_to(m, 0, D);
        std::sort(mons.begin(), mons.end(), [](const Exponent &a, const Exponent &b) { return GrlexLess{}(b, a); });
        for (int attempt = 0; attempt < 4; ++attempt) {
            const std::size_t npts = mons.size() * (1 + static_cast<std::size_t>(attempt)) + 10;
            ExactMatrix S(npts, mons.size());
            std::size_t row = 0;
            for (std::size_t tries = 0; row < npts; ++tries) {
                if (tries > 10 * npts) throw std::domain_error("algebraic_dependency: sample points hit vanishing denominators");
                auto p = sample_point(rng, n);
                std::vector<std::vector<GaussRat>> pw(m);
                try {
                    for (std::size_t j = 0; j < m; ++j) {
                        GaussRat v = Fs[j].evaluate(p);
                        pw[j].push_back(GaussRat(1));
                        for (unsigned e = 1; e <= D; ++e) pw[j].push_back(pw[j].back() * v);
                    }
                } catch (const DenominatorVanishes &) {
                    continue;
                }
                for (std::size_t c = 0; c < mons.size(); ++c) {
                    GaussRat v(1);
                    for (std::size_t j = 0; j < m; ++j) v *= pw[j][mons[c][j]];
                    S(row, c) = v;
                }
                ++row;
            }
            auto ker = nullspace(S);
            if (ker.empty()) break;
            ExactMatrix K(ker.size(), mons.size());
            for (std::size_t i = 0; i < ker.size(); ++i)
                for (std::size_t c = 0; c < mons.size(); ++c) K(i, c) = ker[i][c];
            auto pivots = rref(K);
            // The last echelon row has the smallest leading monomial.
            Poly P(m);
            for (std::size_t c = 0; c < mons.size(); ++c)
                if (!K(pivots.size() - 1, c).is_zero()) P.add_term(mons[c], K(pivots.size() - 1, c));
            if (compose(P, Fs).is_zero()) return P.monic();
        }
    }
    return std::nullopt;
}

const char *to_string(ZiglinStatus s) {
    switch (s) {
    case ZiglinStatus::complete: return "complete";
    case ZiglinStatus::degree_cap: return "degree_cap";
    case ZiglinStatus::budget: return "budget_exhausted";
    }
    return "?";
}

ZiglinResult ziglin_reduce(const std::vector<RationalFn> &Fs, unsigned deg_cap, std::uint64_t seed, int max_rounds) {
    ZiglinResult res;
    res.functions = Fs;
    const std::size_t m = Fs.size();
    if (m == 0) return res;
    if (std::size_t r = rank_of(Fs, seed); r < m)
        throw PreconditionError("ziglin_reduce: input functions are dependent (rank " + std::to_string(r) + " < " +
                                std::to_string(m) + ")");
    while (true) {
        std::vector<RationalFn> low;
        for (const auto &F : res.functions) low.push_back(lowest_order_part(F).F0);
        if (rank_of(low, seed) == m) break;
        std::size_t k1 = 1;
        while (rank_of({low.begin(), low.begin() + static_cast<std::ptrdiff_t>(k1)}, seed) == k1) ++k1;
        if (res.rounds >= max_rounds) {
            res.status = ZiglinStatus::budget;
            break;
        }
        auto P = algebraic_dependency({low.begin(), low.begin() + static_cast<std::ptrdiff_t>(k1)}, deg_cap, seed);
        if (!P) {
            res.status = ZiglinStatus::degree_cap;
            break;
        }
        // Scale so the largest monomial involving the last variable has
        // coefficient 1.
        const GaussRat *lead = nullptr;
        for (auto it = P->terms().rbegin(); it != P->terms().rend() && !lead; ++it)
            if (it->first[k1 - 1] > 0) lead = &it->second;
        if (!lead) throw std::logic_error("ziglin_reduce: relation does not involve the replaced function");
        Poly Pn = *P * (GaussRat(1) / *lead);

        std::vector<RationalFn> head(res.functions.begin(), res.functions.begin() + static_cast<std::ptrdiff_t>(k1));
        auto cols = nonvanishing_minor(head);
        long before = defect(head, cols);
        head.back() = compose(Pn, head);
        long after = defect(head, cols);
        if (after >= before) throw std::logic_error("ziglin_reduce: defect did not decrease");
        res.functions[k1 - 1] = head.back();
        res.defects.emplace_back(before, after);
        ++res.rounds;
    }
    return res;
}

ResonanceWitness check_lowest_part_resonant(const RationalFn &F0, std::span<const GaussRat> lambda) {
    if (!F0.num().is_homogeneous() || !F0.den().is_homogeneous())
        throw std::invalid_argument("check_lowest_part_resonant: numerator and denominator must be homogeneous");
    if (lambda.size() != F0.nvars()) throw std::invalid_argument("check_lowest_part_resonant: dimension mismatch");
    std::vector<Exponent> mons;
    for (const Poly *p : {&F0.num(), &F0.den()})
        for (const auto &[e, c] : p->terms()) mons.push_back(e);
    for (std::size_t a = 0; a < mons.size(); ++a)
        for (std::size_t b = a + 1; b < mons.size(); ++b) {
            GaussRat s;
            for (std::size_t i = 0; i < lambda.size(); ++i)
                s += lambda[i] * GaussRat(static_cast<long>(mons[a][i]) - static_cast<long>(mons[b][i]));
            if (!s.is_zero()) return {false, std::make_pair(mons[a], mons[b])};
        }
    return {};
}

} // namespace resbound
