#include "resbound/quasihomog.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace resbound {

const char *to_string(QHSign s) { return s == QHSign::positive ? "positive" : "negative"; }

ExactMatrix QHDecomposition::W() const {
    const std::size_t n = weights.size();
    ExactMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) w(i, i) = GaussRat(mpq_class(weights[i], q - 1));
    return w;
}

long weight_degree(const Exponent &m, const Weights &s, std::size_t component) {
    long w = 0;
    for (std::size_t j = 0; j < m.size(); ++j) w += static_cast<long>(m[j]) * s[j];
    return w - s[component] + 1;
}

QHDecomposition decompose(const VectorField &f, const Weights &s, QHSign sign) {
    const std::size_t n = f.nvars();
    if (s.size() != n) throw DecomposeError("weight vector length does not match the field");
    for (long w : s)
        if (w == 0) throw DecomposeError("weights must be nonzero");
    if (f.is_zero()) throw DecomposeError("zero vector field has no quasi-homogeneous part");

    std::optional<long> q;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto &[m, c] : f[i].terms()) {
            long w = weight_degree(m, s, i);
            if (!q || (sign == QHSign::positive ? w < *q : w > *q)) q = w;
        }
    if (*q < 2) throw DecomposeError("weight degree q = " + std::to_string(*q) + " is below 2");

    std::vector<Poly> fq, fh;
    for (std::size_t i = 0; i < n; ++i) {
        Poly a(n), b(n);
        for (const auto &[m, c] : f[i].terms()) (weight_degree(m, s, i) == *q ? a : b).add_term(m, c);
        fq.push_back(std::move(a));
        fh.push_back(std::move(b));
    }
    QHDecomposition d;
    d.weights = s;
    d.q = *q;
    d.fq = VectorField(std::move(fq), f.names());
    d.fh = VectorField(std::move(fh), f.names());
    d.sign = sign;
    return d;
}

std::vector<Weights> candidate_weights(const VectorField &f, QHSign sign, long bound) {
    const std::size_t n = f.nvars();
    if (n == 0 || n > 3) throw std::invalid_argument("weight search supports 1 to 3 variables");
    std::vector<long> values;
    for (long v = -bound; v <= bound; ++v)
        if (v != 0) values.push_back(v);
    std::vector<Weights> out;
    Weights s(n);
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) s[i] = values[idx[i]];
        try {
            decompose(f, s, sign);
            out.push_back(s);
        } catch (const DecomposeError &) {
        }
        std::size_t k = 0;
        while (k < n && ++idx[k] == values.size()) idx[k++] = 0;
        if (k == n) break;
    }
    return out;
}

std::optional<long> quasi_homogeneous_degree(const Poly &G, const Weights &s) {
    std::optional<long> l;
    for (const auto &[m, c] : G.terms()) {
        long w = 0;
        for (std::size_t j = 0; j < m.size(); ++j) w += static_cast<long>(m[j]) * s[j];
        if (l && *l != w) return std::nullopt;
        l = w;
    }
    return l;
}

namespace {

using CVec = std::vector<std::complex<double>>;

double norm(const CVec &v) {
    double s = 0;
    for (auto z : v) s += std::norm(z);
    return std::sqrt(s);
}

double distance(const CVec &a, const CVec &b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

CVec to_complex(const std::vector<GaussRat> &v) {
    CVec out;
    for (const auto &x : v) out.push_back(x.to_complex());
    return out;
}

// f_q(c) + W c, exactly.
std::vector<GaussRat> balance_residual(const QHDecomposition &dec, std::span<const GaussRat> c) {
    auto r = dec.fq.evaluate(c);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += GaussRat(mpq_class(dec.weights[i], dec.q - 1)) * c[i];
    return r;
}

bool is_exact_balance(const QHDecomposition &dec, std::span<const GaussRat> c) {
    for (const auto &r : balance_residual(dec, c))
        if (!r.is_zero()) return false;
    return true;
}

// Gaussian-rational roots of p that verify exactly; `all` reports whether
// every root was recovered.
std::vector<GaussRat> verified_roots(const UPoly &p, bool &all) {
    std::vector<GaussRat> out;
    if (p.degree() < 1) return out;
    for (const auto &[factor, mult] : squarefree_decomposition(p)) {
        if (factor.degree() < 1) continue;
        if (auto roots = exact_roots(factor)) {
            out.insert(out.end(), roots->begin(), roots->end());
            continue;
        }
        std::size_t got = 0;
        for (const auto &r : durand_kerner(factor, 400, 1e-18L)) {
            long double scale = std::max<long double>(1, std::abs(r.value));
            auto z = gauss_approx(r.value, 1e-12L * scale, 1000000);
            if (z && factor.evaluate(*z).is_zero()) {
                out.push_back(*z);
                ++got;
            }
        }
        if (got < static_cast<std::size_t>(factor.degree())) all = false;
    }
    return out;
}

struct Eliminator {
    std::size_t n = 0;
    bool complete = true;
    std::vector<std::vector<GaussRat>> solutions;
    int budget = 4096;

    struct Record {
        std::size_t var;
        Poly expr;
    };

    void solve(std::vector<Poly> eqs, std::vector<Record> records) {
        if (--budget < 0) {
            complete = false;
            return;
        }
        std::vector<Poly> live;
        for (auto &e : eqs) {
            if (e.is_zero()) continue;
            if (e.is_constant()) return;
            live.push_back(std::move(e));
        }
        std::vector<bool> determined(n, false);
        for (const auto &r : records) determined[r.var] = true;

        if (live.empty()) {
            if (std::find(determined.begin(), determined.end(), false) != determined.end()) {
                complete = false; // positive-dimensional family
                return;
            }
            std::vector<GaussRat> value(n);
            for (auto it = records.rbegin(); it != records.rend(); ++it) value[it->var] = it->expr.evaluate(value);
            solutions.push_back(std::move(value));
            return;
        }

        // Linear with a constant coefficient: v = -R / a.
        for (std::size_t k = 0; k < live.size(); ++k)
            for (std::size_t v = 0; v < n; ++v) {
                if (determined[v] || live[k].degree_in(v) != 1) continue;
                Poly a(n), rest(n);
                for (const auto &[m, c] : live[k].terms()) {
                    if (m[v] == 1) {
                        Exponent e = m;
                        e[v] = 0;
                        a.add_term(e, c);
                    } else {
                        rest.add_term(m, c);
                    }
                }
                if (!a.is_constant()) continue;
                Poly expr = rest * (GaussRat(-1) / a.constant_term());
                substitute_and_recurse(live, k, v, expr, records);
                return;
            }

        // Univariate in one undetermined variable.
        for (std::size_t k = 0; k < live.size(); ++k) {
            std::optional<std::size_t> var;
            bool univariate = true;
            for (const auto &[m, c] : live[k].terms())
                for (std::size_t j = 0; j < n; ++j) {
                    if (m[j] == 0) continue;
                    if (var && *var != j) univariate = false;
                    var = j;
                }
            if (!univariate || !var) continue;
            std::vector<GaussRat> coeffs(live[k].degree_in(*var) + 1);
            for (const auto &[m, c] : live[k].terms()) coeffs[m[*var]] += c;
            bool all = true;
            auto roots = verified_roots(UPoly(coeffs), all);
            if (!all) complete = false;
            for (const auto &r : roots) substitute_and_recurse(live, k, *var, Poly::constant(n, r), records);
            return;
        }
        complete = false;
    }

    void substitute_and_recurse(const std::vector<Poly> &eqs, std::size_t skip, std::size_t v, const Poly &expr,
                                std::vector<Record> records) {
        std::vector<Poly> subs;
        for (std::size_t j = 0; j < n; ++j) subs.push_back(j == v ? expr : Poly::variable(n, j));
        std::vector<Poly> next;
        for (std::size_t k = 0; k < eqs.size(); ++k)
            if (k != skip) next.push_back(eqs[k].compose(subs));
        records.push_back({v, expr});
        solve(std::move(next), std::move(records));
    }
};

struct NewtonSystem {
    const QHDecomposition &dec;
    std::vector<std::vector<Poly>> jac;
    std::vector<std::complex<double>> w;

    explicit NewtonSystem(const QHDecomposition &d) : dec(d) {
        const std::size_t n = d.weights.size();
        jac.assign(n, {});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) jac[i].push_back(d.fq[i].derivative(j));
        for (long s : d.weights) w.emplace_back(static_cast<double>(s) / static_cast<double>(d.q - 1), 0.0);
    }

    CVec residual(const CVec &c) const {
        CVec r(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) r[i] = dec.fq[i].evaluate(c) + w[i] * c[i];
        return r;
    }

    std::optional<CVec> run(CVec c) const {
        const std::size_t n = c.size();
        Eigen::MatrixXcd J(n, n);
        Eigen::VectorXcd F(n);
        for (int it = 0; it < 100; ++it) {
            CVec r = residual(c);
            for (std::size_t i = 0; i < n; ++i) {
                F(static_cast<Eigen::Index>(i)) = r[i];
                for (std::size_t j = 0; j < n; ++j)
                    J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        jac[i][j].evaluate(c) + (i == j ? w[i] : 0.0);
            }
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
            if (!lu.isInvertible()) return std::nullopt;
            Eigen::VectorXcd step = lu.solve(-F);
            for (std::size_t i = 0; i < n; ++i) c[i] += step(static_cast<Eigen::Index>(i));
            if (!std::isfinite(step.norm())) return std::nullopt;
            if (step.norm() < 1e-13 * std::max(1.0, norm(c))) break;
        }
        if (norm(residual(c)) > 1e-10) return std::nullopt;
        return c;
    }
};

bool is_zero_point(const CVec &c) { return norm(c) <= 1e-8; }

bool sort_key_less(const BalanceData &a, const BalanceData &b) {
    auto key = [](const BalanceData &x) {
        std::vector<long long> k;
        for (auto z : x.c) {
            k.push_back(std::llround(z.real() * 1e6));
            k.push_back(std::llround(z.imag() * 1e6));
        }
        return k;
    };
    return key(a) < key(b);
}

} // namespace

BalanceSearch find_balances(const QHDecomposition &dec, const BalanceOptions &opts) {
    if (opts.attempts < 1) throw std::invalid_argument("attempts must be at least 1");
    const std::size_t n = dec.weights.size();
    BalanceSearch out;

    auto add = [&](BalanceData b) {
        if (!opts.include_zero && is_zero_point(b.c)) return;
        for (auto &existing : out.balances)
            if (distance(existing.c, b.c) <= 1e-8) {
                if (!existing.exact && b.exact) existing = std::move(b);
                return;
            }
        out.balances.push_back(std::move(b));
    };

    Eliminator elim;
    elim.n = n;
    std::vector<Poly> eqs;
    ExactMatrix W = dec.W();
    for (std::size_t i = 0; i < n; ++i) eqs.push_back(dec.fq[i] + Poly::variable(n, i) * W(i, i));
    elim.solve(eqs, {});
    out.exact_complete = elim.complete;
    for (auto &s : elim.solutions) {
        BalanceData b;
        b.c = to_complex(s);
        b.exact = std::move(s);
        add(std::move(b));
    }

    NewtonSystem newton(dec);
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> box(-10.0, 10.0);
    for (int a = 0; a < opts.attempts; ++a) {
        CVec start(n);
        for (auto &z : start) {
            double re = box(rng);
            z = {re, box(rng)};
        }
        auto c = newton.run(start);
        if (!c) continue;
        BalanceData b;
        b.c = *c;
        b.residual = norm(newton.residual(*c));
        std::vector<GaussRat> snapped;
        for (auto z : *c) {
            auto g = gauss_approx(std::complex<long double>(z.real(), z.imag()), 1e-9L, 1000000);
            if (!g) break;
            snapped.push_back(*g);
        }
        if (snapped.size() == n && is_exact_balance(dec, snapped)) {
            b.c = to_complex(snapped);
            b.exact = std::move(snapped);
            b.residual = 0;
        }
        add(std::move(b));
    }
    std::sort(out.balances.begin(), out.balances.end(), sort_key_less);
    return out;
}

BalanceData kowalevskaya(const QHDecomposition &dec, BalanceData b, const LatticeOptions &opts) {
    if (b.residual > 1e-10) throw std::invalid_argument("balance residual exceeds 1e-10");
    ExactMatrix W = dec.W();
    if (b.exact) {
        b.K = jacobian_at(dec.fq, *b.exact) + W;
    } else {
        b.K = to_exact(jacobian_at(dec.fq, b.c) + to_numeric(W));
    }
    b.exponents = b.exact ? eigenvalues(b.K) : eigenvalues(to_numeric(b.K));

    if (!is_zero_point(b.c)) {
        bool found = false;
        for (const auto &e : b.exponents.values) {
            if (e.exact && *e.exact == GaussRat(-1)) found = true;
            if (!e.exact && std::abs(e.approx + 1.0) <= 1e-8 + e.error_radius) found = true;
        }
        if (!found) throw MissingMinusOne("Kowalevskaya exponents at a nonzero balance do not contain -1");
    }

    LatticeOptions lo = opts;
    for (double r : b.exponents.radius_tuple()) lo.tol = std::max(lo.tol, 10 * r);
    b.lattice_c = additive_lattice(b.exponents, lo);
    b.d_c = b.lattice_c.rank();
    return b;
}

QHBoundReport theorem4_bound(const VectorField &f, const Weights &s, const BalanceOptions &opts,
                             const LatticeOptions &lattice, QHSign sign) {
    QHBoundReport r;
    r.decomposition = decompose(f, s, sign);
    auto search = find_balances(r.decomposition, opts);
    r.exact_complete = search.exact_complete;
    for (auto &b : search.balances) {
        r.balances.push_back(kowalevskaya(r.decomposition, std::move(b), lattice));
        std::size_t dc = r.balances.back().d_c;
        if (!r.d || dc < *r.d) r.d = dc;
    }
    return r;
}

namespace {

// x_j := c_j + u_j with u_j at index j + 1 of an (n+1)-variable ring.
std::vector<Poly> shifted_variables(const std::vector<GaussRat> &c) {
    const std::size_t n = c.size();
    std::vector<Poly> subs;
    for (std::size_t j = 0; j < n; ++j) subs.push_back(Poly::variable(n + 1, j + 1) + Poly::constant(n + 1, c[j]));
    return subs;
}

const std::vector<GaussRat> &exact_point(const BalanceData &c) {
    if (!c.exact) throw std::invalid_argument("the transformed system needs an exact balance");
    return *c.exact;
}

} // namespace

VectorField kowalevskaya_system(const QHDecomposition &dec, const BalanceData &b) {
    const auto &c = exact_point(b);
    const std::size_t n = c.size();
    const ExactMatrix W = dec.W();
    const ExactMatrix D = jacobian_at(dec.fq, c);
    const ExactMatrix K = D + W;
    const auto subs = shifted_variables(c);

    std::vector<Poly> comps;
    comps.push_back(Poly::variable(n + 1, 0) * GaussRat(mpq_class(-1, dec.q - 1)));
    for (std::size_t i = 0; i < n; ++i) {
        Poly p = dec.fq[i].compose(subs) + Poly::constant(n + 1, W(i, i) * c[i]);
        for (std::size_t j = 0; j < n; ++j) p += Poly::variable(n + 1, j + 1) * (K(i, j) - D(i, j));
        comps.push_back(std::move(p));
    }
    std::vector<std::string> names;
    for (std::size_t j = 0; j <= n; ++j) names.push_back("u" + std::to_string(j));
    return VectorField(std::move(comps), std::move(names));
}

Poly lift_to_kowalevskaya(const Poly &G, const QHDecomposition &dec, const BalanceData &b) {
    const auto &c = exact_point(b);
    auto l = quasi_homogeneous_degree(G, dec.weights);
    if (!l) throw std::invalid_argument("polynomial is not quasi-homogeneous for these weights");
    if (*l < 0) throw std::invalid_argument("negative weight degree has no polynomial lift");
    return Poly::variable(c.size() + 1, 0).pow(static_cast<unsigned>(*l)) * G.compose(shifted_variables(c));
}

} // namespace resbound
