#include "resbound/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace resbound {

UPoly::UPoly(std::vector<GaussRat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussRat UPoly::evaluate(const GaussRat &t) const {
    GaussRat acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= t;
        acc += *it;
    }
    return acc;
}

UPoly UPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<GaussRat> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * GaussRat(static_cast<long>(k));
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
    if (is_zero() || leading().is_one()) return *this;
    GaussRat inv = GaussRat(1) / leading();
    std::vector<GaussRat> c = coeffs_;
    for (auto &x : c) x *= inv;
    return UPoly(std::move(c));
}

UPoly operator-(const UPoly &a, const UPoly &b) {
    std::vector<GaussRat> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] -= b.coeffs_[k];
    return UPoly(std::move(c));
}

UPoly operator*(const UPoly &a, const UPoly &b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussRat> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly &d) const {
    if (d.is_zero()) throw std::domain_error("UPoly::divmod: division by zero");
    std::vector<GaussRat> r = coeffs_;
    if (degree() < d.degree()) return {UPoly(), *this};
    std::vector<GaussRat> q(coeffs_.size() - d.coeffs_.size() + 1);
    GaussRat inv = GaussRat(1) / d.leading();
    for (std::size_t k = q.size(); k-- > 0;) {
        GaussRat f = r[k + d.coeffs_.size() - 1] * inv;
        q[k] = f;
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < d.coeffs_.size(); ++j) r[k + j] -= f * d.coeffs_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly &a, const UPoly &b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

UPoly characteristic_polynomial(const ExactMatrix &A) {
    if (!A.is_square()) throw std::invalid_argument("characteristic_polynomial: matrix must be square");
    const std::size_t n = A.rows();
    std::vector<GaussRat> c(n + 1);
    c[n] = GaussRat(1);
    ExactMatrix M(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        M = A * M;
        for (std::size_t i = 0; i < n; ++i) M(i, i) += c[n - k + 1];
        c[n - k] = -(A * M).trace() / GaussRat(static_cast<long>(k));
    }
    return UPoly(std::move(c));
}

std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly &p) {
    std::vector<std::pair<UPoly, unsigned>> out;
    if (p.degree() <= 0) return out;
    UPoly dp = p.derivative();
    UPoly a = gcd(p, dp);
    UPoly b = p.divmod(a).first;
    UPoly c = dp.divmod(a).first;
    UPoly d = c - b.derivative();
    for (unsigned i = 1; b.degree() > 0; ++i) {
        UPoly ai = gcd(b, d);
        b = b.divmod(ai).first;
        c = d.divmod(ai).first;
        d = c - b.derivative();
        if (ai.degree() > 0) out.emplace_back(ai.monic(), i);
    }
    return out;
}

namespace {

using cld = std::complex<long double>;

cld horner(const std::vector<cld> &a, cld z) {
    cld acc = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
    return acc;
}

long double horner_abs(const std::vector<cld> &a, long double r) {
    long double acc = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

} // namespace

std::vector<NumericRoot> durand_kerner(const UPoly &p, int max_iter, long double rel_tol) {
    const int n = p.degree();
    if (n <= 0) return {};
    UPoly m = p.monic();
    std::vector<cld> a;
    for (const auto &c : m.coeffs()) a.push_back(c.to_complex_ld());

    if (n == 1) return {NumericRoot{-a[0], 0}};

    long double bound = 0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[k]));
    bound += 1;
    std::vector<cld> z(n);
    cld seed(0.4L, 0.9L), pw(1, 0);
    for (int k = 0; k < n; ++k) {
        pw *= seed;
        z[k] = bound * pw;
    }
    for (int it = 0; it < max_iter; ++it) {
        long double worst = 0;
        for (int i = 0; i < n; ++i) {
            cld den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (den == cld(0)) den = cld(1e-30L, 0);
            cld w = horner(a, z[i]) / den;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[i])));
        }
        if (worst <= rel_tol) break;
    }

    // Weierstrass inclusion: D(z_i, n |W_i|) contain all roots; a
    // connected union of k disks contains exactly k roots. The rounding
    // allowance covers coefficient conversion and Horner evaluation.
    const long double gamma = 1e-17L;
    std::vector<NumericRoot> roots(n);
    for (int i = 0; i < n; ++i) {
        cld den = 1;
        for (int j = 0; j < n; ++j)
            if (j != i) den *= (z[i] - z[j]);
        long double dabs = std::abs(den);
        long double w = dabs > 0 ? (std::abs(horner(a, z[i])) + gamma * horner_abs(a, std::abs(z[i]))) / dabs
                                 : std::numeric_limits<long double>::infinity();
        roots[i] = NumericRoot{z[i], n * w};
    }
    // Merge overlapping disks into clusters (union-find by repeated passes).
    std::vector<int> cluster(n);
    std::iota(cluster.begin(), cluster.end(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (cluster[i] == cluster[j]) continue;
                if (std::abs(z[i] - z[j]) <= roots[i].radius + roots[j].radius) {
                    int from = cluster[j], to = cluster[i];
                    for (auto &c : cluster)
                        if (c == from) c = to;
                    changed = true;
                }
            }
    }
    std::vector<NumericRoot> out = roots;
    for (int i = 0; i < n; ++i) {
        long double r = roots[i].radius;
        for (int j = 0; j < n; ++j)
            if (j != i && cluster[j] == cluster[i]) r = std::max(r, std::abs(z[i] - z[j]) + roots[j].radius);
        out[i].radius = r;
    }
    return out;
}

std::optional<std::vector<GaussRat>> exact_roots(const UPoly &p) {
    const int n = p.degree();
    if (n <= 0) return std::vector<GaussRat>{};
    if (n == 1) return std::vector<GaussRat>{-p.coeffs()[0] / p.coeffs()[1]};
    // Gaussian-rational roots of an integer-coefficient polynomial have
    // denominators dividing the norm of its leading coefficient.
    mpz_class l = 1;
    for (const auto &c : p.coeffs()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den_mpz_t());
    }
    GaussRat lead = p.leading() * GaussRat(mpq_class(l));
    mpq_class nrm = lead.norm();
    long max_den = nrm > mpq_class(1000000000000L) ? 1000000000000L : std::max(1L, nrm.get_num().get_si());

    auto approx = durand_kerner(p, 400, 1e-18L);
    std::vector<GaussRat> found;
    for (const auto &r : approx) {
        long double tol = 1e-12L * std::max(1.0L, std::abs(r.value));
        auto cand = gauss_approx(r.value, tol, max_den);
        if (!cand || !p.evaluate(*cand).is_zero()) return std::nullopt;
        for (const auto &f : found)
            if (f == *cand) return std::nullopt;
        found.push_back(*cand);
    }
    return found;
}

} // namespace resbound
