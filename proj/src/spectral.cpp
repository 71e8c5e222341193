#include "resbound/spectral.hpp"

#include "resbound/poly.hpp"
#include "resbound/vector_field.hpp"

#include <algorithm>
#include <map>

namespace resbound {

const char *to_string(Mode m) { return m == Mode::exact ? "exact" : "numeric"; }

std::size_t SpectrumReport::dimension() const {
    std::size_t n = 0;
    for (const auto &v : values) n += v.multiplicity;
    return n;
}

std::vector<GaussRat> SpectrumReport::exact_tuple() const {
    std::vector<GaussRat> out;
    for (const auto &v : values) {
        if (!v.exact) throw std::logic_error("exact_tuple: spectrum has numeric values");
        for (unsigned k = 0; k < v.multiplicity; ++k) out.push_back(*v.exact);
    }
    return out;
}

std::vector<std::complex<double>> SpectrumReport::numeric_tuple() const {
    std::vector<std::complex<double>> out;
    for (const auto &v : values)
        for (unsigned k = 0; k < v.multiplicity; ++k) out.push_back(v.approx);
    return out;
}

std::vector<double> SpectrumReport::radius_tuple() const {
    std::vector<double> out;
    for (const auto &v : values)
        for (unsigned k = 0; k < v.multiplicity; ++k) out.push_back(v.error_radius);
    return out;
}

namespace {

bool is_upper_triangular(const ExactMatrix &m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

void sort_values(std::vector<Eigenvalue> &vals) {
    std::sort(vals.begin(), vals.end(), [](const Eigenvalue &a, const Eigenvalue &b) {
        if (a.exact && b.exact) return canonical_less(*a.exact, *b.exact);
        if (a.approx.real() != b.approx.real()) return a.approx.real() < b.approx.real();
        return a.approx.imag() < b.approx.imag();
    });
}

SpectrumReport from_exact_values(const std::vector<GaussRat> &diag) {
    std::map<std::pair<mpq_class, mpq_class>, unsigned> counts;
    for (const auto &d : diag) ++counts[{d.re(), d.im()}];
    SpectrumReport rep;
    rep.mode = Mode::exact;
    for (const auto &[key, mult] : counts) {
        GaussRat v(key.first, key.second);
        rep.values.push_back(Eigenvalue{v, v.to_complex(), 0.0, mult});
    }
    sort_values(rep.values);
    return rep;
}

void merge_close(SpectrumReport &rep, double merge_distance) {
    if (merge_distance <= 0) return;
    std::vector<Eigenvalue> merged;
    for (const auto &v : rep.values) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Eigenvalue &m) {
            return std::abs(m.approx - v.approx) <= merge_distance;
        });
        if (it == merged.end()) {
            merged.push_back(v);
            continue;
        }
        it->error_radius = std::max(it->error_radius, v.error_radius) + std::abs(it->approx - v.approx);
        it->multiplicity += v.multiplicity;
        if (it->exact && v.exact && *it->exact != *v.exact) it->exact.reset();
    }
    rep.values = std::move(merged);
}

} // namespace

SpectrumReport eigenvalues(const ExactMatrix &A, const SpectralOptions &opts) {
    if (!A.is_square()) throw std::invalid_argument("eigenvalues: matrix must be square");
    const std::size_t n = A.rows();
    if (opts.triangular_shortcut && (is_lower_triangular(A) || is_upper_triangular(A))) {
        std::vector<GaussRat> diag;
        for (std::size_t i = 0; i < n; ++i) diag.push_back(A(i, i));
        return from_exact_values(diag);
    }

    SpectrumReport rep;
    rep.mode = Mode::exact;
    for (const auto &[factor, mult] : squarefree_decomposition(characteristic_polynomial(A))) {
        if (auto roots = exact_roots(factor)) {
            for (const auto &r : *roots) rep.values.push_back(Eigenvalue{r, r.to_complex(), 0.0, mult});
            continue;
        }
        rep.mode = Mode::numeric;
        for (const auto &r : durand_kerner(factor)) {
            std::complex<double> z(static_cast<double>(r.value.real()), static_cast<double>(r.value.imag()));
            double radius = static_cast<double>(r.radius) + 2.3e-16 * std::abs(z);
            rep.values.push_back(Eigenvalue{std::nullopt, z, radius, mult});
        }
    }
    if (rep.mode == Mode::numeric) merge_close(rep, opts.merge_distance);
    sort_values(rep.values);
    return rep;
}

SpectrumReport eigenvalues(const NumMatrix &A, const SpectralOptions &opts) {
    // Entries convert to rationals without loss; the values are still only
    // as good as the floating-point input.
    auto rep = eigenvalues(to_exact(A), opts);
    for (auto &v : rep.values) {
        v.exact.reset();
        v.error_radius = std::max(v.error_radius, 2.3e-16 * std::abs(v.approx));
    }
    rep.mode = Mode::numeric;
    merge_close(rep, opts.merge_distance);
    sort_values(rep.values);
    return rep;
}

namespace {

ExactMatrix operator_matrix(const std::vector<Poly> &images, const std::vector<Exponent> &basis) {
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    ExactMatrix M(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (const auto &[e, c] : images[j].terms()) {
            auto it = index.find(e);
            if (it == index.end()) throw std::logic_error("operator image left the homogeneous space");
            M(it->second, j) = c;
        }
    return M;
}

} // namespace

ExactMatrix lie_operator_matrix(const ExactMatrix &A, unsigned m, const GaussRat &c) {
    if (!A.is_square()) throw std::invalid_argument("lie_operator_matrix: matrix must be square");
    if (m < 1) throw std::invalid_argument("lie_operator_matrix: degree must be >= 1");
    const std::size_t n = A.rows();
    VectorField lin = linear_field(A);
    auto basis = homogeneous_basis(n, m);
    std::vector<Poly> images;
    for (const auto &e : basis) {
        Poly h = Poly::monomial(e);
        images.push_back(lie_derivative(h, lin) - h * c);
    }
    return operator_matrix(images, basis);
}

ExactMatrix composition_operator_matrix(const ExactMatrix &B, unsigned m, const GaussRat &c) {
    if (!B.is_square()) throw std::invalid_argument("composition_operator_matrix: matrix must be square");
    if (m < 1) throw std::invalid_argument("composition_operator_matrix: degree must be >= 1");
    const std::size_t n = B.rows();
    const VectorField lin = linear_field(B);
    const auto &subs = lin.components();
    auto basis = homogeneous_basis(n, m);
    std::vector<Poly> images;
    for (const auto &e : basis) {
        Poly h = Poly::monomial(e);
        images.push_back(h.compose(subs) - h * c);
    }
    return operator_matrix(images, basis);
}

} // namespace resbound
