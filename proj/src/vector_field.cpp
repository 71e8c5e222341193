#include "resbound/vector_field.hpp"

#include <cmath>
#include <sstream>

namespace resbound {

VectorField::VectorField(std::vector<Poly> components)
    : VectorField(std::move(components), default_names(0)) {}

VectorField::VectorField(std::vector<Poly> components, std::vector<std::string> names)
    : components_(std::move(components)), names_(std::move(names)) {
    const std::size_t n = components_.size();
    for (const auto &c : components_)
        if (c.nvars() != n) throw std::invalid_argument("VectorField: component variable count must equal dimension");
    if (names_.empty()) names_ = default_names(n);
    if (names_.size() != n) throw std::invalid_argument("VectorField: name count mismatch");
}

bool VectorField::is_zero() const {
    for (const auto &c : components_)
        if (!c.is_zero()) return false;
    return true;
}

int VectorField::degree() const {
    int d = -1;
    for (const auto &c : components_) d = std::max(d, c.degree());
    return d;
}

std::vector<GaussRat> VectorField::evaluate(std::span<const GaussRat> point) const {
    std::vector<GaussRat> out;
    out.reserve(components_.size());
    for (const auto &c : components_) out.push_back(c.evaluate(point));
    return out;
}

std::string VectorField::str() const {
    std::ostringstream os;
    os << "vars ";
    for (std::size_t i = 0; i < names_.size(); ++i) os << (i ? "," : "") << names_[i];
    os << ";\n";
    for (std::size_t i = 0; i < components_.size(); ++i)
        os << 'd' << names_[i] << " = " << components_[i].str(names_) << '\n';
    return os.str();
}

Poly lie_derivative(const Poly &p, const VectorField &f) {
    if (p.nvars() != f.nvars()) throw std::invalid_argument("lie_derivative: dimension mismatch");
    Poly out(p.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        if (f[i].is_zero()) continue;
        Poly d = p.derivative(i);
        if (!d.is_zero()) out += d * f[i];
    }
    return out;
}

RationalFn lie_derivative(const RationalFn &F, const VectorField &f) {
    if (F.nvars() != f.nvars()) throw std::invalid_argument("lie_derivative: dimension mismatch");
    // (H L(G) - G L(H)) / H^2
    const Poly &G = F.num();
    const Poly &H = F.den();
    if (H.is_constant()) return RationalFn::unreduced(lie_derivative(G, f), H);
    Poly n = H * lie_derivative(G, f) - G * lie_derivative(H, f);
    return RationalFn(std::move(n), H * H);
}

ExactMatrix jacobian_at(const VectorField &f, std::span<const GaussRat> x0) {
    const std::size_t n = f.nvars();
    if (x0.size() != n) throw std::invalid_argument("jacobian_at: dimension mismatch");
    ExactMatrix J(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) J(i, j) = f[i].derivative(j).evaluate(x0);
    return J;
}

NumMatrix jacobian_at(const VectorField &f, std::span<const std::complex<double>> x0) {
    const std::size_t n = f.nvars();
    if (x0.size() != n) throw std::invalid_argument("jacobian_at: dimension mismatch");
    NumMatrix J(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) J(i, j) = f[i].derivative(j).evaluate(x0);
    return J;
}

VectorField linear_field(const ExactMatrix &A) {
    if (!A.is_square()) throw std::invalid_argument("linear_field: matrix must be square");
    const std::size_t n = A.rows();
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < n; ++i) {
        Poly p(n);
        for (std::size_t j = 0; j < n; ++j) p += Poly::variable(n, j) * A(i, j);
        comps.push_back(std::move(p));
    }
    return VectorField(std::move(comps));
}

GaussRat evaluate(const Poly &p, std::span<const GaussRat> point) { return p.evaluate(point); }

GaussRat evaluate(const RationalFn &F, std::span<const GaussRat> point) { return F.evaluate(point); }

NumMatrix to_numeric(const ExactMatrix &m) {
    NumMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
    return out;
}

ExactMatrix to_exact(const NumMatrix &m) {
    ExactMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = GaussRat(exact_rational(m(i, j).real()), exact_rational(m(i, j).imag()));
    return out;
}

bool is_lower_triangular(const ExactMatrix &m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

double frobenius_norm(const NumMatrix &m) {
    double s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

} // namespace resbound
