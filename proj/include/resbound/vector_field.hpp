#pragma once

#include "resbound/matrix.hpp"
#include "resbound/rational_fn.hpp"

#include <string>
#include <vector>

namespace resbound {

/// Polynomial vector field x' = f(x); component i is the derivative of
/// variable i. Names are carried for printing only.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(std::vector<Poly> components);
    VectorField(std::vector<Poly> components, std::vector<std::string> names);

    std::size_t nvars() const { return components_.size(); }
    const std::vector<Poly> &components() const { return components_; }
    const Poly &operator[](std::size_t i) const { return components_[i]; }
    const std::vector<std::string> &names() const { return names_; }

    bool is_zero() const;
    /// Maximal total degree over components (-1 for the zero field).
    int degree() const;
    std::vector<GaussRat> evaluate(std::span<const GaussRat> point) const;

    friend bool operator==(const VectorField &a, const VectorField &b) {
        return a.components_ == b.components_;
    }

    /// Canonical "vars ...; dx = ..." text.
    std::string str() const;

private:
    std::vector<Poly> components_;
    std::vector<std::string> names_;
};

/// <grad P, f> for a polynomial P.
Poly lie_derivative(const Poly &p, const VectorField &f);
/// <grad F, f>, normalized; exactly zero iff F is a first integral.
RationalFn lie_derivative(const RationalFn &F, const VectorField &f);

/// Df(x0), exact.
ExactMatrix jacobian_at(const VectorField &f, std::span<const GaussRat> x0);
/// Df(x0) at a numeric point.
NumMatrix jacobian_at(const VectorField &f, std::span<const std::complex<double>> x0);

/// The linear field x' = A x.
VectorField linear_field(const ExactMatrix &A);

GaussRat evaluate(const Poly &p, std::span<const GaussRat> point);
/// Throws DenominatorVanishes when the denominator is zero at the point.
GaussRat evaluate(const RationalFn &F, std::span<const GaussRat> point);

} // namespace resbound
