#pragma once

#include "resbound/matrix.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace resbound {

/// Univariate polynomial over Q(i); coeffs[k] multiplies t^k, no trailing
/// zeros (the zero polynomial has no coefficients).
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<GaussRat> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<GaussRat> &coeffs() const { return coeffs_; }
    const GaussRat &leading() const { return coeffs_.back(); }

    GaussRat evaluate(const GaussRat &t) const;
    UPoly derivative() const;
    UPoly monic() const;

    friend UPoly operator-(const UPoly &a, const UPoly &b);
    friend UPoly operator*(const UPoly &a, const UPoly &b);
    friend bool operator==(const UPoly &a, const UPoly &b) { return a.coeffs_ == b.coeffs_; }

    /// Quotient and remainder.
    std::pair<UPoly, UPoly> divmod(const UPoly &d) const;

private:
    void trim();
    std::vector<GaussRat> coeffs_;
};

UPoly gcd(const UPoly &a, const UPoly &b);

/// det(t I - A) by Faddeev-LeVerrier, exact and monic.
UPoly characteristic_polynomial(const ExactMatrix &A);

/// Yun's square-free decomposition: pairs (factor, multiplicity) with
/// pairwise coprime monic factors.
std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly &p);

struct NumericRoot {
    std::complex<long double> value;
    long double radius = 0; ///< inclusion-disk radius
};

/// Durand-Kerner (Weierstrass) iteration with a-posteriori inclusion
/// radii. Disks whose union overlaps share a cluster radius.
std::vector<NumericRoot> durand_kerner(const UPoly &p, int max_iter = 200, long double rel_tol = 1e-14L);

/// All roots of a square-free p, if every one is a Gaussian rational
/// (verified by exact evaluation).
std::optional<std::vector<GaussRat>> exact_roots(const UPoly &squarefree_p);

} // namespace resbound
