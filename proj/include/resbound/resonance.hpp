#pragma once

#include "resbound/exact_linalg.hpp"
#include "resbound/spectral.hpp"
#include "resbound/vector_field.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace resbound {

/// Integer relations of a spectrum: {k in Z^n : <k, lambda> = 0} or
/// {k : mu^k = 1}. The basis is in Hermite normal form, so equal lattices
/// compare equal. Numeric lattices are candidates: an undetected relation
/// makes their rank an under-estimate.
struct Lattice {
    std::size_t nvars = 0;
    std::vector<IntVec> basis;
    Mode mode = Mode::exact;
    std::vector<double> residuals; ///< numeric mode: one per basis vector
    double tolerance = 0;          ///< numeric mode
    long search_bound = 0;         ///< numeric mode: max |k_i| accepted

    std::size_t rank() const { return basis.size(); }
};

/// Relation detection asked for below the accuracy of its input.
class ToleranceInfeasible : public std::invalid_argument {
public:
    ToleranceInfeasible(double tol, double accuracy);
    double tolerance() const { return tol_; }
    double accuracy() const { return accuracy_; }

private:
    double tol_;
    double accuracy_;
};

/// Kernel of the rational rows (Re lambda, Im lambda) over the integers.
Lattice additive_lattice_exact(std::span<const GaussRat> lambda);

/// Integer relations with |k_i| <= kmax and |<k, lambda>| <= tol, by LLL
/// reduction (delta 0.99) of the identity block augmented with the real
/// and imaginary parts scaled by 1/tol. Throws ToleranceInfeasible when
/// tol is below the largest error radius.
Lattice additive_lattice_numeric(std::span<const std::complex<double>> lambda, double tol, long kmax,
                                 std::span<const double> error_radii = {});

/// Exact route when every multiplier is a nonzero rational (exponent
/// vectors over a coprime base plus a sign-parity row); otherwise the
/// numeric route on (log|mu|, arg mu mod 2 pi).
Lattice multiplicative_lattice(std::span<const GaussRat> mu, double tol, long kmax);
Lattice multiplicative_lattice(std::span<const std::complex<double>> mu, double tol, long kmax,
                               std::span<const double> error_radii = {});

struct LatticeOptions {
    Mode mode = Mode::exact; ///< exact means "exact whenever the spectrum allows"
    double tol = 1e-10;
    long kmax = 50;
};

Lattice additive_lattice(const SpectrumReport &spectrum, const LatticeOptions &opts = {});
Lattice multiplicative_lattice(const SpectrumReport &spectrum, const LatticeOptions &opts = {});

/// The point handed to theorem1_bound is not an equilibrium.
class NotSingular : public std::invalid_argument {
public:
    NotSingular(std::size_t component, const GaussRat &value);
    std::size_t component() const { return component_; }

private:
    std::size_t component_;
};

struct BoundReport {
    std::size_t bound = 0;
    Lattice lattice;
    SpectrumReport spectrum;
};

/// Rank of the resonant lattice of the Jacobian spectrum at x0.
BoundReport theorem1_bound(const VectorField &f, std::span<const GaussRat> x0, const LatticeOptions &opts = {});

} // namespace resbound
