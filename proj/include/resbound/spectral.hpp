#pragma once

#include "resbound/matrix.hpp"
#include "resbound/upoly.hpp"

#include <optional>
#include <vector>

namespace resbound {

enum class Mode { exact, numeric };

const char *to_string(Mode m);

struct Eigenvalue {
    std::optional<GaussRat> exact; ///< set when the value is known exactly
    std::complex<double> approx;
    double error_radius = 0;
    unsigned multiplicity = 1;
};

/// Eigenvalues with multiplicities. In exact mode every value carries its
/// Gaussian-rational form and a zero radius.
struct SpectrumReport {
    Mode mode = Mode::exact;
    std::vector<Eigenvalue> values;

    std::size_t dimension() const;
    /// The n-tuple (lambda_1, ..., lambda_n), multiplicities expanded.
    std::vector<GaussRat> exact_tuple() const;
    std::vector<std::complex<double>> numeric_tuple() const;
    std::vector<double> radius_tuple() const;
};

struct SpectralOptions {
    /// Numeric roots closer than this merge into one value with summed
    /// multiplicity.
    double merge_distance = 1e-10;
    /// Read triangular matrices off the diagonal instead of factoring the
    /// characteristic polynomial.
    bool triangular_shortcut = true;
};

/// Exact mode when the characteristic polynomial splits over Q(i);
/// otherwise Durand-Kerner values with certified inclusion radii.
SpectrumReport eigenvalues(const ExactMatrix &A, const SpectralOptions &opts = {});
/// The numeric matrix is read as the exact dyadic matrix it stores.
SpectrumReport eigenvalues(const NumMatrix &A, const SpectralOptions &opts = {});

/// Matrix of h -> <grad h, A x> - c h on homogeneous polynomials of degree
/// m, basis homogeneous_basis(n, m); column j is the image of basis j.
ExactMatrix lie_operator_matrix(const ExactMatrix &A, unsigned m, const GaussRat &c);

/// Matrix of h -> h(B x) - c h on the same basis.
ExactMatrix composition_operator_matrix(const ExactMatrix &B, unsigned m, const GaussRat &c);

} // namespace resbound
