#pragma once

#include "resbound/resonance.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace resbound {

/// a cos(k w t) + b sin(k w t), w = 2 pi / T.
struct TrigTerm {
    unsigned k = 1;
    mpq_class cos_coeff{0};
    mpq_class sin_coeff{0};
};

/// c0 + sum of TrigTerm: one entry of A(t).
struct TrigPoly {
    mpq_class c0{0};
    std::vector<TrigTerm> terms;

    bool is_constant() const;
    double evaluate(double t, double w) const;
};

/// x' = A(t) x with T-periodic trigonometric-polynomial entries.
struct PeriodicLinearSystem {
    std::size_t n = 0;
    double period = 0;
    /// Set when the period was written as a rational multiple of pi.
    std::optional<mpq_class> period_over_pi;
    std::vector<TrigPoly> entries; ///< row-major n x n

    static PeriodicLinearSystem constant(const ExactMatrix &A, double period);

    TrigPoly &entry(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    const TrigPoly &entry(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
    bool is_constant() const;
    /// The constant part of every entry, exactly.
    ExactMatrix mean_matrix() const;
    /// Integral of trace A over one period (oscillating terms integrate to 0).
    double trace_integral() const;
};

/// Text format:
///
///     period 2*pi; n = 2
///     A[1][2] = 1
///     A[2][1] = -1 + 1/2*cos(w*t) - 3*sin(2*w*t)
///
/// Indices are 1-based; entries not given are zero.
PeriodicLinearSystem parse_periodic_system(std::string_view text);

/// X(T) for X' = A(t) X, X(0) = I, classical RK4 with fixed step T/steps.
NumMatrix integrate_monodromy(const PeriodicLinearSystem &sys, int steps);

struct IntegratorStats {
    int steps = 0;
    double est_error = 0; ///< Richardson estimate ||X_N - X_2N|| * 16/15
};

struct MonodromyReport {
    NumMatrix M;
    SpectrumReport multipliers;
    Lattice lattice;
    std::size_t bound = 0;
    IntegratorStats stats;
    /// |det M - exp(int trace A)| / exp(int trace A)
    double liouville_deviation = 0;
    /// Tolerance actually used for the multiplier lattice; larger than the
    /// requested one when integration error dominates.
    double lattice_tolerance = 0;
};

/// Requires steps >= 100.
MonodromyReport monodromy(const PeriodicLinearSystem &sys, int steps, const LatticeOptions &opts = {});

struct FloquetCheck {
    std::vector<std::complex<double>> expected; ///< exp(T lambda)
    std::vector<std::complex<double>> computed;
    double max_relative_deviation = 0;
};

/// Multipliers of a constant system against exp(T lambda_i).
FloquetCheck floquet_check(const PeriodicLinearSystem &sys, int steps);

} // namespace resbound
