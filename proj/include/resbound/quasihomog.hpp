#pragma once

#include "resbound/resonance.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace resbound {

enum class QHSign { positive, negative };

const char *to_string(QHSign s);

using Weights = std::vector<long>;

/// f = f_q + f_h with f_q quasi-homogeneous of degree q for the weights s:
/// every monomial x^m of component i of f_q has <m, s> = q + s_i - 1, and
/// every monomial of f_h lies strictly above (positive) or below
/// (negative) that layer.
struct QHDecomposition {
    Weights weights;
    long q = 0;
    VectorField fq;
    VectorField fh;
    QHSign sign = QHSign::positive;

    /// diag(s) / (q - 1).
    ExactMatrix W() const;
};

class DecomposeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Weight degree <m, s> - s_i + 1 of monomial m in component i.
long weight_degree(const Exponent &m, const Weights &s, std::size_t component);

QHDecomposition decompose(const VectorField &f, const Weights &s, QHSign sign = QHSign::positive);

/// Weight vectors with entries in [-bound, bound] \ {0} for which f has a
/// decomposition with q >= 2. Exhaustive, n <= 3.
std::vector<Weights> candidate_weights(const VectorField &f, QHSign sign = QHSign::positive, long bound = 3);

/// Weighted degree l with <m, s> = l for every monomial, if G is
/// quasi-homogeneous.
std::optional<long> quasi_homogeneous_degree(const Poly &G, const Weights &s);

struct BalanceData {
    std::optional<std::vector<GaussRat>> exact; ///< set when c is a Gaussian-rational point
    std::vector<std::complex<double>> c;
    double residual = 0; ///< ||f_q(c) + W c||, zero when exact
    // Filled by kowalevskaya().
    ExactMatrix K;
    SpectrumReport exponents;
    std::size_t d_c = 0;
    Lattice lattice_c;
};

struct BalanceOptions {
    int attempts = 64;
    std::uint64_t seed = 1;
    bool include_zero = false;
};

struct BalanceSearch {
    std::vector<BalanceData> balances;
    /// The exact elimination reached every branch, so the exact balances
    /// are all of them.
    bool exact_complete = false;
};

/// Solutions of f_q(c) + W c = 0: exact elimination (linear substitution
/// and univariate roots), then seeded Newton runs, deduplicated at 1e-8
/// and sorted.
BalanceSearch find_balances(const QHDecomposition &dec, const BalanceOptions &opts = {});

/// Kowalevskaya matrix K = Df_q(c) + W did not have -1 as an eigenvalue.
class MissingMinusOne : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Fills K, its spectrum (the Kowalevskaya exponents), the exponent
/// lattice and d_c. Throws MissingMinusOne for a nonzero balance whose
/// exponents miss -1 (exactly, or within 1e-8 numerically).
BalanceData kowalevskaya(const QHDecomposition &dec, BalanceData c, const LatticeOptions &opts = {});

struct QHBoundReport {
    QHDecomposition decomposition;
    std::vector<BalanceData> balances;
    std::optional<std::size_t> d; ///< empty: no bound derived
    bool exact_complete = false;
};

/// min over found balances of d_c. Missing balances could only lower the
/// minimum, so d is conditional on the balance search being complete.
QHBoundReport theorem4_bound(const VectorField &f, const Weights &s, const BalanceOptions &opts = {},
                             const LatticeOptions &lattice = {}, QHSign sign = QHSign::positive);

/// The (n+1)-dimensional field in (u0, u): u0' = -u0/(q-1),
/// u' = K u + W c + f_q(c + u) - Df_q(c) u. Exact balances only.
VectorField kowalevskaya_system(const QHDecomposition &dec, const BalanceData &c);

/// u0^l * G(c + u) for a quasi-homogeneous G of weight degree l: a first
/// integral of kowalevskaya_system whenever G is one of f_q.
Poly lift_to_kowalevskaya(const Poly &G, const QHDecomposition &dec, const BalanceData &c);

} // namespace resbound
