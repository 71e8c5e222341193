#pragma once

#include "resbound/spectral.hpp"
#include "resbound/vector_field.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace resbound {

/// Basis of the first integrals of f among polynomials of degree 1..max_deg,
/// in reduced echelon form: each element monic in its graded-lex leading
/// monomial, leading monomials decreasing.
std::vector<Poly> polynomial_first_integrals(const VectorField &f, unsigned max_deg);

/// Reduced echelon basis of the span of the given polynomials.
std::vector<Poly> echelon_basis(const std::vector<Poly> &polys);

/// L(G) = K G with deg K <= deg f - 1.
struct DarbouxPair {
    Poly G;
    Poly K;
};

struct DarbouxOptions {
    int starts = 20;        ///< seeded alternating-solve starts for non-constant cofactors
    std::uint64_t seed = 1;
};

/// Constant cofactors from <m, lambda>, |m| <= deg, over the exact spectrum
/// of Df(0), each solved as an exact nullspace; non-constant cofactors by a
/// heuristic alternating least-squares search (deg f >= 2). Every pair is
/// verified exactly. Sorted by cofactor, then G.
std::vector<DarbouxPair> darboux_polynomials(const VectorField &f, unsigned deg, const DarbouxOptions &opts = {});

struct IndependenceCertificate {
    std::vector<RationalFn> functions;
    std::size_t rank = 0;
    std::vector<std::vector<GaussRat>> sample_points;
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Exact Jacobian rank of (F_1..F_m) at seeded random rational points with
/// coordinates p/q, |p| <= 100, 1 <= q <= 10; the maximum over the points.
/// A lower bound on the generic rank. Throws when every point (10 * trials
/// attempts) hits a vanishing denominator.
IndependenceCertificate independence_rank(const std::vector<RationalFn> &Fs, int trials = 20, std::uint64_t seed = 1);

/// Ratios G_0/G_j of Darboux polynomials sharing a cofactor, together with
/// the polynomial first integrals, reduced to a functionally independent
/// subset (greedy, in that order).
std::vector<RationalFn> rational_first_integrals(const VectorField &f, unsigned deg, const DarbouxOptions &opts = {},
                                                 int trials = 20);

struct LowestOrderPart {
    RationalFn F0;
    long d = 0; ///< order of the numerator minus order of the denominator
};

LowestOrderPart lowest_order_part(const RationalFn &F);

/// Nonzero P in m variables of minimal total degree <= deg_cap with
/// P(F_1..F_m) = 0, found from exact samples and verified symbolically.
/// Among minimal-degree relations, the one with the smallest graded-lex
/// leading monomial; monic.
std::optional<Poly> algebraic_dependency(const std::vector<RationalFn> &Fs, unsigned deg_cap, std::uint64_t seed = 1);

/// P(F_1..F_m) as a rational function.
RationalFn compose(const Poly &P, const std::vector<RationalFn> &Fs);

enum class ZiglinStatus { complete, degree_cap, budget };

const char *to_string(ZiglinStatus s);

struct ZiglinResult {
    std::vector<RationalFn> functions;
    ZiglinStatus status = ZiglinStatus::complete;
    int rounds = 0;
    /// (defect before, defect after) for each replacement.
    std::vector<std::pair<long, long>> defects;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Replaces functions by polynomial combinations until the lowest-order
/// parts are functionally independent. Throws PreconditionError when the
/// input is dependent, std::logic_error if a defect fails to decrease.
ZiglinResult ziglin_reduce(const std::vector<RationalFn> &Fs, unsigned deg_cap = 6, std::uint64_t seed = 1,
                           int max_rounds = 64);

struct ResonanceWitness {
    bool resonant = true;
    /// First non-resonant pair of exponents, when resonant is false.
    std::optional<std::pair<Exponent, Exponent>> pair;
};

/// Whether <lambda, k - l> = 0 for all monomials x^k, x^l of the numerator
/// and denominator of F0. Throws std::invalid_argument unless F0 is a
/// quotient of homogeneous polynomials.
ResonanceWitness check_lowest_part_resonant(const RationalFn &F0, std::span<const GaussRat> lambda);

} // namespace resbound
