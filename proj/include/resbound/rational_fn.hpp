#pragma once

#include "resbound/poly.hpp"

#include <stdexcept>

namespace resbound {

/// Raised when a rational function is evaluated where its denominator is
/// zero. Callers that sample points catch it and resample.
class DenominatorVanishes : public std::domain_error {
public:
    DenominatorVanishes() : std::domain_error("denominator vanishes at evaluation point") {}
};

/// Quotient G/H of polynomials, kept normalized: common factor removed
/// (up to kGcdDegreeCap) and the graded-lex leading coefficient of H is 1.
class RationalFn {
public:
    explicit RationalFn(std::size_t nvars = 0);
    RationalFn(Poly num); // NOLINT: polynomials are rational functions
    RationalFn(Poly num, Poly den);

    /// Builds G/H without gcd cancellation (only the leading-coefficient
    /// normalization). For callers that know the pair is already reduced.
    static RationalFn unreduced(Poly num, Poly den);

    std::size_t nvars() const { return num_.nvars(); }
    const Poly &num() const { return num_; }
    const Poly &den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    RationalFn derivative(std::size_t var) const;
    GaussRat evaluate(std::span<const GaussRat> point) const;

    RationalFn &operator+=(const RationalFn &o);
    RationalFn &operator-=(const RationalFn &o);
    RationalFn &operator*=(const RationalFn &o);
    RationalFn &operator/=(const RationalFn &o);
    friend RationalFn operator+(RationalFn a, const RationalFn &b) { return a += b; }
    friend RationalFn operator-(RationalFn a, const RationalFn &b) { return a -= b; }
    friend RationalFn operator*(RationalFn a, const RationalFn &b) { return a *= b; }
    friend RationalFn operator/(RationalFn a, const RationalFn &b) { return a /= b; }
    RationalFn operator-() const { return unreduced(-num_, den_); }
    RationalFn pow(int e) const;

    friend bool operator==(const RationalFn &a, const RationalFn &b) {
        // Cross-multiplication keeps equality exact even past the gcd cap.
        return a.nvars() == b.nvars() && a.num_ * b.den_ == b.num_ * a.den_;
    }

    std::string str(std::span<const std::string> names) const;
    std::string str() const;

private:
    void normalize(bool reduce);

    Poly num_;
    Poly den_;
};

} // namespace resbound
