#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <ostream>
#include <string>

namespace resbound {

/// Builds the canonical rational p/q.
mpq_class rational(long p, long q = 1);

/// Exact complex number with rational real and imaginary parts (an element
/// of Q(i)). Every coefficient and exact eigenvalue in the library uses it.
class GaussRat {
public:
    GaussRat() = default;
    GaussRat(int v) : re_(v) {}
    GaussRat(long v) : re_(v) {}
    GaussRat(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }
    GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRat imaginary_unit() { return GaussRat(0, 1); }

    const mpq_class &re() const { return re_; }
    const mpq_class &im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussRat conj() const { return GaussRat(re_, -im_); }
    /// |z|^2, exact.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussRat &operator+=(const GaussRat &o);
    GaussRat &operator-=(const GaussRat &o);
    GaussRat &operator*=(const GaussRat &o);
    GaussRat &operator/=(const GaussRat &o);

    friend GaussRat operator+(GaussRat a, const GaussRat &b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat &b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat &b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat &b) { return a /= b; }
    GaussRat operator-() const { return GaussRat(-re_, -im_); }

    friend bool operator==(const GaussRat &a, const GaussRat &b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRat &a, const GaussRat &b) { return !(a == b); }

    /// Total order used only for canonical sorting: real part, then imaginary.
    friend bool canonical_less(const GaussRat &a, const GaussRat &b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    GaussRat pow(unsigned e) const;

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
    std::complex<long double> to_complex_ld() const;

    /// Text form accepted back by the vector-field parser: "3/2", "-1",
    /// "(1/2 + 3 i)", "(-2 i)".
    std::string str() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream &operator<<(std::ostream &os, const GaussRat &z);

/// Continued-fraction reconstruction: the convergent p/q of x with the
/// smallest q such that |x - p/q| <= tol, provided q <= max_den.
std::optional<mpq_class> rational_approx(long double x, long double tol, long max_den);

/// Componentwise rational_approx on a complex value.
std::optional<GaussRat> gauss_approx(std::complex<long double> z, long double tol, long max_den);

/// Exact conversion of a binary double into a rational.
mpq_class exact_rational(double x);

/// Element of Z[i]; the integral domain used by fraction-free elimination.
struct GaussInt {
    mpz_class re{0};
    mpz_class im{0};

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    friend GaussInt operator*(const GaussInt &a, const GaussInt &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussInt operator-(const GaussInt &a, const GaussInt &b) {
        return {a.re - b.re, a.im - b.im};
    }
};

/// a / b in Z[i]; the caller guarantees b divides a.
GaussInt divide_exact(const GaussInt &a, const GaussInt &b);

} // namespace resbound
