#include "resbound/gaussian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace resbound {

mpq_class rational(long p, long q) {
    if (q == 0) throw std::invalid_argument("rational: zero denominator");
    mpq_class r(p, q);
    r.canonicalize();
    return r;
}

GaussRat &GaussRat::operator+=(const GaussRat &o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRat &GaussRat::operator-=(const GaussRat &o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRat &GaussRat::operator*=(const GaussRat &o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussRat &GaussRat::operator/=(const GaussRat &o) {
    if (o.is_zero()) throw std::domain_error("GaussRat: division by zero");
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ /= o.re_;
        return *this;
    }
    mpq_class n = o.norm();
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussRat GaussRat::pow(unsigned e) const {
    GaussRat result(1);
    GaussRat base = *this;
    while (e) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e) base *= base;
    }
    return result;
}

namespace {

long double to_ld(const mpq_class &q) {
    // get_d loses nothing that matters at long double precision for the
    // magnitudes used here, but large numerators/denominators must not
    // overflow: go through the exact quotient in two doubles.
    double hi = q.get_d();
    mpq_class rest = q - mpq_class(hi);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

} // namespace

std::complex<long double> GaussRat::to_complex_ld() const {
    return {to_ld(re_), to_ld(im_)};
}

std::string GaussRat::str() const {
    std::ostringstream os;
    if (is_real()) {
        os << re_.get_str();
        return os.str();
    }
    os << '(';
    if (sgn(re_) != 0) {
        os << re_.get_str();
        os << (sgn(im_) < 0 ? " - " : " + ");
        mpq_class a = abs(im_);
        if (a != 1) os << a.get_str() << ' ';
    } else {
        if (sgn(im_) < 0) os << '-';
        mpq_class a = abs(im_);
        if (a != 1) os << a.get_str() << ' ';
    }
    os << "i)";
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const GaussRat &z) { return os << z.str(); }

std::optional<mpq_class> rational_approx(long double x, long double tol, long max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    // Convergents h/k of the continued fraction of x.
    mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
    long double rem = x;
    for (int iter = 0; iter < 64; ++iter) {
        long double a = std::floor(rem);
        mpz_class ai(static_cast<double>(a));
        mpz_class hn = ai * h_prev + h;
        mpz_class kn = ai * k_prev + k;
        h = h_prev;
        k = k_prev;
        h_prev = hn;
        k_prev = kn;
        if (k_prev > max_den) return std::nullopt;
        mpq_class cand(h_prev, k_prev);
        cand.canonicalize();
        long double err = std::fabs(x - to_ld(cand));
        if (err <= tol) return cand;
        long double frac = rem - a;
        if (frac == 0.0L) return std::nullopt;
        rem = 1.0L / frac;
    }
    return std::nullopt;
}

std::optional<GaussRat> gauss_approx(std::complex<long double> z, long double tol, long max_den) {
    auto re = rational_approx(z.real(), tol, max_den);
    if (!re) return std::nullopt;
    auto im = rational_approx(z.imag(), tol, max_den);
    if (!im) return std::nullopt;
    return GaussRat(*re, *im);
}

mpq_class exact_rational(double x) {
    if (!std::isfinite(x)) throw std::domain_error("exact_rational: non-finite value");
    return mpq_class(x);
}

GaussInt divide_exact(const GaussInt &a, const GaussInt &b) {
    // a * conj(b) / |b|^2
    mpz_class n = b.re * b.re + b.im * b.im;
    if (sgn(n) == 0) throw std::domain_error("GaussInt: division by zero");
    mpz_class r = a.re * b.re + a.im * b.im;
    mpz_class i = a.im * b.re - a.re * b.im;
    GaussInt q;
    mpz_divexact(q.re.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), i.get_mpz_t(), n.get_mpz_t());
    return q;
}

} // namespace resbound
