#include "resbound/rational_fn.hpp"

namespace resbound {

RationalFn::RationalFn(std::size_t nvars) : num_(nvars), den_(Poly::constant(nvars, GaussRat(1))) {}

RationalFn::RationalFn(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.nvars(), GaussRat(1))) {}

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize(true);
}

RationalFn RationalFn::unreduced(Poly num, Poly den) {
    RationalFn r(num.nvars());
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.normalize(false);
    return r;
}

void RationalFn::normalize(bool reduce) {
    if (num_.nvars() != den_.nvars()) throw std::invalid_argument("RationalFn: variable count mismatch");
    if (den_.is_zero()) throw std::domain_error("RationalFn: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.nvars(), GaussRat(1));
        return;
    }
    if (reduce && !den_.is_constant()) {
        Poly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *divide_exact(num_, g);
            den_ = *divide_exact(den_, g);
        }
    }
    GaussRat lc = den_.leading_coeff();
    if (!lc.is_one()) {
        GaussRat inv = GaussRat(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

RationalFn RationalFn::derivative(std::size_t var) const {
    if (den_.is_constant()) return unreduced(num_.derivative(var), den_);
    Poly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return RationalFn(std::move(n), den_ * den_);
}

GaussRat RationalFn::evaluate(std::span<const GaussRat> point) const {
    GaussRat d = den_.evaluate(point);
    if (d.is_zero()) throw DenominatorVanishes();
    return num_.evaluate(point) / d;
}

RationalFn &RationalFn::operator+=(const RationalFn &o) {
    if (den_ == o.den_) return *this = RationalFn(num_ + o.num_, den_);
    return *this = RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFn &RationalFn::operator-=(const RationalFn &o) {
    if (den_ == o.den_) return *this = RationalFn(num_ - o.num_, den_);
    return *this = RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFn &RationalFn::operator*=(const RationalFn &o) {
    return *this = RationalFn(num_ * o.num_, den_ * o.den_);
}

RationalFn &RationalFn::operator/=(const RationalFn &o) {
    if (o.is_zero()) throw std::domain_error("RationalFn: division by zero");
    return *this = RationalFn(num_ * o.den_, den_ * o.num_);
}

RationalFn RationalFn::pow(int e) const {
    if (e >= 0) return unreduced(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
    if (is_zero()) throw std::domain_error("RationalFn: negative power of zero");
    return RationalFn(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
}

std::string RationalFn::str(std::span<const std::string> names) const {
    std::string n = num_.str(names);
    if (den_.is_constant() && den_.constant_term().is_one()) return n;
    std::string d = den_.str(names);
    if (num_.size() > 1) n = "(" + n + ")";
    if (den_.size() > 1 || !den_.is_constant()) d = "(" + d + ")";
    return n + "/" + d;
}

std::string RationalFn::str() const { return str(default_names(nvars())); }

} // namespace resbound
