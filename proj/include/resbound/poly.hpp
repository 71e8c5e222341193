#pragma once

#include "resbound/gaussian.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace resbound {

/// Exponent multi-index of a monomial x^k.
using Exponent = std::vector<std::uint32_t>;

unsigned total_degree(const Exponent &e);

/// Graded lexicographic order with x1 > x2 > ... > xn.
struct GrlexLess {
    bool operator()(const Exponent &a, const Exponent &b) const;
};

/// All exponents of total degree exactly m in n variables, in decreasing
/// graded-lex order (x^2, xy, y^2 for n = 2, m = 2).
std::vector<Exponent> homogeneous_basis(std::size_t n, unsigned m);

/// All exponents with lo <= |k| <= hi, degree ascending, each degree block
/// in decreasing lex order.
std::vector<Exponent> monomials_up_to(std::size_t n, unsigned lo, unsigned hi);

/// Exact multivariate polynomial over Q(i). Terms are kept in a graded-lex
/// ordered map with no zero coefficients, so structural equality is
/// mathematical equality.
class Poly {
public:
    using TermMap = std::map<Exponent, GaussRat, GrlexLess>;

    explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const GaussRat &c);
    static Poly variable(std::size_t nvars, std::size_t index);
    static Poly monomial(Exponent e, const GaussRat &c = GaussRat(1));

    std::size_t nvars() const { return nvars_; }
    const TermMap &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Coefficient of x^e (zero when absent).
    GaussRat coeff(const Exponent &e) const;
    /// Constant term.
    GaussRat constant_term() const;

    /// Maximal total degree; -1 for the zero polynomial.
    int degree() const;
    /// Minimal total degree of a term (the order at 0); -1 for zero.
    int order() const;
    unsigned degree_in(std::size_t var) const;
    bool is_homogeneous() const;

    /// Sum of the terms of total degree exactly d.
    Poly homogeneous_part(unsigned d) const;
    /// Terms of total degree at most d.
    Poly truncate(unsigned d) const;
    /// Graded-lex largest term.
    const Exponent &leading_exponent() const;
    const GaussRat &leading_coeff() const;
    /// Divides by the leading coefficient; zero stays zero.
    Poly monic() const;

    void add_term(const Exponent &e, const GaussRat &c);

    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    Poly &operator*=(const Poly &o);
    Poly &operator*=(const GaussRat &c);

    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator*(const Poly &a, const Poly &b);
    friend Poly operator*(Poly a, const GaussRat &c) { return a *= c; }
    friend Poly operator*(const GaussRat &c, Poly a) { return a *= c; }
    Poly operator-() const;

    friend bool operator==(const Poly &a, const Poly &b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Poly pow(unsigned e) const;
    Poly derivative(std::size_t var) const;

    GaussRat evaluate(std::span<const GaussRat> point) const;
    std::complex<double> evaluate(std::span<const std::complex<double>> point) const;

    /// Substitutes x_i := subs[i]; the result lives in subs' variable count.
    Poly compose(std::span<const Poly> subs) const;

    /// Same terms viewed in a larger ring: variable i maps to new index
    /// offset + i.
    Poly embed(std::size_t new_nvars, std::size_t offset) const;

    /// Canonical text, parseable by parse_polynomial with the same names.
    std::string str(std::span<const std::string> names) const;
    std::string str() const;

private:
    std::size_t nvars_;
    TermMap terms_;
};

/// Default variable names x1..xn (x, y, z for n <= 3).
std::vector<std::string> default_names(std::size_t n);

/// q with a == q * b, if b divides a exactly.
std::optional<Poly> divide_exact(const Poly &a, const Poly &b);

/// Power series of num/den at the origin, truncated to total degree d.
/// Requires den(0) != 0.
Poly series_divide(const Poly &num, const Poly &den, unsigned d);

/// Total-degree cap above which gcd() gives up and returns 1.
inline constexpr int kGcdDegreeCap = 12;

/// Monic greatest common divisor (recursive primitive PRS). Returns 1 when
/// either input exceeds kGcdDegreeCap in total degree.
Poly gcd(const Poly &a, const Poly &b);

} // namespace resbound
