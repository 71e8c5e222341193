#include "doctest.h"

#include "resbound/parser.hpp"
#include "resbound/vector_field.hpp"

#include <random>

using namespace resbound;

namespace {

const std::vector<std::string> XY{"x", "y"};

Poly P(const char *text) { return parse_polynomial(text, XY); }

Poly random_poly(std::mt19937_64 &rng, std::size_t n, unsigned max_deg, int terms) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5), deg(0, static_cast<int>(max_deg));
    Poly p(n);
    for (int t = 0; t < terms; ++t) {
        Exponent e(n);
        for (auto &x : e) x = static_cast<uint32_t>(deg(rng));
        p.add_term(e, GaussRat(rational(num(rng), den(rng)), rational(num(rng) / 3, den(rng))));
    }
    return p;
}

} // namespace

TEST_CASE("parse vector fields") {
    auto f = parse_vector_field("vars x,y; dx = x; dy = -y");
    CHECK(f.nvars() == 2);
    CHECK(f[0] == Poly::variable(2, 0));
    CHECK(f[1] == -Poly::variable(2, 1));

    auto g = parse_vector_field("vars x,y; dx = y; dy = x^2");
    CHECK(g[0] == Poly::variable(2, 1));
    CHECK(g[1] == Poly::variable(2, 0).pow(2));

    auto h = parse_vector_field("vars x; dx = 3/2*x^2 + x");
    Poly x = Poly::variable(1, 0);
    CHECK(h[0] == GaussRat(rational(3, 2)) * x.pow(2) + x);

    auto c = parse_vector_field("vars x,y\ndx = (1/2 + 3 i)*y # comment\ndy = -2 i*x\n");
    CHECK(c[0].coeff({0, 1}) == GaussRat(rational(1, 2), 3));
    CHECK(c[1].coeff({1, 0}) == GaussRat(0, -2));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_vector_field("vars x,y; dx = z; dy = y"), ParseError);
    CHECK_THROWS_AS(parse_vector_field("vars x; dx = 1.5*x"), ParseError);
    CHECK_THROWS_AS(parse_vector_field("vars x,y; dx = x"), ParseError);
    CHECK_THROWS_AS(parse_vector_field("vars x; dx = x^-1"), ParseError);
    CHECK_THROWS_AS(parse_vector_field("vars x; dx = x/y"), ParseError);
    try {
        parse_vector_field("vars x,y\ndx = x +* y\ndy = y");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("lie derivative examples") {
    auto saddle = parse_vector_field("vars x,y; dx = x; dy = -y");
    CHECK(lie_derivative(RationalFn(P("x*y")), saddle).is_zero());
    CHECK(lie_derivative(RationalFn(P("x")), saddle) == RationalFn(P("x")));

    auto cusp = parse_vector_field("vars x,y; dx = y; dy = x^2");
    CHECK(lie_derivative(RationalFn(P("1/2*y^2 - 1/3*x^3")), cusp).is_zero());

    auto resonant = parse_vector_field("vars x,y; dx = 2*x; dy = 3*y");
    CHECK(lie_derivative(RationalFn(P("x^3"), P("y^2")), resonant).is_zero());
    CHECK_FALSE(lie_derivative(RationalFn(P("x^2"), P("y^3")), resonant).is_zero());
}

TEST_CASE("jacobian examples") {
    auto saddle = parse_vector_field("vars x,y; dx = x; dy = -y");
    std::vector<GaussRat> origin(2);
    CHECK(jacobian_at(saddle, origin) == ExactMatrix{{1, 0}, {0, -1}});

    auto cusp = parse_vector_field("vars x,y; dx = y; dy = x^2");
    CHECK(jacobian_at(cusp, origin) == ExactMatrix{{0, 1}, {0, 0}});
    std::vector<GaussRat> c{6, -12};
    CHECK(jacobian_at(cusp, c) == ExactMatrix{{0, 1}, {12, 0}});
}

TEST_CASE("evaluate examples") {
    std::vector<GaussRat> p23{2, 3};
    CHECK(P("x*y").evaluate(p23) == GaussRat(6));
    std::vector<GaussRat> p10{1, 0};
    CHECK_THROWS_AS(evaluate(RationalFn(P("x^2"), P("y")), p10), DenominatorVanishes);
    std::vector<GaussRat> p31{3, 1};
    CHECK(evaluate(RationalFn(P("x + y"), P("x - y")), p31) == GaussRat(2));
}

TEST_CASE("rational functions are normalized") {
    RationalFn f(P("x^2 - y^2"), P("2*x - 2*y"));
    CHECK(f.den() == Poly::constant(2, 1));
    CHECK(f.num() == GaussRat(rational(1, 2)) * P("x + y"));

    RationalFn g(P("3*x"), P("6*y"));
    CHECK(g.den().leading_coeff().is_one());
    CHECK(g == RationalFn(P("x"), P("2*y")));
    CHECK(RationalFn(Poly(2), P("x + 1")).den() == Poly::constant(2, 1));
    CHECK_THROWS(RationalFn(P("x"), Poly(2)));
}

TEST_CASE("gcd") {
    CHECK(gcd(P("x^2 - y^2"), P("x^2 + 2*x*y + y^2")) == P("x + y"));
    CHECK(gcd(P("x^3*y - x*y^3"), P("x^2*y")) == P("x*y"));
    CHECK(gcd(P("x + 1"), P("y + 1")) == Poly::constant(2, 1));
    CHECK(gcd(P("6*x"), Poly(2)) == P("x"));
}

TEST_CASE("series division truncates at total degree") {
    // 1/(1 - x - y) = sum (x + y)^k
    Poly q = series_divide(Poly::constant(2, 1), P("1 - x - y"), 3);
    Poly expected(2);
    for (unsigned k = 0; k <= 3; ++k) expected += P("x + y").pow(k);
    CHECK(q == expected);
    CHECK((q * P("1 - x - y")).truncate(3) == Poly::constant(2, 1));
    CHECK_THROWS(series_divide(P("x"), P("y"), 2));
}

TEST_CASE("ring laws on random instances") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Poly a = random_poly(rng, 3, 3, 5), b = random_poly(rng, 3, 3, 5), c = random_poly(rng, 3, 3, 5);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == Poly(3));
    }
}

TEST_CASE("lie derivative is a derivation") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        VectorField f({random_poly(rng, 2, 2, 3), random_poly(rng, 2, 2, 3)});
        Poly F = random_poly(rng, 2, 3, 4), G = random_poly(rng, 2, 3, 4);
        CHECK(lie_derivative(F * G, f) == lie_derivative(F, f) * G + F * lie_derivative(G, f));
        RationalFn R(F);
        CHECK(lie_derivative(R, f) == RationalFn(lie_derivative(F, f)));
    }
}

TEST_CASE("parse of print is the identity") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        Poly a = random_poly(rng, 2, 4, 6);
        CHECK(parse_polynomial(a.str(XY), XY) == a);
    }
    auto f = parse_vector_field("vars x,y; dx = (1/2 - 3 i)*x*y - 7/3; dy = x^4 - y");
    CHECK(parse_vector_field(f.str()) == f);
    CHECK(parse_constant(GaussRat(rational(-5, 7), rational(2, 3)).str()) == GaussRat(rational(-5, 7), rational(2, 3)));
}

TEST_CASE("lie derivative matches a finite difference") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    auto f = parse_vector_field("vars x,y; dx = y + x^2; dy = 2*x - x*y");
    RationalFn F(P("x^2*y + 1"), P("y^2 + 2"));
    RationalFn L = lie_derivative(F, f);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<GaussRat> p{exact_rational(coord(rng)), exact_rational(coord(rng))};
        const double h = 1e-6;
        auto fp = f.evaluate(p);
        std::vector<GaussRat> q{p[0] + fp[0] * GaussRat(exact_rational(h)), p[1] + fp[1] * GaussRat(exact_rational(h))};
        double fd = (F.evaluate(q) - F.evaluate(p)).re().get_d() / h;
        double exact = L.evaluate(p).re().get_d();
        CHECK(std::abs(fd - exact) <= 1e-4 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("gaussian rationals built from unreduced fractions are canonical") {
    CHECK(GaussRat(mpq_class(2, 2)) == GaussRat(1));
    CHECK(GaussRat(mpq_class(-4, 6), mpq_class(3, 9)) == GaussRat(mpq_class(-2, 3), mpq_class(1, 3)));
    CHECK(GaussRat(mpq_class(6, -4)).str() == "-3/2");
}
