#include "doctest.h"

#include "resbound/parser.hpp"
#include "resbound/quasihomog.hpp"

#include <random>

using namespace resbound;

namespace {

const std::vector<std::string> XY{"x", "y"};

VectorField F(const char *text) { return parse_vector_field(text); }

std::vector<GaussRat> G(std::initializer_list<long> xs) {
    std::vector<GaussRat> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

BalanceData exact_balance(std::vector<GaussRat> c) {
    BalanceData b;
    for (const auto &x : c) b.c.push_back(x.to_complex());
    b.exact = std::move(c);
    return b;
}

bool has_exponent(const SpectrumReport &s, const GaussRat &v) {
    for (const auto &e : s.values)
        if (e.exact && *e.exact == v) return true;
    return false;
}

} // namespace

TEST_CASE("decompose examples") {
    auto d = decompose(F("vars x,y; dx = y; dy = x^2"), {2, 3});
    CHECK(d.q == 2);
    CHECK(d.fq == F("vars x,y; dx = y; dy = x^2"));
    CHECK(d.fh.is_zero());
    CHECK(d.W() == ExactMatrix{{2, 0}, {0, 3}});

    auto e = decompose(F("vars x,y; dx = y + x^2; dy = x^2"), {2, 3});
    CHECK(e.q == 2);
    CHECK(e.sign == QHSign::positive);
    CHECK(e.fq == F("vars x,y; dx = y; dy = x^2"));
    CHECK(e.fh == F("vars x,y; dx = x^2; dy = 0"));

    auto h = decompose(F("vars x,y; dx = x^2; dy = 0"), {1, 1});
    CHECK(h.q == 2);
    CHECK(h.fq[0] == parse_polynomial("x^2", XY));

    CHECK_THROWS_AS(decompose(F("vars x,y; dx = -y; dy = x"), {1, 1}), DecomposeError);
    CHECK_THROWS_AS(decompose(F("vars x,y; dx = y; dy = x^2"), {0, 3}), DecomposeError);
    CHECK_THROWS_AS(decompose(F("vars x,y; dx = 0; dy = 0"), {1, 1}), DecomposeError);
}

TEST_CASE("negative decomposition keeps the top layer") {
    auto d = decompose(F("vars x,y; dx = y + x^2; dy = x^2"), {2, 3}, QHSign::negative);
    // Weights: y in dx -> 2, x^2 in dx -> 3, x^2 in dy -> 2.
    CHECK(d.q == 3);
    CHECK(d.fq == F("vars x,y; dx = x^2; dy = 0"));
    CHECK(d.fh == F("vars x,y; dx = y; dy = x^2"));
}

TEST_CASE("decomposition invariants on random fields") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, 3), wt(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Poly> comps;
        for (int i = 0; i < 2; ++i) {
            Poly p(2);
            for (int t = 0; t < 4; ++t)
                p.add_term({static_cast<uint32_t>(deg(rng)), static_cast<uint32_t>(deg(rng))}, GaussRat(coef(rng)));
            comps.push_back(p);
        }
        VectorField f(comps);
        Weights s{wt(rng), wt(rng)};
        for (auto sign : {QHSign::positive, QHSign::negative}) {
            QHDecomposition d;
            try {
                d = decompose(f, s, sign);
            } catch (const DecomposeError &) {
                continue;
            }
            CHECK(d.q >= 2);
            for (std::size_t i = 0; i < 2; ++i) {
                CHECK(d.fq[i] + d.fh[i] == f[i]);
                for (const auto &[m, c] : d.fq[i].terms()) CHECK(weight_degree(m, s, i) == d.q);
                for (const auto &[m, c] : d.fh[i].terms())
                    CHECK((sign == QHSign::positive ? weight_degree(m, s, i) > d.q : weight_degree(m, s, i) < d.q));
            }
        }
    }
}

TEST_CASE("generalized Euler identity") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> coef(-5, 5), wt(1, 3), target(4, 12);
    for (int trial = 0; trial < 30; ++trial) {
        Weights s{wt(rng), wt(rng), wt(rng)};
        long l = target(rng);
        Poly g(3);
        for (const auto &m : monomials_up_to(3, 0, static_cast<unsigned>(l))) {
            long w = 0;
            for (std::size_t j = 0; j < 3; ++j) w += static_cast<long>(m[j]) * s[j];
            if (w == l) g.add_term(m, GaussRat(coef(rng)));
        }
        if (g.is_zero()) continue;
        REQUIRE(quasi_homogeneous_degree(g, s) == l);
        std::vector<Poly> sx;
        for (std::size_t j = 0; j < 3; ++j) sx.push_back(Poly::variable(3, j) * GaussRat(s[j]));
        CHECK(lie_derivative(g, VectorField(sx)) == g * GaussRat(l));
    }
}

TEST_CASE("balances of the cusp") {
    auto d = decompose(F("vars x,y; dx = y; dy = x^2"), {2, 3});
    auto search = find_balances(d, {.attempts = 16, .seed = 5});
    CHECK(search.exact_complete);
    REQUIRE(search.balances.size() == 1);
    const auto &b = search.balances[0];
    REQUIRE(b.exact);
    CHECK(*b.exact == G({6, -12}));
    CHECK(b.residual == 0);

    auto with_zero = find_balances(d, {.attempts = 4, .seed = 5, .include_zero = true});
    CHECK(with_zero.balances.size() == 2);
}

TEST_CASE("one-dimensional balance") {
    auto d = decompose(F("vars x; dx = x^2"), {1});
    CHECK(d.W() == ExactMatrix{{1}});
    auto search = find_balances(d, {.attempts = 8, .seed = 3});
    REQUIRE(search.balances.size() == 1);
    CHECK(*search.balances[0].exact == G({-1}));
    auto k = kowalevskaya(d, search.balances[0]);
    CHECK(k.K == ExactMatrix{{-1}});
    CHECK(k.exponents.exact_tuple() == G({-1}));
    // -k = 0 only for k = 0.
    CHECK(k.d_c == 0);
}

TEST_CASE("kowalevskaya data at the cusp balance") {
    auto d = decompose(F("vars x,y; dx = y; dy = x^2"), {2, 3});
    auto k = kowalevskaya(d, exact_balance(G({6, -12})));
    CHECK(k.K == ExactMatrix{{2, 1}, {12, 3}});
    CHECK(k.exponents.mode == Mode::exact);
    CHECK(has_exponent(k.exponents, -1));
    CHECK(has_exponent(k.exponents, 6));
    CHECK(k.d_c == 1);
    IntVec v{6, 1};
    CHECK(k.lattice_c.basis == std::vector<IntVec>{v});
}

TEST_CASE("theorem4_bound") {
    auto r = theorem4_bound(F("vars x,y; dx = y; dy = x^2"), {2, 3}, {.attempts = 16, .seed = 1});
    REQUIRE(r.d);
    CHECK(*r.d == 1);

    // Balances (-1,-1), (-1,0), (0,-1); K is diagonal with entries in
    // {-1, 1}: every exponent lattice has rank 1.
    auto s = theorem4_bound(F("vars x,y; dx = x^2; dy = y^2"), {1, 1}, {.attempts = 32, .seed = 1});
    CHECK(s.exact_complete);
    REQUIRE(s.balances.size() == 3);
    for (const auto &b : s.balances) {
        REQUIRE(b.exact);
        CHECK(b.d_c == 1);
    }
    CHECK(*s.d == 1);

    // x' = y^2, y' = 0: f_q(c) + W c = 0 forces c = 0.
    auto none = theorem4_bound(F("vars x,y; dx = y^2; dy = 0"), {1, 1}, {.attempts = 16, .seed = 1});
    CHECK(none.balances.empty());
    CHECK_FALSE(none.d);
}

TEST_CASE("numeric balances keep -1 among the exponents") {
    // c1 = -c2^2 and c2^4 + c2 = 0: (-1, -1) is exact, the two balances
    // with c2^2 - c2 + 1 = 0 come from Newton only.
    auto d = decompose(F("vars x,y; dx = y^2; dy = x^2"), {1, 1});
    auto search = find_balances(d, {.attempts = 64, .seed = 9});
    CHECK_FALSE(search.exact_complete);
    REQUIRE(search.balances.size() == 3);
    int exact = 0;
    for (const auto &b : search.balances) exact += b.exact ? 1 : 0;
    CHECK(exact == 1);
    for (const auto &b : search.balances) {
        CHECK(b.residual <= 1e-10);
        auto k = kowalevskaya(d, b);
        bool found = false;
        for (const auto &e : k.exponents.values) found = found || std::abs(e.approx + 1.0) <= 1e-8;
        CHECK(found);
    }
}

TEST_CASE("transformed system at the cusp balance") {
    auto d = decompose(F("vars x,y; dx = y; dy = x^2"), {2, 3});
    auto b = exact_balance(G({6, -12}));
    auto sys = kowalevskaya_system(d, b);
    CHECK(sys == parse_vector_field("vars u0,u1,u2; du0 = -u0; du1 = 2*u1 + u2; du2 = 12*u1 + 3*u2 + u1^2"));

    Poly H = parse_polynomial("1/2*y^2 - 1/3*x^3", XY);
    CHECK(quasi_homogeneous_degree(H, d.weights) == 6);
    Poly lifted = lift_to_kowalevskaya(H, d, b);
    CHECK(lifted.coeff({6, 0, 0}) == H.evaluate(*b.exact));
    CHECK(lie_derivative(lifted, sys).is_zero());

    BalanceData numeric;
    numeric.c = {{6, 0}, {-12, 0}};
    CHECK_THROWS_AS(kowalevskaya_system(d, numeric), std::invalid_argument);

    // c = 0: u' = W u + f_q(u).
    auto z = kowalevskaya_system(d, exact_balance(G({0, 0})));
    CHECK(z == parse_vector_field("vars u0,u1,u2; du0 = -u0; du1 = 2*u1 + u2; du2 = 3*u2 + u1^2"));
}

TEST_CASE("candidate weights") {
    auto ws = candidate_weights(F("vars x,y; dx = y; dy = x^2"));
    bool found = false;
    for (const auto &w : ws) {
        CHECK(decompose(F("vars x,y; dx = y; dy = x^2"), w).q >= 2);
        found = found || w == Weights{2, 3};
    }
    CHECK(found);
}

TEST_CASE("non-primitive weights give the same exponents") {
    auto f = parse_vector_field("vars x,y; dx = x^2; dy = y^2");
    for (Weights s : {Weights{1, 1}, Weights{2, 2}, Weights{3, 3}}) {
        auto q = theorem4_bound(f, s, {}, {});
        REQUIRE(q.d);
        CHECK(*q.d == 1);
        CHECK(q.balances.size() == 3);
        for (const auto &b : q.balances) CHECK(b.exponents.mode == Mode::exact);
    }
}

TEST_CASE("numeric balances give numeric exponents") {
    // c^3 + c/2 = 0 has no Gaussian-rational root besides 0.
    auto f = parse_vector_field("vars x,y; dx = x^3; dy = y^3");
    auto q = theorem4_bound(f, {1, 1}, {}, {});
    REQUIRE(q.d);
    CHECK(*q.d == 1);
    CHECK(q.balances.size() == 8);
    for (const auto &b : q.balances) {
        CHECK_FALSE(b.exact);
        CHECK(b.exponents.mode == Mode::numeric);
        CHECK(b.lattice_c.mode == Mode::numeric);
        bool minus_one = false;
        for (auto z : b.exponents.numeric_tuple()) minus_one = minus_one || std::abs(z + 1.0) < 1e-8;
        CHECK(minus_one);
    }
}
