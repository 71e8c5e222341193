#include "doctest.h"

#include "resbound/parser.hpp"
#include "resbound/resonance.hpp"

#include <cmath>
#include <random>

using namespace resbound;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

bool is_hnf(const std::vector<IntVec> &rows) {
    std::size_t last = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t p = 0;
        while (p < rows[r].size() && sgn(rows[r][p]) == 0) ++p;
        if (p == rows[r].size() || (r > 0 && p <= last) || sgn(rows[r][p]) <= 0) return false;
        for (std::size_t above = 0; above < r; ++above)
            if (sgn(rows[above][p]) < 0 || rows[above][p] >= rows[r][p]) return false;
        last = p;
    }
    return true;
}

GaussRat dot(const IntVec &k, std::span<const GaussRat> lambda) {
    GaussRat s = 0;
    for (std::size_t i = 0; i < k.size(); ++i) s += GaussRat(mpq_class(k[i])) * lambda[i];
    return s;
}

std::vector<GaussRat> origin(std::size_t n) { return std::vector<GaussRat>(n); }

} // namespace

TEST_CASE("exact additive lattice examples") {
    std::vector<GaussRat> a{1, -1};
    auto L = additive_lattice_exact(a);
    CHECK(L.rank() == 1);
    CHECK(L.basis == std::vector<IntVec>{iv({1, 1})});

    std::vector<GaussRat> b{2, 3};
    CHECK(additive_lattice_exact(b).basis == std::vector<IntVec>{iv({3, -2})});

    std::vector<GaussRat> c{0, 0};
    CHECK(additive_lattice_exact(c).basis == std::vector<IntVec>{iv({1, 0}), iv({0, 1})});

    std::vector<GaussRat> d{1, GaussRat(rational(1, 2)), -2};
    auto Ld = additive_lattice_exact(d);
    CHECK(Ld.rank() == 2);
    for (const auto &k : Ld.basis) CHECK(dot(k, d).is_zero());
    CHECK(is_hnf(Ld.basis));

    // Conjugate pair: i k1 - i k2 = 0 only.
    std::vector<GaussRat> e{GaussRat(0, 1), GaussRat(0, -1), 2};
    auto Le = additive_lattice_exact(e);
    CHECK(Le.basis == std::vector<IntVec>{iv({1, 1, 0})});
}

TEST_CASE("numeric additive lattice examples") {
    std::vector<std::complex<double>> a{1.0, -1.0};
    auto L = additive_lattice_numeric(a, 1e-10, 10);
    CHECK(L.mode == Mode::numeric);
    CHECK(L.search_bound == 10);
    CHECK(L.basis == std::vector<IntVec>{iv({1, 1})});
    REQUIRE(L.residuals.size() == 1);
    CHECK(L.residuals[0] <= 1e-10);

    std::vector<std::complex<double>> c{1.0, 0.5, -2.0};
    std::vector<GaussRat> ce{1, GaussRat(rational(1, 2)), -2};
    CHECK(additive_lattice_numeric(c, 1e-10, 10).basis == additive_lattice_exact(ce).basis);
}

TEST_CASE("sqrt 2 has no small relation") {
    std::vector<std::complex<double>> lam{1.0, 1.4142135623730951};
    auto L = additive_lattice_numeric(lam, 1e-10, 50);
    CHECK(L.rank() == 0);
    int hits = 0;
    for (int k1 = -50; k1 <= 50; ++k1)
        for (int k2 = -50; k2 <= 50; ++k2)
            if ((k1 || k2) && std::abs(k1 + k2 * 1.4142135623730951) <= 1e-10) ++hits;
    CHECK(hits == 0);
}

TEST_CASE("numeric lattice refuses tolerances below the input accuracy") {
    std::vector<std::complex<double>> lam{1.0, -1.0};
    std::vector<double> radii{1e-8, 1e-9};
    CHECK_THROWS_AS(additive_lattice_numeric(lam, 1e-10, 10, radii), ToleranceInfeasible);
    CHECK_NOTHROW(additive_lattice_numeric(lam, 1e-7, 10, radii));
    CHECK_THROWS_AS(additive_lattice_numeric(lam, 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(additive_lattice_numeric(lam, 1e-10, 0), std::invalid_argument);
}

TEST_CASE("multiplicative lattice examples") {
    std::vector<GaussRat> ones{1, 1};
    CHECK(multiplicative_lattice(ones, 1e-10, 50).rank() == 2);

    std::vector<GaussRat> halves{2, GaussRat(rational(1, 2))};
    CHECK(multiplicative_lattice(halves, 1e-10, 50).basis == std::vector<IntVec>{iv({1, 1})});

    std::vector<GaussRat> primes{2, 3};
    CHECK(multiplicative_lattice(primes, 1e-10, 50).rank() == 0);

    // Sign parity: (-1)^k = 1 iff k even; (-2)^a 4^b = 1 iff a = -2b.
    std::vector<GaussRat> neg{-1};
    CHECK(multiplicative_lattice(neg, 1e-10, 50).basis == std::vector<IntVec>{iv({2})});
    std::vector<GaussRat> mixed{-2, 4};
    CHECK(multiplicative_lattice(mixed, 1e-10, 50).basis == std::vector<IntVec>{iv({2, -1})});
    // 6 = 2 * 3 over a coprime base.
    std::vector<GaussRat> six{6, 2, 3};
    CHECK(multiplicative_lattice(six, 1e-10, 50).basis == std::vector<IntVec>{iv({1, -1, -1})});

    std::vector<GaussRat> zero{0, 2};
    CHECK_THROWS_AS(multiplicative_lattice(zero, 1e-10, 50), std::invalid_argument);
}

TEST_CASE("numeric multiplicative lattice") {
    std::vector<std::complex<double>> mu{2.0, 0.5};
    CHECK(multiplicative_lattice(mu, 1e-10, 50).basis == std::vector<IntVec>{iv({1, 1})});

    // Roots of unity: i^4 = 1, and i * (-i) = 1.
    std::vector<std::complex<double>> rot{{0, 1}, {0, -1}};
    auto L = multiplicative_lattice(rot, 1e-10, 50);
    CHECK(L.basis == std::vector<IntVec>{iv({1, 1}), iv({0, 4})});

    std::vector<GaussRat> rot_exact{GaussRat(0, 1), GaussRat(0, -1)};
    CHECK(multiplicative_lattice(rot_exact, 1e-10, 50).basis == L.basis);

    std::vector<std::complex<double>> e{std::exp(1.0), 2.0};
    CHECK(multiplicative_lattice(e, 1e-10, 50).rank() == 0);
}

TEST_CASE("exact lattice invariants on random rational spectra") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4), dim(1, 4);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(dim(rng));
        std::vector<GaussRat> lam;
        for (std::size_t i = 0; i < n; ++i) lam.emplace_back(rational(num(rng), den(rng)), rational(num(rng) / 4, den(rng)));
        auto L = additive_lattice_exact(lam);
        CHECK(is_hnf(L.basis));
        for (const auto &k : L.basis) CHECK(dot(k, lam).is_zero());
        RatVec re, im;
        for (const auto &l : lam) {
            re.push_back(l.re());
            im.push_back(l.im());
        }
        CHECK(L.rank() + rational_rank({re, im}) == n);

        // Scale invariance.
        GaussRat c(rational(num(rng) == 0 ? 3 : num(rng), den(rng)));
        if (c.is_zero()) c = 5;
        std::vector<GaussRat> scaled;
        for (const auto &l : lam) scaled.push_back(l * c);
        CHECK(additive_lattice_exact(scaled).basis == L.basis);

        // Exact and numeric modes agree.
        long kmax = 1;
        for (const auto &k : L.basis)
            for (const auto &x : k) kmax = std::max(kmax, mpz_class(abs(x)).get_si());
        std::vector<std::complex<double>> approx;
        for (const auto &l : lam) approx.push_back(l.to_complex());
        CHECK(additive_lattice_numeric(approx, 1e-8, kmax).basis == L.basis);
    }
}

TEST_CASE("theorem1_bound examples") {
    auto saddle = parse_vector_field("vars x,y; dx = x; dy = -y");
    auto r = theorem1_bound(saddle, origin(2));
    CHECK(r.bound == 1);
    CHECK(r.lattice.mode == Mode::exact);
    CHECK(r.spectrum.mode == Mode::exact);

    auto shi = parse_vector_field("vars x,y; dx = 2*x; dy = 3*y");
    auto s = theorem1_bound(shi, origin(2));
    CHECK(s.bound == 1);
    CHECK(s.lattice.basis == std::vector<IntVec>{iv({3, -2})});

    auto node = parse_vector_field("vars x,y; dx = x; dy = y");
    CHECK(theorem1_bound(node, origin(2)).bound == 1);

    // Irrational spectrum +-sqrt 2 goes numeric and finds k = (1, 1).
    auto irr = parse_vector_field("vars x,y; dx = y; dy = 2*x");
    auto t = theorem1_bound(irr, origin(2));
    CHECK(t.spectrum.mode == Mode::numeric);
    CHECK(t.lattice.mode == Mode::numeric);
    CHECK(t.bound == 1);

    // Forcing numeric mode on an exact spectrum.
    auto u = theorem1_bound(shi, origin(2), {.mode = Mode::numeric, .tol = 1e-10, .kmax = 50});
    CHECK(u.lattice.mode == Mode::numeric);
    CHECK(u.lattice.basis == s.lattice.basis);
}

TEST_CASE("theorem1_bound needs a singular point") {
    auto f = parse_vector_field("vars x,y; dx = x - 1; dy = y");
    try {
        theorem1_bound(f, origin(2));
        FAIL("expected NotSingular");
    } catch (const NotSingular &e) {
        CHECK(e.component() == 0);
    }
    std::vector<GaussRat> one{1, 0};
    CHECK(theorem1_bound(f, one).bound == 1);
}
