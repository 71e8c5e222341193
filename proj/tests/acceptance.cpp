// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "resbound/floquet.hpp"
#include "resbound/oracle.hpp"
#include "resbound/parser.hpp"
#include "resbound/quasihomog.hpp"
#include "resbound/resonance.hpp"
#include "resbound/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

using namespace resbound;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

const std::vector<std::string> XY{"x", "y"};

Poly P(const std::string &text, const std::vector<std::string> &names = XY) { return parse_polynomial(text, names); }

RationalFn R(const std::string &num, const std::string &den = "1") { return RationalFn(P(num), P(den)); }

bool same_up_to_inverse(const RationalFn &a, const RationalFn &b) {
    return a == b || a == RationalFn(b.den(), b.num());
}

bool proportional(const Poly &a, const Poly &b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a * b.leading_coeff() == b * a.leading_coeff();
}

std::string sys_text(const std::vector<std::string> &comps) {
    static const char *names[] = {"x", "y", "z"};
    std::string t = "vars ";
    for (std::size_t i = 0; i < comps.size(); ++i) t += std::string(i ? "," : "") + names[i];
    t += ";";
    for (std::size_t i = 0; i < comps.size(); ++i) t += std::string(" d") + names[i] + " = " + comps[i] + ";";
    t.pop_back();
    return t;
}

std::vector<GaussRat> origin(std::size_t n) { return std::vector<GaussRat>(n); }

// 1 --------------------------------------------------------------------------
Outcome saddle() {
    Outcome o;
    auto f = parse_vector_field("vars x,y; dx = x; dy = -y");
    auto b = theorem1_bound(f, origin(2));
    o.require(b.bound == 1, "theorem1_bound != 1");
    auto found = rational_first_integrals(f, 2);
    bool has_xy = std::any_of(found.begin(), found.end(), [](const RationalFn &F) { return F == R("x*y"); });
    o.require(has_xy, "xy not found");
    auto cert = independence_rank(found);
    o.require(cert.rank == 1, "independence rank != 1");
    o.require(cert.rank == b.bound, "rank != bound");
    return o;
}

// 2 --------------------------------------------------------------------------
Outcome z_resonance() {
    Outcome o;
    auto f = parse_vector_field("vars x,y; dx = 2*x; dy = 3*y");
    auto b = theorem1_bound(f, origin(2));
    o.require(b.bound == 1, "bound != 1");
    o.require(b.lattice.basis == std::vector<IntVec>{IntVec{3, -2}}, "basis != {(3,-2)}");

    auto pairs = darboux_polynomials(f, 3);
    std::optional<GaussRat> kx3, ky2;
    for (const auto &p : pairs) {
        if (!p.K.is_constant()) continue;
        if (p.G == P("x^3")) kx3 = p.K.constant_term();
        if (p.G == P("y^2")) ky2 = p.K.constant_term();
    }
    o.require(kx3 && ky2 && *kx3 == *ky2, "x^3 and y^2 are not Darboux with equal cofactors");

    auto found = rational_first_integrals(f, 3);
    bool ok = false;
    for (const auto &F : found)
        if (same_up_to_inverse(F, R("x^3", "y^2"))) ok = lie_derivative(F, f).is_zero();
    o.require(ok, "x^3/y^2 not found with zero Lie derivative");
    return o;
}

// 3 --------------------------------------------------------------------------
Outcome non_resonant_numeric() {
    Outcome o;
    const double r2 = 1.41421356237310; // 15 significant digits
    std::vector<std::complex<double>> lambda{1.0, r2};
    auto L = additive_lattice_numeric(lambda, 1e-10, 50);
    std::size_t brute = 0;
    for (long k1 = -50; k1 <= 50; ++k1)
        for (long k2 = -50; k2 <= 50; ++k2)
            if ((k1 || k2) && std::abs(static_cast<long double>(k1) + k2 * static_cast<long double>(r2)) <= 1e-10L)
                ++brute;
    o.require(brute == 0, "brute force found a relation");
    o.require(L.rank() == 0, "numeric lattice rank != 0");
    o.require(L.mode == Mode::numeric, "lattice not tagged numeric");

    auto f = parse_vector_field("vars x,y; dx = x; dy = 2*y");
    o.require(polynomial_first_integrals(f, 6).empty(), "(x,2y) has polynomial first integrals up to degree 6");
    return o;
}

// 4 --------------------------------------------------------------------------
Outcome kowalevskaya_pipeline() {
    Outcome o;
    auto f = parse_vector_field("vars x,y; dx = y; dy = x^2");
    auto q = theorem4_bound(f, {2, 3});
    o.require(q.balances.size() == 1, "expected one balance");
    if (q.balances.empty()) return o;
    const auto &b = q.balances[0];
    o.require(b.exact && *b.exact == std::vector<GaussRat>{6, -12}, "balance != (6,-12)");
    o.require(b.residual == 0, "residual != 0");
    o.require(b.K == ExactMatrix{{2, 1}, {12, 3}}, "K != [[2,1],[12,3]]");
    o.require(b.exponents.mode == Mode::exact, "exponents not exact");
    auto ex = b.exponents.exact_tuple();
    std::sort(ex.begin(), ex.end(), [](const GaussRat &a, const GaussRat &c) { return a.re() < c.re(); });
    o.require(ex == std::vector<GaussRat>{-1, 6}, "exponents != {-1, 6}");
    o.require(b.d_c == 1, "d_c != 1");
    o.require(q.d && *q.d == 1, "theorem4_bound != 1");

    const Poly H = P("1/2*y^2 - 1/3*x^3");
    auto found = rational_first_integrals(f, 4);
    bool has_h = std::any_of(found.begin(), found.end(),
                             [&](const RationalFn &F) { return F.den().is_constant() && proportional(F.num(), H); });
    o.require(has_h, "Hamiltonian not found");
    auto cert = independence_rank(found);
    o.require(q.d && cert.rank == *q.d, "rank != d");

    auto dec = decompose(f, {2, 3});
    auto ks = kowalevskaya_system(dec, b);
    auto lifted = lift_to_kowalevskaya(H, dec, b);
    o.require(lifted.degree_in(0) == 6, "lift is not u0^6 * F(c+u)");
    o.require(lie_derivative(lifted, ks).is_zero(), "lifted integral is not a first integral");
    return o;
}

// 5 --------------------------------------------------------------------------
std::vector<Exponent> exponents_of_degree(std::size_t n, unsigned m) {
    std::vector<Exponent> out;
    Exponent e(n, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == n) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (unsigned a = 0; a <= left; ++a) {
            e[i] = a;
            rec(i + 1, left - a);
        }
    };
    rec(0, m);
    return out;
}

std::map<std::string, unsigned> multiset(const std::vector<GaussRat> &xs) {
    std::map<std::string, unsigned> m;
    for (const auto &x : xs) ++m[x.str()];
    return m;
}

Outcome operator_spectra() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 5), dim(1, 3), deg(1, 4), pick(0, 2);
    const GaussRat cs[] = {0, 1, GaussRat(mpq_class(3, 2))};
    const SpectralOptions no_shortcut{1e-10, false};
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = dim(rng);
        const unsigned m = deg(rng);
        const GaussRat c = cs[pick(rng)];
        ExactMatrix A(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                mpq_class v(num(rng), den(rng));
                v.canonicalize();
                A(i, j) = GaussRat(v);
            }
        std::vector<GaussRat> lie_expected, comp_expected;
        for (const auto &k : exponents_of_degree(n, m)) {
            GaussRat s(0), p(1);
            for (std::size_t i = 0; i < n; ++i) {
                s += GaussRat(static_cast<long>(k[i])) * A(i, i);
                for (unsigned r = 0; r < k[i]; ++r) p *= A(i, i);
            }
            lie_expected.push_back(s - c);
            comp_expected.push_back(p - c);
        }
        auto lie = eigenvalues(lie_operator_matrix(A, m, c), no_shortcut);
        auto comp = eigenvalues(composition_operator_matrix(A, m, c), no_shortcut);
        std::ostringstream tag;
        tag << "trial " << trial << " (n=" << n << ", m=" << m << ", c=" << c.str() << ")";
        o.require(lie.mode == Mode::exact && multiset(lie.exact_tuple()) == multiset(lie_expected),
                  tag.str() + ": Lie operator spectrum");
        o.require(comp.mode == Mode::exact && multiset(comp.exact_tuple()) == multiset(comp_expected),
                  tag.str() + ": composition operator spectrum");
    }
    return o;
}

// 6 --------------------------------------------------------------------------
double max_rel_diag_error(const NumMatrix &M, const std::vector<double> &exact) {
    double e = 0;
    for (std::size_t i = 0; i < exact.size(); ++i)
        for (std::size_t j = 0; j < exact.size(); ++j) {
            double target = i == j ? exact[i] : 0.0;
            e = std::max(e, std::abs(M(i, j) - target) / exact[i]);
        }
    return e;
}

Outcome floquet() {
    Outcome o;
    const double T = 2 * std::numbers::pi;
    auto diag = PeriodicLinearSystem::constant(ExactMatrix{{1, 0}, {0, 2}}, T);
    auto chk = floquet_check(diag, 10000);
    o.require(chk.max_relative_deviation <= 1e-6, "multipliers deviate from exp(2 pi lambda)");
    for (std::size_t i = 0; i < 2; ++i) {
        double want = std::exp(T * (i + 1.0));
        bool hit = std::any_of(chk.computed.begin(), chk.computed.end(),
                               [&](std::complex<double> z) { return std::abs(z - want) <= 1e-6 * want; });
        o.require(hit, "multiplier exp(2 pi * " + std::to_string(i + 1) + ") missing");
    }

    // Step doubling at a resolution where truncation error dominates rounding.
    const std::vector<double> exact{std::exp(T), std::exp(2 * T)};
    double e1 = max_rel_diag_error(integrate_monodromy(diag, 200), exact);
    double e2 = max_rel_diag_error(integrate_monodromy(diag, 400), exact);
    double ratio = e1 / e2;
    o.require(ratio >= 12 && ratio <= 20, "step-doubling ratio " + std::to_string(ratio) + " outside [12, 20]");

    auto rot = parse_periodic_system("period 2*pi; n = 2\nA[1][2] = 1\nA[2][1] = -1");
    auto m = monodromy(rot, 10000);
    double dev = 0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) dev += std::norm(m.M(i, j) - (i == j ? 1.0 : 0.0));
    o.require(std::sqrt(dev) <= 1e-8, "||M - I|| > 1e-8");
    o.require(m.bound == 2, "rotation bound != 2");
    std::ostringstream os;
    os << "ratio " << ratio;
    if (o.pass) o.detail = os.str();
    return o;
}

// 7 --------------------------------------------------------------------------
Outcome theorem1_corpus(std::string &summary) {
    Outcome o;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 5), dim(1, 3);
    std::size_t with_integrals = 0, equalities = 0;
    for (int s = 0; s < 50; ++s) {
        const std::size_t n = dim(rng);
        static const char *names[] = {"x", "y", "z"};
        std::vector<std::string> comps;
        for (std::size_t i = 0; i < n; ++i) {
            int p = num(rng), q = den(rng);
            comps.push_back("(" + std::to_string(p) + "/" + std::to_string(q) + ")*" + names[i]);
        }
        auto f = parse_vector_field(sys_text(comps));
        auto found = rational_first_integrals(f, 4);
        auto cert = independence_rank(found);
        auto b = theorem1_bound(f, origin(n));
        bool all_zero = std::all_of(found.begin(), found.end(), [&](const RationalFn &F) { return lie_derivative(F, f).is_zero(); });
        o.require(all_zero, "system " + std::to_string(s) + ": reported integral is not a first integral");
        o.require(cert.rank <= b.bound, "system " + std::to_string(s) + ": rank " + std::to_string(cert.rank) +
                                            " > bound " + std::to_string(b.bound));
        with_integrals += !found.empty();
        equalities += cert.rank == b.bound;
    }
    summary = std::to_string(with_integrals) + "/50 with integrals, " + std::to_string(equalities) + " at equality";
    return o;
}

// 8 --------------------------------------------------------------------------
Outcome minus_one(const std::filesystem::path &dir, std::string &summary) {
    Outcome o;
    std::vector<std::filesystem::path> files;
    for (const auto &e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".vf" && std::filesystem::exists(std::filesystem::path(e.path()).replace_extension(".w")))
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    o.require(!files.empty(), "no fixtures in " + dir.string());
    std::size_t checked = 0;
    for (const auto &vf : files) {
        std::ifstream fin(vf), win(std::filesystem::path(vf).replace_extension(".w"));
        std::stringstream ft, wt;
        ft << fin.rdbuf();
        wt << win.rdbuf();
        Weights s;
        for (std::string tok; std::getline(wt, tok, ',');) s.push_back(std::stol(tok));
        const std::string name = vf.stem().string();
        try {
            auto q = theorem4_bound(parse_vector_field(ft.str()), s);
            for (const auto &b : q.balances) {
                bool nonzero = std::any_of(b.c.begin(), b.c.end(), [](auto z) { return std::abs(z) > 0; });
                if (!nonzero) continue;
                bool has = false;
                for (const auto &e : b.exponents.values) {
                    if (e.exact) has = has || *e.exact == GaussRat(-1);
                    else has = has || std::abs(e.approx + 1.0) <= 1e-8;
                }
                o.require(has, name + ": balance without -1");
                ++checked;
            }
        } catch (const std::exception &e) {
            o.require(false, name + ": " + e.what());
        }
    }
    summary = std::to_string(checked) + " balances over " + std::to_string(files.size()) + " fixtures";
    return o;
}

// 9 --------------------------------------------------------------------------
Outcome ziglin() {
    Outcome o;
    std::vector<RationalFn> Fs{R("x + y"), R("x + y + x^2")};
    auto before = independence_rank(Fs).rank;
    auto z = ziglin_reduce(Fs);
    o.require(z.status == ZiglinStatus::complete, "status " + std::string(to_string(z.status)));
    o.require(z.rounds == 1, "rounds = " + std::to_string(z.rounds));
    std::vector<RationalFn> lows;
    for (const auto &F : z.functions) lows.push_back(lowest_order_part(F).F0);
    bool expected = lows.size() == 2 && lows[0] == R("x + y") && lows[1].den().is_constant() &&
                    proportional(lows[1].num(), P("x^2"));
    o.require(expected, "lowest parts are not {x+y, x^2}");
    o.require(independence_rank(lows).rank == 2, "lowest parts not of full rank");
    for (auto [a, b] : z.defects) o.require(b < a, "defect did not decrease");
    o.require(!z.defects.empty(), "no defect recorded");
    o.require(independence_rank(z.functions).rank == before, "independence rank changed");
    return o;
}

// 10 -------------------------------------------------------------------------
Outcome lowest_parts(std::string &summary) {
    Outcome o;
    const std::vector<GaussRat> lambda{1, -1};
    auto linear = parse_vector_field("vars x,y; dx = x; dy = -y");
    std::size_t checked = 0;
    for (const char *text : {"vars x,y; dx = x + x^2*y; dy = -y - x*y^2",
                             "vars x,y; dx = x + x^2 + x*y; dy = -y - x*y - y^2",
                             "vars x,y; dx = x + x^2*y - 3*x*y; dy = -y - x*y^2 + 3*y^2"}) {
        auto f = parse_vector_field(text);
        auto found = rational_first_integrals(f, 4);
        o.require(!found.empty(), std::string("no integral for ") + text);
        for (const auto &F : found) {
            o.require(lie_derivative(F, f).is_zero(), "found function is not a first integral");
            auto F0 = lowest_order_part(F).F0;
            o.require(lie_derivative(F0, linear).is_zero(), "lowest part not a first integral of Ax");
            o.require(check_lowest_part_resonant(F0, lambda).resonant, "lowest part not resonant");
            ++checked;
        }
    }
    summary = std::to_string(checked) + " integrals";
    return o;
}

struct Criterion {
    int id;
    const char *name;
    double budget;
    std::function<Outcome(std::string &)> run;
};

} // namespace

int main(int argc, char **argv) {
    std::filesystem::path fixtures = argc > 1 ? argv[1] : RESBOUND_FIXTURES;
    auto plain = [](Outcome (*fn)()) { return [fn](std::string &) { return fn(); }; };
    std::vector<Criterion> criteria{
        {1, "saddle consistency", 1, plain(saddle)},
        {2, "Z-resonance beyond Z+", 1, plain(z_resonance)},
        {3, "non-resonant numeric lattice", 5, plain(non_resonant_numeric)},
        {4, "Kowalevskaya pipeline", 2, plain(kowalevskaya_pipeline)},
        {5, "operator spectra", 10, plain(operator_spectra)},
        {6, "Floquet multipliers", 5, plain(floquet)},
        {7, "T1 inequality corpus", 30, theorem1_corpus},
        {8, "Kowalevskaya -1 exponent", 5, [&](std::string &s) { return minus_one(fixtures / "qh", s); }},
        {9, "Ziglin reduction", 1, plain(ziglin)},
        {10, "lowest-order parts resonant", 2, lowest_parts},
    };
    int failed = 0;
    double total = 0;
    for (const auto &c : criteria) {
        std::string summary;
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            out = c.run(summary);
        } catch (const std::exception &e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total += secs;
        out.require(secs < c.budget, "over time budget");
        if (out.pass && !summary.empty()) out.detail = out.detail.empty() ? summary : summary + "; " + out.detail;
        std::printf("%s  %2d  %-30s %7.3f s / %4.0f s  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget,
                    out.detail.c_str());
        failed += !out.pass;
    }
    std::printf("%zu criteria, %d failed, %.2f s total\n", criteria.size(), failed, total);
    return failed ? 1 : 0;
}
