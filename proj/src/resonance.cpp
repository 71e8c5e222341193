#include "resbound/resonance.hpp"

#include "resbound/lll.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace resbound {

ToleranceInfeasible::ToleranceInfeasible(double tol, double accuracy)
    : std::invalid_argument([&] {
          std::ostringstream os;
          os << "tolerance " << tol << " is below the certified accuracy " << accuracy << " of the input";
          return os.str();
      }()),
      tol_(tol), accuracy_(accuracy) {}

NotSingular::NotSingular(std::size_t component, const GaussRat &value)
    : std::invalid_argument("point is not a singularity: component " + std::to_string(component + 1) +
                            " evaluates to " + value.str()),
      component_(component) {}

namespace {

using LongVec = std::vector<long double>;

// A linear form on (k, t) with real coefficients; t entries are the
// auxiliary integer unknowns that are projected away at the end.
struct RelationProblem {
    std::size_t n = 0;   // length of k
    std::size_t aux = 0; // number of auxiliary unknowns
    std::vector<LongVec> forms; // each of length n + aux
    double tol = 0;
    long kmax = 0;
    // Residual of a k-vector alone (auxiliary unknowns chosen optimally).
    std::function<double(const IntVec &)> residual;
};

mpz_class to_mpz(long double x) {
    mpz_class z;
    mpz_set_d(z.get_mpz_t(), static_cast<double>(std::nearbyint(x)));
    return z;
}

long double form_value(const LongVec &form, const IntVec &z) {
    long double s = 0;
    for (std::size_t j = 0; j < form.size(); ++j) s += form[j] * static_cast<long double>(z[j].get_d());
    return s;
}

bool within_kmax(const IntVec &z, std::size_t n, long kmax) {
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (abs(z[i]) > kmax) return false;
        nonzero = nonzero || sgn(z[i]) != 0;
    }
    return nonzero;
}

std::vector<IntVec> project(const std::vector<IntVec> &zs, std::size_t n) {
    std::vector<IntVec> out;
    for (const auto &z : zs) out.emplace_back(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

Lattice solve_numeric(const RelationProblem &p) {
    const std::size_t N = p.n + p.aux;
    const long double scale = 1.0L / static_cast<long double>(p.tol);
    std::vector<IntVec> basis(N, IntVec(N + p.forms.size()));
    for (std::size_t j = 0; j < N; ++j) {
        basis[j][j] = 1;
        for (std::size_t r = 0; r < p.forms.size(); ++r) basis[j][N + r] = to_mpz(scale * p.forms[r][j]);
    }
    lll_reduce(basis, mpq_class(99, 100));

    std::vector<IntVec> candidates;
    for (const auto &b : basis) {
        IntVec z(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(N));
        if (!within_kmax(z, p.n, p.kmax)) continue;
        bool ok = true;
        for (const auto &form : p.forms)
            if (std::fabs(form_value(form, z)) > static_cast<long double>(p.tol)) ok = false;
        if (ok) candidates.push_back(std::move(z));
    }

    Lattice L;
    L.nvars = p.n;
    L.mode = Mode::numeric;
    L.tolerance = p.tol;
    L.search_bound = p.kmax;
    if (candidates.empty()) return L;

    auto residuals_ok = [&](const std::vector<IntVec> &ks, std::vector<double> &res) {
        res.clear();
        for (const auto &k : ks) {
            res.push_back(p.residual(k));
            if (res.back() > p.tol) return false;
        }
        return true;
    };

    // The relation set is the kernel of a real linear map, hence saturated
    // in Z^(n+aux); the projection to k is injective on it.
    auto hnf = hermite_normal_form(project(saturate(candidates, N), p.n));
    std::vector<double> res;
    if (residuals_ok(hnf, res)) {
        L.basis = std::move(hnf);
        L.residuals = std::move(res);
        return L;
    }
    // Recombination grew a residual past tol: keep the reduced vectors.
    L.basis = project(candidates, p.n);
    residuals_ok(L.basis, L.residuals);
    return L;
}

void check_tolerance(double tol, long kmax, double accuracy) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    if (kmax < 1) throw std::invalid_argument("kmax must be at least 1");
    if (tol < accuracy) throw ToleranceInfeasible(tol, accuracy);
}

long double wrap_angle(long double a) {
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    a = std::fmod(a, two_pi);
    if (a > std::numbers::pi_v<long double>) a -= two_pi;
    if (a < -std::numbers::pi_v<long double>) a += two_pi;
    return a;
}

// Pairwise coprime base such that every input is a product of powers of
// base elements.
std::vector<mpz_class> coprime_base(std::vector<mpz_class> xs) {
    std::vector<mpz_class> base;
    for (auto &x : xs)
        if (x > 1) base.push_back(x);
    for (bool changed = true; changed;) {
        changed = false;
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());
        for (std::size_t i = 0; i < base.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
                mpz_class g = gcd(base[i], base[j]);
                if (g == 1) continue;
                mpz_class a = base[i] / g, b = base[j] / g;
                base.erase(base.begin() + static_cast<std::ptrdiff_t>(j));
                base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
                for (const auto &v : {a, b, g})
                    if (v > 1) base.push_back(v);
                changed = true;
            }
    }
    return base;
}

long valuation(mpz_class x, const mpz_class &p) {
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

Lattice multiplicative_exact_rational(std::span<const GaussRat> mu) {
    const std::size_t n = mu.size();
    std::vector<mpz_class> parts;
    for (const auto &m : mu) {
        parts.push_back(abs(m.re().get_num()));
        parts.push_back(m.re().get_den());
    }
    auto base = coprime_base(parts);
    // Unknowns (k, t): sum_i v_p(mu_i) k_i = 0 for each base element and
    // sum_{mu_i < 0} k_i - 2 t = 0.
    std::vector<RatVec> rows;
    for (const auto &p : base) {
        RatVec row(n + 1);
        for (std::size_t i = 0; i < n; ++i)
            row[i] = valuation(abs(mu[i].re().get_num()), p) - valuation(mu[i].re().get_den(), p);
        rows.push_back(std::move(row));
    }
    RatVec sign_row(n + 1);
    for (std::size_t i = 0; i < n; ++i) sign_row[i] = sgn(mu[i].re()) < 0 ? 1 : 0;
    sign_row[n] = -2;
    rows.push_back(std::move(sign_row));

    Lattice L;
    L.nvars = n;
    L.mode = Mode::exact;
    L.basis = hermite_normal_form(project(integer_kernel(rows, n + 1), n));
    return L;
}

} // namespace

Lattice additive_lattice_exact(std::span<const GaussRat> lambda) {
    const std::size_t n = lambda.size();
    RatVec re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = lambda[i].re();
        im[i] = lambda[i].im();
    }
    Lattice L;
    L.nvars = n;
    L.mode = Mode::exact;
    L.basis = integer_kernel({re, im}, n);
    return L;
}

Lattice additive_lattice_numeric(std::span<const std::complex<double>> lambda, double tol, long kmax,
                                 std::span<const double> error_radii) {
    double accuracy = 0;
    for (double r : error_radii) accuracy = std::max(accuracy, r);
    check_tolerance(tol, kmax, accuracy);

    RelationProblem p;
    p.n = lambda.size();
    p.tol = tol;
    p.kmax = kmax;
    LongVec re(p.n), im(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        re[i] = lambda[i].real();
        im[i] = lambda[i].imag();
    }
    p.forms = {re, im};
    p.residual = [re, im](const IntVec &k) {
        long double a = form_value(re, k), b = form_value(im, k);
        return static_cast<double>(std::hypot(a, b));
    };
    return solve_numeric(p);
}

Lattice multiplicative_lattice(std::span<const std::complex<double>> mu, double tol, long kmax,
                               std::span<const double> error_radii) {
    double accuracy = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] == std::complex<double>(0, 0)) throw std::invalid_argument("zero multiplier");
        if (i < error_radii.size()) accuracy = std::max(accuracy, error_radii[i] / std::abs(mu[i]));
    }
    check_tolerance(tol, kmax, accuracy);

    RelationProblem p;
    p.n = mu.size();
    p.aux = 1;
    p.tol = tol;
    p.kmax = kmax;
    LongVec logs(p.n + 1), args(p.n + 1);
    for (std::size_t i = 0; i < p.n; ++i) {
        std::complex<long double> m(mu[i].real(), mu[i].imag());
        logs[i] = std::log(std::abs(m));
        args[i] = std::arg(m);
    }
    args[p.n] = -2 * std::numbers::pi_v<long double>;
    p.forms = {logs, args};
    const std::size_t n = p.n;
    p.residual = [logs, args, n](const IntVec &k) {
        long double a = 0, b = 0;
        for (std::size_t i = 0; i < n; ++i) {
            a += logs[i] * static_cast<long double>(k[i].get_d());
            b += args[i] * static_cast<long double>(k[i].get_d());
        }
        return static_cast<double>(std::max(std::fabs(a), std::fabs(wrap_angle(b))));
    };
    return solve_numeric(p);
}

Lattice multiplicative_lattice(std::span<const GaussRat> mu, double tol, long kmax) {
    bool rational = true;
    for (const auto &m : mu) {
        if (m.is_zero()) throw std::invalid_argument("zero multiplier");
        rational = rational && m.is_real();
    }
    if (rational) return multiplicative_exact_rational(mu);
    std::vector<std::complex<double>> approx;
    std::vector<double> radii;
    for (const auto &m : mu) {
        approx.push_back(m.to_complex());
        radii.push_back(2.3e-16 * std::abs(approx.back()));
    }
    return multiplicative_lattice(approx, tol, kmax, radii);
}

Lattice additive_lattice(const SpectrumReport &spectrum, const LatticeOptions &opts) {
    if (spectrum.mode == Mode::exact && opts.mode == Mode::exact) {
        auto lambda = spectrum.exact_tuple();
        return additive_lattice_exact(lambda);
    }
    auto lambda = spectrum.numeric_tuple();
    auto radii = spectrum.radius_tuple();
    return additive_lattice_numeric(lambda, opts.tol, opts.kmax, radii);
}

Lattice multiplicative_lattice(const SpectrumReport &spectrum, const LatticeOptions &opts) {
    if (spectrum.mode == Mode::exact && opts.mode == Mode::exact) {
        auto mu = spectrum.exact_tuple();
        return multiplicative_lattice(std::span<const GaussRat>(mu), opts.tol, opts.kmax);
    }
    auto mu = spectrum.numeric_tuple();
    auto radii = spectrum.radius_tuple();
    return multiplicative_lattice(std::span<const std::complex<double>>(mu), opts.tol, opts.kmax, radii);
}

BoundReport theorem1_bound(const VectorField &f, std::span<const GaussRat> x0, const LatticeOptions &opts) {
    if (x0.size() != f.nvars()) throw std::invalid_argument("point dimension does not match the field");
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        GaussRat v = f[i].evaluate(x0);
        if (!v.is_zero()) throw NotSingular(i, v);
    }
    BoundReport r;
    r.spectrum = eigenvalues(jacobian_at(f, x0));
    r.lattice = additive_lattice(r.spectrum, opts);
    r.bound = r.lattice.rank();
    return r;
}

} // namespace resbound
