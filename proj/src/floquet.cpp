#include "resbound/floquet.hpp"

#include "lexer.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace resbound {

bool TrigPoly::is_constant() const {
    for (const auto &t : terms)
        if (sgn(t.cos_coeff) != 0 || sgn(t.sin_coeff) != 0) return false;
    return true;
}

double TrigPoly::evaluate(double t, double w) const {
    double v = c0.get_d();
    for (const auto &term : terms) {
        const double a = static_cast<double>(term.k) * w * t;
        v += term.cos_coeff.get_d() * std::cos(a) + term.sin_coeff.get_d() * std::sin(a);
    }
    return v;
}

PeriodicLinearSystem PeriodicLinearSystem::constant(const ExactMatrix &A, double period) {
    if (!A.is_square()) throw std::invalid_argument("coefficient matrix must be square");
    PeriodicLinearSystem s;
    s.n = A.rows();
    s.period = period;
    s.entries.resize(s.n * s.n);
    for (std::size_t i = 0; i < s.n; ++i)
        for (std::size_t j = 0; j < s.n; ++j) {
            if (!A(i, j).is_real()) throw std::invalid_argument("periodic systems take real coefficients");
            s.entry(i, j).c0 = A(i, j).re();
        }
    return s;
}

bool PeriodicLinearSystem::is_constant() const {
    for (const auto &e : entries)
        if (!e.is_constant()) return false;
    return true;
}

ExactMatrix PeriodicLinearSystem::mean_matrix() const {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = GaussRat(entry(i, j).c0);
    return m;
}

double PeriodicLinearSystem::trace_integral() const {
    double tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += entry(i, i).c0.get_d();
    return tr * period;
}

namespace {

using detail::Lexer;
using detail::Tok;
using detail::Token;

class PeriodicParser {
public:
    explicit PeriodicParser(std::string_view text) : toks_(Lexer(text).run()) {}

    PeriodicLinearSystem parse() {
        PeriodicLinearSystem sys;
        bool have_period = false, have_n = false;
        std::vector<bool> seen;
        skip_separators();
        while (peek().kind != Tok::end) {
            const Token &head = next();
            if (head.kind != Tok::ident) fail(head, "expected 'period', 'n' or 'A'");
            if (head.text == "period") {
                if (have_period) fail(head, "duplicate period");
                parse_period(sys);
                have_period = true;
            } else if (head.text == "n") {
                if (have_n) fail(head, "duplicate dimension");
                expect_op('=');
                const Token &t = peek();
                long v = integer();
                if (v < 1) fail(t, "dimension must be positive");
                sys.n = static_cast<std::size_t>(v);
                sys.entries.assign(sys.n * sys.n, TrigPoly{});
                seen.assign(sys.n * sys.n, false);
                have_n = true;
            } else if (head.text == "A") {
                if (!have_n) fail(head, "dimension 'n = ...' must precede the entries");
                std::size_t i = index(sys.n), j = index(sys.n);
                expect_op('=');
                if (seen[i * sys.n + j]) fail(head, "duplicate entry");
                seen[i * sys.n + j] = true;
                sys.entry(i, j) = trig_expr();
            } else {
                fail(head, "unknown statement '" + head.text + "'");
            }
            if (peek().kind == Tok::separator)
                skip_separators();
            else if (peek().kind != Tok::end)
                fail(peek(), "expected end of statement");
        }
        if (!have_period) fail(peek(), "missing period");
        if (!have_n) fail(peek(), "missing dimension");
        return sys;
    }

private:
    const Token &peek() const { return toks_[pos_]; }
    const Token &next() { return toks_[pos_++]; }
    bool at_op(char c) const { return peek().kind == Tok::op && peek().text[0] == c; }
    bool at_ident(const char *s) const { return peek().kind == Tok::ident && peek().text == s; }
    [[noreturn]] void fail(const Token &t, const std::string &msg) const { throw ParseError(t.line, t.column, msg); }

    void expect_op(char c) {
        if (!at_op(c)) fail(peek(), std::string("expected '") + c + "'");
        ++pos_;
    }
    void expect_ident(const char *s) {
        if (!at_ident(s)) fail(peek(), std::string("expected '") + s + "'");
        ++pos_;
    }
    void skip_separators() {
        while (peek().kind == Tok::separator) ++pos_;
    }

    long integer() {
        const Token &t = next();
        if (t.kind != Tok::number || t.text.find_first_not_of("0123456789") != std::string::npos)
            fail(t, "expected an integer");
        return std::stol(t.text);
    }

    std::size_t index(std::size_t n) {
        expect_op('[');
        const Token &t = peek();
        long v = integer();
        if (v < 1 || static_cast<std::size_t>(v) > n) fail(t, "index out of range 1.." + std::to_string(n));
        expect_op(']');
        return static_cast<std::size_t>(v - 1);
    }

    mpq_class rational() {
        const Token &t = peek();
        if (t.kind == Tok::number && t.text.find_first_not_of("0123456789") != std::string::npos)
            fail(t, "non-rational literal");
        mpq_class q(integer());
        if (at_op('/')) {
            ++pos_;
            const Token &d = peek();
            long den = integer();
            if (den == 0) fail(d, "division by zero");
            q /= den;
        }
        return q;
    }

    void parse_period(PeriodicLinearSystem &sys) {
        const Token &t = peek();
        if (at_ident("pi")) {
            ++pos_;
            sys.period_over_pi = mpq_class(1);
            sys.period = std::numbers::pi;
        } else if (t.kind == Tok::number && t.text.find_first_not_of("0123456789") != std::string::npos) {
            ++pos_;
            try {
                sys.period = std::stod(t.text);
            } catch (const std::exception &) {
                fail(t, "malformed number");
            }
        } else {
            mpq_class q = rational();
            if (at_op('*')) {
                ++pos_;
                expect_ident("pi");
                sys.period_over_pi = q;
                sys.period = q.get_d() * std::numbers::pi;
            } else {
                sys.period = q.get_d();
            }
        }
        if (!(sys.period > 0) || !std::isfinite(sys.period)) fail(t, "period must be positive");
    }

    // (cos|sin)( [k*] w*t )
    void function(TrigPoly &p, const mpq_class &coeff) {
        const Token &f = next();
        if (f.kind != Tok::ident || (f.text != "cos" && f.text != "sin")) fail(f, "expected cos or sin");
        expect_op('(');
        long k = 1;
        if (peek().kind == Tok::number) {
            k = integer();
            expect_op('*');
        }
        expect_ident("w");
        expect_op('*');
        expect_ident("t");
        expect_op(')');
        if (k == 0) {
            if (f.text == "cos") p.c0 += coeff;
            return;
        }
        TrigTerm *slot = nullptr;
        for (auto &term : p.terms)
            if (term.k == static_cast<unsigned>(k)) slot = &term;
        if (!slot) {
            p.terms.push_back(TrigTerm{static_cast<unsigned>(k), 0, 0});
            slot = &p.terms.back();
        }
        (f.text == "cos" ? slot->cos_coeff : slot->sin_coeff) += coeff;
    }

    TrigPoly trig_expr() {
        TrigPoly p;
        bool first = true;
        for (;;) {
            int sign = 1;
            if (at_op('+') || at_op('-')) {
                sign = at_op('-') ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            first = false;
            if (peek().kind == Tok::number) {
                mpq_class c = rational() * sign;
                if (at_op('*')) {
                    ++pos_;
                    function(p, c);
                } else {
                    p.c0 += c;
                }
            } else {
                function(p, mpq_class(sign));
            }
        }
        return p;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

Eigen::MatrixXd coefficient_at(const PeriodicLinearSystem &sys, double t, double w) {
    Eigen::MatrixXd A(sys.n, sys.n);
    for (std::size_t i = 0; i < sys.n; ++i)
        for (std::size_t j = 0; j < sys.n; ++j)
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sys.entry(i, j).evaluate(t, w);
    return A;
}

Eigen::MatrixXd rk4(const PeriodicLinearSystem &sys, int steps) {
    const auto n = static_cast<Eigen::Index>(sys.n);
    const double T = sys.period, w = 2 * std::numbers::pi / T, h = T / steps;
    const bool constant = sys.is_constant();
    const Eigen::MatrixXd A0 = coefficient_at(sys, 0, w);
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(n, n);
    for (int s = 0; s < steps; ++s) {
        const double t = s * h;
        const Eigen::MatrixXd A1 = constant ? A0 : coefficient_at(sys, t, w);
        const Eigen::MatrixXd Ah = constant ? A0 : coefficient_at(sys, t + h / 2, w);
        const Eigen::MatrixXd A2 = constant ? A0 : coefficient_at(sys, t + h, w);
        Eigen::MatrixXd k1 = A1 * X;
        Eigen::MatrixXd k2 = Ah * (X + (h / 2) * k1);
        Eigen::MatrixXd k3 = Ah * (X + (h / 2) * k2);
        Eigen::MatrixXd k4 = A2 * (X + h * k3);
        X += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return X;
}

NumMatrix to_num(const Eigen::MatrixXd &X) {
    NumMatrix M(static_cast<std::size_t>(X.rows()), static_cast<std::size_t>(X.cols()));
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        for (Eigen::Index j = 0; j < X.cols(); ++j)
            M(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = X(i, j);
    return M;
}

} // namespace

PeriodicLinearSystem parse_periodic_system(std::string_view text) { return PeriodicParser(text).parse(); }

NumMatrix integrate_monodromy(const PeriodicLinearSystem &sys, int steps) {
    if (steps < 1) throw std::invalid_argument("step count must be positive");
    return to_num(rk4(sys, steps));
}

MonodromyReport monodromy(const PeriodicLinearSystem &sys, int steps, const LatticeOptions &opts) {
    if (steps < 100) throw std::invalid_argument("monodromy needs at least 100 steps");
    const Eigen::MatrixXd X = rk4(sys, steps);
    const Eigen::MatrixXd X2 = rk4(sys, 2 * steps);

    MonodromyReport r;
    r.M = to_num(X);
    r.stats.steps = steps;
    r.stats.est_error = (X - X2).norm() * 16.0 / 15.0;

    const double expected_det = std::exp(sys.trace_integral());
    r.liouville_deviation = std::abs(X.determinant() - expected_det) / expected_det;

    r.multipliers = r.stats.est_error == 0 ? eigenvalues(to_exact(r.M)) : eigenvalues(r.M);
    auto mu = r.multipliers.numeric_tuple();
    auto radii = r.multipliers.radius_tuple();
    double tol = opts.tol;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        radii[i] += r.stats.est_error;
        if (std::abs(mu[i]) > 0) tol = std::max(tol, 10 * radii[i] / std::abs(mu[i]));
    }
    r.lattice_tolerance = tol;
    if (r.multipliers.mode == Mode::exact && opts.mode == Mode::exact && r.stats.est_error == 0) {
        auto exact = r.multipliers.exact_tuple();
        r.lattice = multiplicative_lattice(std::span<const GaussRat>(exact), tol, opts.kmax);
    } else {
        r.lattice = multiplicative_lattice(std::span<const std::complex<double>>(mu), tol, opts.kmax, radii);
    }
    r.bound = r.lattice.rank();
    return r;
}

FloquetCheck floquet_check(const PeriodicLinearSystem &sys, int steps) {
    if (!sys.is_constant()) throw std::invalid_argument("floquet_check needs a constant coefficient matrix");
    FloquetCheck c;
    for (auto l : eigenvalues(sys.mean_matrix()).numeric_tuple()) c.expected.push_back(std::exp(sys.period * l));
    c.computed = eigenvalues(integrate_monodromy(sys, steps)).numeric_tuple();
    std::vector<bool> used(c.computed.size(), false);
    for (auto e : c.expected) {
        std::size_t best = c.computed.size();
        for (std::size_t j = 0; j < c.computed.size(); ++j)
            if (!used[j] && (best == c.computed.size() || std::abs(c.computed[j] - e) < std::abs(c.computed[best] - e)))
                best = j;
        used[best] = true;
        c.max_relative_deviation = std::max(c.max_relative_deviation, std::abs(c.computed[best] - e) / std::abs(e));
    }
    return c;
}

} // namespace resbound
