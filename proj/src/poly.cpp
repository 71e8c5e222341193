#include "resbound/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace resbound {

unsigned total_degree(const Exponent &e) {
    return std::accumulate(e.begin(), e.end(), 0U);
}

bool GrlexLess::operator()(const Exponent &a, const Exponent &b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    // Lex with x1 most significant: a < b when a is smaller at the first
    // differing position.
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

void compositions(std::size_t n, unsigned m, std::size_t pos, Exponent &cur,
                  std::vector<Exponent> &out) {
    if (pos + 1 == n) {
        cur[pos] = m;
        out.push_back(cur);
        return;
    }
    for (unsigned k = m + 1; k-- > 0;) {
        cur[pos] = k;
        compositions(n, m - k, pos + 1, cur, out);
    }
}

} // namespace

std::vector<Exponent> homogeneous_basis(std::size_t n, unsigned m) {
    std::vector<Exponent> out;
    if (n == 0) {
        if (m == 0) out.emplace_back();
        return out;
    }
    Exponent cur(n, 0);
    compositions(n, m, 0, cur, out);
    return out;
}

std::vector<Exponent> monomials_up_to(std::size_t n, unsigned lo, unsigned hi) {
    std::vector<Exponent> out;
    for (unsigned d = lo; d <= hi; ++d) {
        auto block = homogeneous_basis(n, d);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

Poly Poly::constant(std::size_t nvars, const GaussRat &c) {
    Poly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("Poly::variable: index out of range");
    Exponent e(nvars, 0);
    e[index] = 1;
    return monomial(std::move(e));
}

Poly Poly::monomial(Exponent e, const GaussRat &c) {
    Poly p(e.size());
    p.add_term(e, c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

GaussRat Poly::coeff(const Exponent &e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussRat() : it->second;
}

GaussRat Poly::constant_term() const { return coeff(Exponent(nvars_, 0)); }

int Poly::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.rbegin()->first));
}

int Poly::order() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.begin()->first));
}

unsigned Poly::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto &[e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

bool Poly::is_homogeneous() const { return terms_.empty() || degree() == order(); }

Poly Poly::homogeneous_part(unsigned d) const {
    Poly out(nvars_);
    for (const auto &[e, c] : terms_)
        if (total_degree(e) == d) out.terms_.emplace_hint(out.terms_.end(), e, c);
    return out;
}

Poly Poly::truncate(unsigned d) const {
    Poly out(nvars_);
    for (const auto &[e, c] : terms_)
        if (total_degree(e) <= d) out.terms_.emplace_hint(out.terms_.end(), e, c);
    return out;
}

const Exponent &Poly::leading_exponent() const {
    if (terms_.empty()) throw std::domain_error("leading_exponent of zero polynomial");
    return terms_.rbegin()->first;
}

const GaussRat &Poly::leading_coeff() const {
    if (terms_.empty()) throw std::domain_error("leading_coeff of zero polynomial");
    return terms_.rbegin()->second;
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    GaussRat lc = leading_coeff();
    if (lc.is_one()) return *this;
    Poly out(*this);
    GaussRat inv = GaussRat(1) / lc;
    for (auto &[e, c] : out.terms_) c *= inv;
    return out;
}

void Poly::add_term(const Exponent &e, const GaussRat &c) {
    if (e.size() != nvars_) throw std::invalid_argument("Poly::add_term: exponent length mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly &Poly::operator+=(const Poly &o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Poly: variable count mismatch");
    for (const auto &[e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly &Poly::operator-=(const Poly &o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Poly: variable count mismatch");
    for (const auto &[e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("Poly: variable count mismatch");
    Poly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Poly &Poly::operator*=(const Poly &o) { return *this = *this * o; }

Poly &Poly::operator*=(const GaussRat &c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[e, v] : terms_) v *= c;
    return *this;
}

Poly Poly::operator-() const {
    Poly out(*this);
    for (auto &[e, c] : out.terms_) c = -c;
    return out;
}

Poly Poly::pow(unsigned e) const {
    Poly result = constant(nvars_, GaussRat(1));
    Poly base = *this;
    while (e) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e) base = base * base;
    }
    return result;
}

Poly Poly::derivative(std::size_t var) const {
    if (var >= nvars_) throw std::out_of_range("Poly::derivative: variable out of range");
    Poly out(nvars_);
    for (const auto &[e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent d = e;
        --d[var];
        out.add_term(d, c * GaussRat(static_cast<long>(e[var])));
    }
    return out;
}

GaussRat Poly::evaluate(std::span<const GaussRat> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("Poly::evaluate: dimension mismatch");
    // Power cache per variable, grown on demand.
    std::vector<std::vector<GaussRat>> powers(nvars_, std::vector<GaussRat>{GaussRat(1)});
    GaussRat sum;
    for (const auto &[e, c] : terms_) {
        GaussRat t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            auto &pw = powers[i];
            while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
            t *= pw[e[i]];
        }
        sum += t;
    }
    return sum;
}

std::complex<double> Poly::evaluate(std::span<const std::complex<double>> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("Poly::evaluate: dimension mismatch");
    std::complex<double> sum = 0;
    for (const auto &[e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
        sum += t;
    }
    return sum;
}

Poly Poly::compose(std::span<const Poly> subs) const {
    if (subs.size() != nvars_) throw std::invalid_argument("Poly::compose: dimension mismatch");
    std::size_t m = subs.empty() ? 0 : subs[0].nvars();
    for (const auto &s : subs)
        if (s.nvars() != m) throw std::invalid_argument("Poly::compose: inconsistent substitution");
    std::vector<std::vector<Poly>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(constant(m, GaussRat(1)));
    Poly out(m);
    for (const auto &[e, c] : terms_) {
        Poly t = constant(m, c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            auto &pw = powers[i];
            while (pw.size() <= e[i]) pw.push_back(pw.back() * subs[i]);
            t *= pw[e[i]];
        }
        out += t;
    }
    return out;
}

Poly Poly::embed(std::size_t new_nvars, std::size_t offset) const {
    if (offset + nvars_ > new_nvars) throw std::invalid_argument("Poly::embed: target ring too small");
    Poly out(new_nvars);
    for (const auto &[e, c] : terms_) {
        Exponent f(new_nvars, 0);
        std::copy(e.begin(), e.end(), f.begin() + static_cast<std::ptrdiff_t>(offset));
        out.add_term(f, c);
    }
    return out;
}

std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    if (n <= 3) {
        const char *base[] = {"x", "y", "z"};
        for (std::size_t i = 0; i < n; ++i) names.emplace_back(base[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    }
    return names;
}

std::string Poly::str(std::span<const std::string> names) const {
    if (names.size() != nvars_) throw std::invalid_argument("Poly::str: name count mismatch");
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[e, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += names[i];
            if (e[i] > 1) mono += '^' + std::to_string(e[i]);
        }
        std::string coef;
        bool negative = false;
        if (c.is_real()) {
            negative = sgn(c.re()) < 0;
            mpq_class a = abs(c.re());
            if (a != 1 || mono.empty()) coef = a.get_str();
        } else {
            coef = c.str();
        }
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (!coef.empty()) {
            os << coef;
            if (!mono.empty()) os << '*';
        }
        os << mono;
    }
    return os.str();
}

std::string Poly::str() const { return str(default_names(nvars_)); }

std::optional<Poly> divide_exact(const Poly &a, const Poly &b) {
    if (b.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    if (a.nvars() != b.nvars()) throw std::invalid_argument("divide_exact: variable count mismatch");
    Poly q(a.nvars());
    Poly r = a;
    const Exponent &lb = b.leading_exponent();
    const GaussRat lcb = b.leading_coeff();
    while (!r.is_zero()) {
        const Exponent &lr = r.leading_exponent();
        Exponent d(lr.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            d[i] = lr[i] - lb[i];
        }
        Poly t = Poly::monomial(d, r.leading_coeff() / lcb);
        q += t;
        r -= t * b;
    }
    return q;
}

Poly series_divide(const Poly &num, const Poly &den, unsigned d) {
    const GaussRat c0 = den.constant_term();
    if (c0.is_zero()) throw std::domain_error("series_divide: denominator vanishes at the origin");
    // q = (num - (den - c0) q) / c0, solved degree by degree.
    const Poly tail = den - Poly::constant(den.nvars(), c0);
    const GaussRat inv = GaussRat(1) / c0;
    Poly q(num.nvars());
    for (unsigned k = 0; k <= d; ++k) {
        Poly rhs = num.homogeneous_part(k) - (tail * q).homogeneous_part(k);
        q += rhs * inv;
    }
    return q;
}

namespace {

// v-adic coefficients: p = sum_k coeffs[k] * x_v^k, coeffs free of x_v.
std::vector<Poly> coefficients_in(const Poly &p, std::size_t v) {
    std::vector<Poly> out(p.degree_in(v) + 1, Poly(p.nvars()));
    for (const auto &[e, c] : p.terms()) {
        Exponent f = e;
        f[v] = 0;
        out[e[v]].add_term(f, c);
    }
    return out;
}

Poly x_power(std::size_t nvars, std::size_t v, unsigned k) {
    Exponent e(nvars, 0);
    e[v] = k;
    return Poly::monomial(std::move(e));
}

Poly leading_coeff_in(const Poly &p, std::size_t v) { return coefficients_in(p, v).back(); }

Poly content_in(const Poly &p, std::size_t v) {
    Poly g(p.nvars());
    for (const auto &c : coefficients_in(p, v)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

Poly primitive_in(const Poly &p, std::size_t v) {
    Poly c = content_in(p, v);
    if (c.is_constant()) return p.monic();
    auto q = divide_exact(p, c);
    if (!q) throw std::logic_error("primitive_in: content does not divide");
    return q->monic();
}

// Sparse pseudo-remainder of a by b with respect to x_v.
Poly pseudo_remainder(Poly a, const Poly &b, std::size_t v) {
    unsigned db = b.degree_in(v);
    Poly lb = leading_coeff_in(b, v);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        unsigned da = a.degree_in(v);
        Poly la = leading_coeff_in(a, v);
        a = lb * a - la * x_power(a.nvars(), v, da - db) * b;
    }
    return a;
}

std::optional<std::size_t> some_variable(const Poly &p) {
    for (std::size_t v = 0; v < p.nvars(); ++v)
        if (p.degree_in(v) > 0) return v;
    return std::nullopt;
}

} // namespace

Poly gcd(const Poly &a, const Poly &b) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("gcd: variable count mismatch");
    const std::size_t n = a.nvars();
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly::constant(n, GaussRat(1));
    if (a.degree() > kGcdDegreeCap || b.degree() > kGcdDegreeCap) return Poly::constant(n, GaussRat(1));

    std::size_t v = *some_variable(a.degree() >= b.degree() ? a : b);
    if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
    if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);

    Poly c = gcd(content_in(a, v), content_in(b, v));
    Poly pa = primitive_in(a, v);
    Poly pb = primitive_in(b, v);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    Poly g(n);
    for (;;) {
        Poly r = pseudo_remainder(pa, pb, v);
        if (r.is_zero()) {
            g = primitive_in(pb, v);
            break;
        }
        if (r.degree_in(v) == 0) {
            g = Poly::constant(n, GaussRat(1));
            break;
        }
        pa = std::move(pb);
        pb = primitive_in(r, v);
    }
    return (c * g).monic();
}

} // namespace resbound
