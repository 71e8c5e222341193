#include "commands.hpp"

#include "defaults.hpp"

#include "resbound/floquet.hpp"
#include "resbound/oracle.hpp"
#include "resbound/parser.hpp"
#include "resbound/quasihomog.hpp"
#include "resbound/resonance.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace resbound::cli {

namespace {

struct Common {
    bool json = false;
    bool timing = false;
};

struct BoundArgs {
    std::string file;
    std::string singularity;
    std::string mode = "exact";
    double tol = kTol;
    long kmax = kKmax;
};

struct QhArgs {
    std::string file;
    std::string weights;
    std::string sign = "positive";
    int attempts = kAttempts;
    std::uint64_t seed = kSeed;
    bool include_zero = false;
    double tol = kTol;
    long kmax = kKmax;
};

struct FloquetArgs {
    std::string file;
    int steps = kSteps;
    double tol = kTol;
    long kmax = kKmax;
};

struct OracleArgs {
    std::string file;
    unsigned max_deg = kMaxDeg;
    int trials = kTrials;
    std::uint64_t seed = kSeed;
    std::string weights;
    int attempts = kAttempts;
    double tol = kTol;
    long kmax = kKmax;
};

struct MultipliersArgs {
    std::string mu;
    double tol = kTol;
    long kmax = kKmax;
};

/// Exit with a code and a one-line diagnostic.
struct Failure {
    int code;
    std::string message;
};

std::string read_input(const std::string &path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Failure{kBadInput, "cannot read " + path};
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string complex_str(std::complex<double> z) {
    if (z.imag() == 0) return fmt(z.real());
    return "(" + fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + " i)";
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else cur += ch;
    }
    out.push_back(cur);
    return out;
}

std::vector<GaussRat> parse_point(const std::string &text, const char *what) {
    std::vector<GaussRat> p;
    for (const auto &item : split_list(text)) {
        try {
            p.push_back(parse_constant(item));
        } catch (const ParseError &e) {
            throw Failure{kBadInput, std::string("bad ") + what + " entry '" + item + "': " + e.what()};
        }
    }
    return p;
}

Weights parse_weights(const std::string &text) {
    Weights s;
    for (const auto &item : split_list(text)) {
        try {
            std::size_t used = 0;
            long v = std::stol(item, &used);
            while (used < item.size() && item[used] == ' ') ++used;
            if (used != item.size()) throw std::invalid_argument(item);
            s.push_back(v);
        } catch (const std::logic_error &) {
            throw Failure{kBadInput, "bad weight '" + item + "': expected an integer"};
        }
    }
    return s;
}

std::string weights_str(const Weights &s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out;
}

ValueEntry value_entry(const Eigenvalue &e) {
    ValueEntry v;
    if (e.exact) v.exact = e.exact->str();
    v.re = e.approx.real();
    v.im = e.approx.imag();
    v.radius = e.error_radius;
    v.multiplicity = e.multiplicity;
    return v;
}

SpectrumEntry spectrum_entry(const SpectrumReport &s) {
    SpectrumEntry out{to_string(s.mode), {}};
    for (const auto &e : s.values) out.values.push_back(value_entry(e));
    return out;
}

LatticeEntry lattice_entry(const Lattice &l) {
    LatticeEntry out;
    out.mode = to_string(l.mode);
    out.nvars = l.nvars;
    out.rank = l.rank();
    for (const auto &v : l.basis) {
        std::vector<std::string> row;
        for (const auto &x : v) row.push_back(x.get_str());
        out.basis.push_back(std::move(row));
    }
    if (l.mode == Mode::numeric) {
        out.residuals = l.residuals;
        out.tolerance = l.tolerance;
        out.search_bound = l.search_bound;
    }
    return out;
}

std::string numeric_caveat(const std::string &what, const Lattice &l) {
    return what + " lattice is numeric (tol " + fmt(l.tolerance) + ", |k_i| <= " + std::to_string(l.search_bound) +
           "): relations hold to the tolerance only and a missed relation makes the bound too small";
}

void param(AnalysisReport &r, const std::string &k, const std::string &v) { r.parameters[k] = v; }

BalanceEntry balance_entry(const BalanceData &b) {
    BalanceEntry e;
    e.exact = b.exact.has_value();
    if (b.exact)
        for (const auto &x : *b.exact) e.c.push_back(x.str());
    else
        for (const auto &x : b.c) e.c.push_back(complex_str(x));
    e.residual = b.residual;
    for (std::size_t i = 0; i < b.K.rows(); ++i) {
        std::vector<std::string> row;
        for (std::size_t j = 0; j < b.K.cols(); ++j) row.push_back(b.K(i, j).str());
        e.K.push_back(std::move(row));
    }
    e.exponents = spectrum_entry(b.exponents);
    e.d_c = b.d_c;
    e.lattice = lattice_entry(b.lattice_c);
    return e;
}

void add_balances(AnalysisReport &r, const QHBoundReport &q) {
    const auto &d = q.decomposition;
    DecompositionEntry de;
    de.weights = d.weights;
    de.q = d.q;
    de.sign = to_string(d.sign);
    for (const auto &p : d.fq.components()) de.fq.push_back(p.str(d.fq.names()));
    for (const auto &p : d.fh.components()) de.fh.push_back(p.str(d.fh.names()));
    r.decomposition = de;
    for (const auto &b : q.balances) {
        r.balances.push_back(balance_entry(b));
        if (b.lattice_c.mode == Mode::numeric)
            r.caveats.push_back(numeric_caveat("balance " + std::to_string(r.balances.size()) + " exponent", b.lattice_c));
    }
    if (q.exact_complete)
        r.caveats.push_back("balance set: every balance was solved exactly; d is the minimum over these");
    else
        r.caveats.push_back("balance set may be incomplete (some balances come from a seeded Newton search); d is the "
                            "minimum over the balances found and may overestimate the true minimum");
}

AnalysisReport cmd_bound(const BoundArgs &a) {
    AnalysisReport r;
    r.command = "bound";
    auto f = parse_vector_field(read_input(a.file));
    r.input = f.str();
    std::vector<GaussRat> x0 = a.singularity.empty() ? std::vector<GaussRat>(f.nvars()) : parse_point(a.singularity, "singularity");
    if (x0.size() != f.nvars())
        throw Failure{kBadInput, "singularity has " + std::to_string(x0.size()) + " coordinates, field has " +
                                     std::to_string(f.nvars()) + " variables"};
    std::string pt;
    for (std::size_t i = 0; i < x0.size(); ++i) pt += (i ? "," : "") + x0[i].str();
    param(r, "singularity", pt);
    param(r, "mode", a.mode);
    param(r, "tol", fmt(a.tol));
    param(r, "kmax", std::to_string(a.kmax));

    LatticeOptions o{a.mode == "numeric" ? Mode::numeric : Mode::exact, a.tol, a.kmax};
    auto br = theorem1_bound(f, x0, o);
    r.spectrum = spectrum_entry(br.spectrum);
    r.lattice = lattice_entry(br.lattice);
    r.bounds.push_back({"T1", br.bound, to_string(br.lattice.mode), "rank of the resonant lattice of Df(x0)"});
    if (br.lattice.mode == Mode::numeric) r.caveats.push_back(numeric_caveat("resonance", br.lattice));
    return r;
}

AnalysisReport cmd_qh(const QhArgs &a) {
    AnalysisReport r;
    r.command = "qh";
    auto f = parse_vector_field(read_input(a.file));
    r.input = f.str();
    auto s = parse_weights(a.weights);
    param(r, "weights", weights_str(s));
    param(r, "sign", a.sign);
    param(r, "attempts", std::to_string(a.attempts));
    param(r, "seed", std::to_string(a.seed));
    param(r, "include_zero_balance", a.include_zero ? "true" : "false");
    param(r, "tol", fmt(a.tol));
    param(r, "kmax", std::to_string(a.kmax));

    auto q = theorem4_bound(f, s, {a.attempts, a.seed, a.include_zero}, {Mode::exact, a.tol, a.kmax},
                            a.sign == "negative" ? QHSign::negative : QHSign::positive);
    add_balances(r, q);
    if (!q.d) {
        r.status = "no_balances";
        return r;
    }
    bool all_exact = true;
    for (const auto &b : q.balances) all_exact = all_exact && b.lattice_c.mode == Mode::exact;
    r.bounds.push_back({"T4", *q.d, all_exact ? "exact" : "numeric",
                        "minimum of d_c over " + std::to_string(q.balances.size()) + " balance(s)"});
    return r;
}

AnalysisReport cmd_floquet(const FloquetArgs &a) {
    AnalysisReport r;
    r.command = "floquet";
    std::string text = read_input(a.file);
    auto sys = parse_periodic_system(text);
    while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
    r.input = text;
    param(r, "steps", std::to_string(a.steps));
    param(r, "tol", fmt(a.tol));
    param(r, "kmax", std::to_string(a.kmax));
    if (a.steps < 100) throw Failure{kBadInput, "--steps must be at least 100"};

    auto m = monodromy(sys, a.steps, {Mode::exact, a.tol, a.kmax});
    MonodromyEntry me;
    for (std::size_t i = 0; i < m.M.rows(); ++i) {
        std::vector<std::array<double, 2>> row;
        for (std::size_t j = 0; j < m.M.cols(); ++j) row.push_back({m.M(i, j).real(), m.M(i, j).imag()});
        me.M.push_back(std::move(row));
    }
    me.steps = m.stats.steps;
    me.est_error = m.stats.est_error;
    me.liouville_deviation = m.liouville_deviation;
    me.lattice_tolerance = m.lattice_tolerance;
    r.monodromy = me;
    r.spectrum = spectrum_entry(m.multipliers);
    r.lattice = lattice_entry(m.lattice);
    r.bounds.push_back({"T3", m.bound, to_string(m.lattice.mode), "rank of {k : mu^k = 1}"});
    if (m.lattice.mode == Mode::numeric) r.caveats.push_back(numeric_caveat("multiplier", m.lattice));
    if (m.lattice.mode == Mode::numeric && m.lattice_tolerance > a.tol)
        r.caveats.push_back("lattice tolerance widened from " + fmt(a.tol) + " to " + fmt(m.lattice_tolerance) +
                            " to cover the integration error");
    return r;
}

AnalysisReport cmd_multipliers(const MultipliersArgs &a) {
    AnalysisReport r;
    r.command = "multipliers";
    auto mu = parse_point(a.mu, "multiplier");
    std::string echo;
    for (std::size_t i = 0; i < mu.size(); ++i) echo += (i ? ", " : "") + mu[i].str();
    r.input = echo;
    param(r, "tol", fmt(a.tol));
    param(r, "kmax", std::to_string(a.kmax));
    for (const auto &m : mu)
        if (m.is_zero()) throw Failure{kBadInput, "multipliers must be nonzero"};
    auto lat = multiplicative_lattice(std::span<const GaussRat>(mu), a.tol, a.kmax);
    SpectrumEntry se{"exact", {}};
    for (const auto &m : mu) {
        ValueEntry v;
        v.exact = m.str();
        v.re = m.to_complex().real();
        v.im = m.to_complex().imag();
        se.values.push_back(v);
    }
    r.spectrum = se;
    r.lattice = lattice_entry(lat);
    r.bounds.push_back({"T5", lat.rank(), to_string(lat.mode), "rank of {k : mu^k = 1} over the given multipliers"});
    if (lat.mode == Mode::numeric) r.caveats.push_back(numeric_caveat("multiplier", lat));
    return r;
}

std::string verdict(std::size_t rank, std::size_t bound, Mode mode) {
    if (rank > bound) return mode == Mode::exact ? "VIOLATION" : "exceeds numeric bound";
    return rank == bound ? "consistent (rank = bound)" : "consistent (rank < bound)";
}

AnalysisReport cmd_oracle(const OracleArgs &a) {
    AnalysisReport r;
    r.command = "oracle";
    auto f = parse_vector_field(read_input(a.file));
    r.input = f.str();
    param(r, "max_deg", std::to_string(a.max_deg));
    param(r, "trials", std::to_string(a.trials));
    param(r, "seed", std::to_string(a.seed));
    param(r, "tol", fmt(a.tol));
    param(r, "kmax", std::to_string(a.kmax));
    if (!a.weights.empty()) param(r, "weights", a.weights);
    if (a.max_deg < 1) throw Failure{kBadInput, "--max-deg must be at least 1"};
    if (a.trials < 1) throw Failure{kBadInput, "--trials must be at least 1"};

    auto found = rational_first_integrals(f, a.max_deg, {20, a.seed}, a.trials);
    auto cert = independence_rank(found, a.trials, a.seed);
    OracleEntry o;
    for (const auto &F : found) o.integrals.push_back(F.str(f.names()));
    o.rank = cert.rank;
    for (const auto &p : cert.sample_points) {
        std::vector<std::string> row;
        for (const auto &x : p) row.push_back(x.str());
        o.sample_points.push_back(std::move(row));
    }
    o.trials = cert.trials;
    o.seed = cert.seed;

    const LatticeOptions lo{Mode::exact, a.tol, a.kmax};
    const std::vector<GaussRat> origin(f.nvars());
    bool singular = true;
    for (const auto &v : f.evaluate(origin)) singular = singular && v.is_zero();
    if (singular) {
        try {
            auto br = theorem1_bound(f, origin, lo);
            r.spectrum = spectrum_entry(br.spectrum);
            r.lattice = lattice_entry(br.lattice);
            r.bounds.push_back({"T1", br.bound, to_string(br.lattice.mode), "at the origin"});
            o.comparisons.push_back({"T1", br.bound, cert.rank, to_string(br.lattice.mode),
                                     verdict(cert.rank, br.bound, br.lattice.mode)});
            if (br.lattice.mode == Mode::numeric) r.caveats.push_back(numeric_caveat("resonance", br.lattice));
        } catch (const ToleranceInfeasible &e) {
            r.caveats.push_back(std::string("T1 not evaluated: ") + e.what());
        }
    } else {
        r.caveats.push_back("origin is not a singularity; T1 not evaluated");
    }

    // T4: the given weights, or every positive weight vector with entries
    // <= 3 that makes the field semi-quasi-homogeneous (n <= 3).
    std::vector<Weights> cands;
    if (!a.weights.empty()) cands.push_back(parse_weights(a.weights));
    else if (f.nvars() <= 3)
        for (auto &s : candidate_weights(f))
            if (std::all_of(s.begin(), s.end(), [](long w) { return w > 0; })) cands.push_back(s);
    std::optional<std::size_t> best;
    Mode best_mode = Mode::exact;
    Weights best_s;
    for (const auto &s : cands) {
        auto q = theorem4_bound(f, s, {a.attempts, a.seed, false}, lo);
        for (const auto &b : q.balances) {
            bool better = !best || b.d_c < *best || (b.d_c == *best && b.lattice_c.mode == Mode::exact);
            if (better) {
                best = b.d_c;
                best_mode = b.lattice_c.mode;
                best_s = s;
            }
        }
    }
    if (best) {
        r.bounds.push_back({"T4", *best, to_string(best_mode), "weights (" + weights_str(best_s) + ")"});
        o.comparisons.push_back({"T4", *best, cert.rank, to_string(best_mode), verdict(cert.rank, *best, best_mode)});
        if (best_mode == Mode::numeric)
            r.caveats.push_back("T4 bound comes from a numeric exponent lattice");
    }
    for (const auto &c : o.comparisons)
        if (c.verdict == "VIOLATION") r.status = "violation";
    r.caveats.push_back("independence rank is a lower bound (maximum over exact sample points)");
    r.oracle = std::move(o);
    return r;
}

int emit(const AnalysisReport &r, const Common &c, std::ostream &out) {
    if (c.json) out << to_json(r).dump(2) << "\n";
    else out << render_text(r);
    if (r.status == "violation") return kViolation;
    if (r.status == "no_balances") return kNoBalances;
    return kOk;
}

std::string defaults_table() {
    std::ostringstream os;
    os << "Defaults:\n"
       << "  --tol        " << kTol << "\n"
       << "  --kmax       " << kKmax << "\n"
       << "  --max-deg    " << kMaxDeg << "\n"
       << "  --trials     " << kTrials << "\n"
       << "  --attempts   " << kAttempts << "\n"
       << "  --steps      " << kSteps << "\n"
       << "  --seed       " << kSeed << "\n"
       << "Exit codes: 0 ok, 1 violation, 2 bad input, 3 not a singularity,\n"
       << "  4 tolerance infeasible, 5 no balances.";
    return os.str();
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Upper bounds on the number of functionally independent rational first integrals"};
    app.name("resbound");
    app.footer(defaults_table());
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App *sub) {
        sub->add_flag("--json", common.json, "Emit the report as JSON");
        sub->add_flag("--timing", common.timing, "Include wall-clock time in the report");
    };
    auto lattice_opts = [](CLI::App *sub, double &tol, long &kmax) {
        sub->add_option("--tol", tol, "Relation tolerance for numeric lattices")->check(CLI::PositiveNumber);
        sub->add_option("--kmax", kmax, "Bound on |k_i| in numeric relation search")->check(CLI::PositiveNumber);
    };

    BoundArgs ba;
    auto *bound = app.add_subcommand("bound", "Resonance bound at a singularity");
    bound->add_option("file", ba.file, "Vector field file ('-' for stdin)")->required();
    bound->add_option("--singularity", ba.singularity, "Comma-separated point (default: origin)");
    bound->add_option("--mode", ba.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
    lattice_opts(bound, ba.tol, ba.kmax);
    add_common(bound);

    QhArgs qa;
    auto *qh = app.add_subcommand("qh", "Kowalevskaya-exponent bound for a semi-quasi-homogeneous field");
    qh->add_option("file", qa.file, "Vector field file ('-' for stdin)")->required();
    qh->add_option("--weights", qa.weights, "Comma-separated integer weights")->required();
    qh->add_option("--sign", qa.sign, "positive or negative")->check(CLI::IsMember({"positive", "negative"}));
    qh->add_option("--attempts", qa.attempts, "Newton starts for the balance search");
    qh->add_option("--seed", qa.seed, "Random seed");
    qh->add_flag("--include-zero-balance", qa.include_zero, "Report c = 0 as a balance");
    lattice_opts(qh, qa.tol, qa.kmax);
    add_common(qh);

    FloquetArgs fa;
    auto *floquet = app.add_subcommand("floquet", "Multiplier bound for a periodic linear system");
    floquet->add_option("file", fa.file, "Periodic system file ('-' for stdin)")->required();
    floquet->add_option("--steps", fa.steps, "RK4 steps over one period");
    lattice_opts(floquet, fa.tol, fa.kmax);
    add_common(floquet);

    OracleArgs oa;
    auto *oracle = app.add_subcommand("oracle", "Search first integrals and compare with the bounds");
    oracle->add_option("file", oa.file, "Vector field file ('-' for stdin)")->required();
    oracle->add_option("--max-deg", oa.max_deg, "Degree of the polynomial search space");
    oracle->add_option("--trials", oa.trials, "Sample points for the independence rank");
    oracle->add_option("--seed", oa.seed, "Random seed");
    oracle->add_option("--weights", oa.weights, "Weights for the quasi-homogeneous bound (default: search)");
    oracle->add_option("--attempts", oa.attempts, "Newton starts for the balance search");
    lattice_opts(oracle, oa.tol, oa.kmax);
    add_common(oracle);

    MultipliersArgs ma;
    auto *mult = app.add_subcommand("multipliers", "Bound from the multipliers of a periodic orbit");
    mult->add_option("--mu", ma.mu, "Comma-separated multipliers (Gaussian rationals)")->required();
    lattice_opts(mult, ma.tol, ma.kmax);
    add_common(mult);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kBadInput;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        AnalysisReport r;
        if (*bound) r = cmd_bound(ba);
        else if (*qh) r = cmd_qh(qa);
        else if (*floquet) r = cmd_floquet(fa);
        else if (*oracle) r = cmd_oracle(oa);
        else r = cmd_multipliers(ma);
        if (common.timing)
            r.timing_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return emit(r, common, out);
    } catch (const Failure &e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kBadInput;
    } catch (const NotSingular &e) {
        err << "error: " << e.what() << "\n";
        return kNotSingular;
    } catch (const ToleranceInfeasible &e) {
        err << "error: " << e.what() << "\n";
        return kToleranceInfeasible;
    } catch (const MissingMinusOne &e) {
        err << "VIOLATION: " << e.what() << "\n";
        return kViolation;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
}

} // namespace resbound::cli
