#include "report.hpp"

#include <sstream>
#include <stdexcept>

namespace resbound::cli {

using nlohmann::json;

namespace {

template <class T>
void put_optional(json &j, const char *key, const std::optional<T> &v) {
    if (v) j[key] = *v;
}

template <class T>
std::optional<T> get_optional(const json &j, const char *key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<T>();
}

json value_json(const ValueEntry &v) {
    json j{{"re", v.re}, {"im", v.im}, {"radius", v.radius}, {"multiplicity", v.multiplicity}};
    put_optional(j, "exact", v.exact);
    return j;
}

ValueEntry value_from(const json &j) {
    ValueEntry v;
    v.exact = get_optional<std::string>(j, "exact");
    v.re = j.at("re").get<double>();
    v.im = j.at("im").get<double>();
    v.radius = j.at("radius").get<double>();
    v.multiplicity = j.at("multiplicity").get<unsigned>();
    return v;
}

json spectrum_json(const SpectrumEntry &s) {
    json vals = json::array();
    for (const auto &v : s.values) vals.push_back(value_json(v));
    return {{"mode", s.mode}, {"values", vals}};
}

SpectrumEntry spectrum_from(const json &j) {
    SpectrumEntry s;
    s.mode = j.at("mode").get<std::string>();
    for (const auto &v : j.at("values")) s.values.push_back(value_from(v));
    return s;
}

json lattice_json(const LatticeEntry &l) {
    json j{{"mode", l.mode}, {"nvars", l.nvars}, {"rank", l.rank}, {"basis", l.basis}, {"residuals", l.residuals}};
    put_optional(j, "tolerance", l.tolerance);
    put_optional(j, "search_bound", l.search_bound);
    return j;
}

LatticeEntry lattice_from(const json &j) {
    LatticeEntry l;
    l.mode = j.at("mode").get<std::string>();
    l.nvars = j.at("nvars").get<std::size_t>();
    l.rank = j.at("rank").get<std::size_t>();
    l.basis = j.at("basis").get<std::vector<std::vector<std::string>>>();
    l.residuals = j.at("residuals").get<std::vector<double>>();
    l.tolerance = get_optional<double>(j, "tolerance");
    l.search_bound = get_optional<long>(j, "search_bound");
    return l;
}

json balance_json(const BalanceEntry &b) {
    return {{"c", b.c},
            {"exact", b.exact},
            {"residual", b.residual},
            {"K", b.K},
            {"exponents", spectrum_json(b.exponents)},
            {"d_c", b.d_c},
            {"lattice", lattice_json(b.lattice)}};
}

BalanceEntry balance_from(const json &j) {
    BalanceEntry b;
    b.c = j.at("c").get<std::vector<std::string>>();
    b.exact = j.at("exact").get<bool>();
    b.residual = j.at("residual").get<double>();
    b.K = j.at("K").get<std::vector<std::vector<std::string>>>();
    b.exponents = spectrum_from(j.at("exponents"));
    b.d_c = j.at("d_c").get<std::size_t>();
    b.lattice = lattice_from(j.at("lattice"));
    return b;
}

json oracle_json(const OracleEntry &o) {
    json cmp = json::array();
    for (const auto &c : o.comparisons)
        cmp.push_back({{"theorem", c.theorem}, {"bound", c.bound}, {"rank", c.rank}, {"mode", c.mode}, {"verdict", c.verdict}});
    return {{"integrals", o.integrals}, {"rank", o.rank},   {"sample_points", o.sample_points},
            {"trials", o.trials},       {"seed", o.seed},   {"comparisons", cmp}};
}

OracleEntry oracle_from(const json &j) {
    OracleEntry o;
    o.integrals = j.at("integrals").get<std::vector<std::string>>();
    o.rank = j.at("rank").get<std::size_t>();
    o.sample_points = j.at("sample_points").get<std::vector<std::vector<std::string>>>();
    o.trials = j.at("trials").get<int>();
    o.seed = j.at("seed").get<std::uint64_t>();
    for (const auto &c : j.at("comparisons"))
        o.comparisons.push_back({c.at("theorem").get<std::string>(), c.at("bound").get<std::size_t>(),
                                 c.at("rank").get<std::size_t>(), c.at("mode").get<std::string>(),
                                 c.at("verdict").get<std::string>()});
    return o;
}

std::string join(const std::vector<std::string> &xs, const char *sep = ", ") {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

std::string value_text(const ValueEntry &v) {
    std::ostringstream os;
    if (v.exact) os << *v.exact;
    else {
        os.precision(12);
        os << v.re;
        if (v.im != 0) os << (v.im < 0 ? " - " : " + ") << std::abs(v.im) << " i";
        os.precision(2);
        os << "  (+/- " << v.radius << ")";
    }
    if (v.multiplicity > 1) os << "  [x" << v.multiplicity << "]";
    return os.str();
}

void lattice_text(std::ostream &os, const LatticeEntry &l, const std::string &indent) {
    os << indent << "lattice (" << l.mode << "): rank " << l.rank;
    if (l.tolerance) os << ", tol " << *l.tolerance;
    if (l.search_bound) os << ", kmax " << *l.search_bound;
    os << "\n";
    for (std::size_t i = 0; i < l.basis.size(); ++i) {
        os << indent << "  (" << join(l.basis[i]) << ")";
        if (i < l.residuals.size() && l.mode == "numeric") os << "  residual " << l.residuals[i];
        os << "\n";
    }
}

} // namespace

json to_json(const AnalysisReport &r) {
    json j;
    j["report_version"] = r.report_version;
    j["command"] = r.command;
    j["input"] = r.input;
    j["parameters"] = r.parameters;
    if (r.spectrum) j["spectrum"] = spectrum_json(*r.spectrum);
    if (r.lattice) j["lattice"] = lattice_json(*r.lattice);
    json bounds = json::array();
    for (const auto &b : r.bounds)
        bounds.push_back({{"theorem", b.theorem}, {"value", b.value}, {"mode", b.mode}, {"detail", b.detail}});
    j["bounds"] = bounds;
    if (r.decomposition) {
        const auto &d = *r.decomposition;
        j["decomposition"] = {{"weights", d.weights}, {"q", d.q}, {"sign", d.sign}, {"fq", d.fq}, {"fh", d.fh}};
    }
    json bal = json::array();
    for (const auto &b : r.balances) bal.push_back(balance_json(b));
    j["balances"] = bal;
    if (r.oracle) j["oracle"] = oracle_json(*r.oracle);
    if (r.monodromy) {
        const auto &m = *r.monodromy;
        j["monodromy"] = {{"M", m.M},
                          {"steps", m.steps},
                          {"est_error", m.est_error},
                          {"liouville_deviation", m.liouville_deviation},
                          {"lattice_tolerance", m.lattice_tolerance}};
    }
    j["caveats"] = r.caveats;
    j["status"] = r.status;
    put_optional(j, "timing_seconds", r.timing_seconds);
    return j;
}

AnalysisReport report_from_json(const json &j) {
    AnalysisReport r;
    r.report_version = j.at("report_version").get<int>();
    if (r.report_version != kReportVersion)
        throw std::invalid_argument("unsupported report_version " + std::to_string(r.report_version));
    r.command = j.at("command").get<std::string>();
    r.input = j.at("input").get<std::string>();
    r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    if (j.contains("spectrum")) r.spectrum = spectrum_from(j.at("spectrum"));
    if (j.contains("lattice")) r.lattice = lattice_from(j.at("lattice"));
    for (const auto &b : j.at("bounds"))
        r.bounds.push_back({b.at("theorem").get<std::string>(), b.at("value").get<std::size_t>(),
                            b.at("mode").get<std::string>(), b.at("detail").get<std::string>()});
    if (j.contains("decomposition")) {
        const auto &d = j.at("decomposition");
        r.decomposition = DecompositionEntry{d.at("weights").get<std::vector<long>>(), d.at("q").get<long>(),
                                             d.at("sign").get<std::string>(), d.at("fq").get<std::vector<std::string>>(),
                                             d.at("fh").get<std::vector<std::string>>()};
    }
    for (const auto &b : j.at("balances")) r.balances.push_back(balance_from(b));
    if (j.contains("oracle")) r.oracle = oracle_from(j.at("oracle"));
    if (j.contains("monodromy")) {
        const auto &m = j.at("monodromy");
        r.monodromy = MonodromyEntry{m.at("M").get<std::vector<std::vector<std::array<double, 2>>>>(),
                                     m.at("steps").get<int>(), m.at("est_error").get<double>(),
                                     m.at("liouville_deviation").get<double>(), m.at("lattice_tolerance").get<double>()};
    }
    r.caveats = j.at("caveats").get<std::vector<std::string>>();
    r.status = j.at("status").get<std::string>();
    r.timing_seconds = get_optional<double>(j, "timing_seconds");
    return r;
}

std::string render_text(const AnalysisReport &r) {
    std::ostringstream os;
    os << "command: " << r.command << "\n";
    os << "input:\n";
    std::istringstream in(r.input);
    for (std::string line; std::getline(in, line);) os << "  " << line << "\n";
    if (!r.parameters.empty()) {
        os << "parameters:";
        for (const auto &[k, v] : r.parameters) os << " " << k << "=" << v;
        os << "\n";
    }
    if (r.decomposition) {
        const auto &d = *r.decomposition;
        std::vector<std::string> w;
        for (long x : d.weights) w.push_back(std::to_string(x));
        os << "decomposition: weights (" << join(w) << "), q = " << d.q << ", " << d.sign << "\n";
        os << "  f_q = (" << join(d.fq) << ")\n";
        os << "  f_h = (" << join(d.fh) << ")\n";
    }
    if (r.monodromy) {
        const auto &m = *r.monodromy;
        os << "monodromy (" << m.steps << " RK4 steps, est. error " << m.est_error << "):\n";
        os.precision(12);
        for (const auto &row : m.M) {
            os << " ";
            for (const auto &z : row) {
                os << "  " << z[0];
                if (z[1] != 0) os << (z[1] < 0 ? "-" : "+") << std::abs(z[1]) << "i";
            }
            os << "\n";
        }
        os.precision(6);
        os << "  Liouville deviation " << m.liouville_deviation << "\n";
    }
    if (r.spectrum) {
        os << (r.command == "floquet" || r.command == "multipliers" ? "multipliers" : "eigenvalues") << " ("
           << r.spectrum->mode << "):\n";
        for (const auto &v : r.spectrum->values) os << "  " << value_text(v) << "\n";
    }
    if (r.lattice) lattice_text(os, *r.lattice, "");
    for (std::size_t i = 0; i < r.balances.size(); ++i) {
        const auto &b = r.balances[i];
        os << "balance " << i + 1 << ": (" << join(b.c) << ")" << (b.exact ? " exact" : " numeric") << ", residual "
           << b.residual << "\n";
        os << "  exponents (" << b.exponents.mode << "):";
        for (const auto &v : b.exponents.values) os << " " << value_text(v) << ";";
        os << "\n  d_c = " << b.d_c << "\n";
        lattice_text(os, b.lattice, "  ");
    }
    if (r.oracle) {
        const auto &o = *r.oracle;
        os << "first integrals found (" << o.integrals.size() << "):\n";
        for (const auto &F : o.integrals) os << "  " << F << "\n";
        os << "independence rank: " << o.rank << " (max over " << o.sample_points.size()
           << " exact sample points; a lower bound)\n";
        for (const auto &c : o.comparisons)
            os << "  " << c.theorem << " bound " << c.bound << " (" << c.mode << "): rank " << c.rank << " -> "
               << c.verdict << "\n";
    }
    for (const auto &b : r.bounds) {
        os << "bound " << b.theorem << ": " << b.value << " (" << b.mode << ")";
        if (!b.detail.empty()) os << "  " << b.detail;
        os << "\n";
    }
    for (const auto &c : r.caveats) os << "caveat: " << c << "\n";
    if (r.status == "violation") os << "VIOLATION: oracle rank exceeds an exact bound\n";
    else os << "status: " << r.status << "\n";
    if (r.timing_seconds) os << "time: " << *r.timing_seconds << " s\n";
    return os.str();
}

} // namespace resbound::cli
