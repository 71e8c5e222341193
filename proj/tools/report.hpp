#pragma once

#include "json.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace resbound::cli {

inline constexpr int kReportVersion = 1;

/// An eigenvalue, multiplier or Kowalevskaya exponent.
struct ValueEntry {
    std::optional<std::string> exact;
    double re = 0;
    double im = 0;
    double radius = 0;
    unsigned multiplicity = 1;
    bool operator==(const ValueEntry &) const = default;
};

struct SpectrumEntry {
    std::string mode;
    std::vector<ValueEntry> values;
    bool operator==(const SpectrumEntry &) const = default;
};

struct LatticeEntry {
    std::string mode;
    std::size_t nvars = 0;
    std::size_t rank = 0;
    std::vector<std::vector<std::string>> basis; ///< integers as decimal strings
    std::vector<double> residuals;
    std::optional<double> tolerance;
    std::optional<long> search_bound;
    bool operator==(const LatticeEntry &) const = default;
};

/// theorem: T1 (singularity), T3 (periodic linear system),
/// T4 (quasi-homogeneous), T5 (periodic orbit).
struct BoundEntry {
    std::string theorem;
    std::size_t value = 0;
    std::string mode;
    std::string detail;
    bool operator==(const BoundEntry &) const = default;
};

struct DecompositionEntry {
    std::vector<long> weights;
    long q = 0;
    std::string sign;
    std::vector<std::string> fq;
    std::vector<std::string> fh;
    bool operator==(const DecompositionEntry &) const = default;
};

struct BalanceEntry {
    std::vector<std::string> c;
    bool exact = false;
    double residual = 0;
    std::vector<std::vector<std::string>> K;
    SpectrumEntry exponents;
    std::size_t d_c = 0;
    LatticeEntry lattice;
    bool operator==(const BalanceEntry &) const = default;
};

struct ComparisonEntry {
    std::string theorem;
    std::size_t bound = 0;
    std::size_t rank = 0;
    std::string mode;
    std::string verdict; ///< equal | below | VIOLATION | exceeds numeric bound
    bool operator==(const ComparisonEntry &) const = default;
};

struct OracleEntry {
    std::vector<std::string> integrals;
    std::size_t rank = 0;
    std::vector<std::vector<std::string>> sample_points;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<ComparisonEntry> comparisons;
    bool operator==(const OracleEntry &) const = default;
};

struct MonodromyEntry {
    std::vector<std::vector<std::array<double, 2>>> M; ///< (re, im) per entry
    int steps = 0;
    double est_error = 0;
    double liouville_deviation = 0;
    double lattice_tolerance = 0;
    bool operator==(const MonodromyEntry &) const = default;
};

struct AnalysisReport {
    int report_version = kReportVersion;
    std::string command;
    std::string input;
    std::map<std::string, std::string> parameters;
    std::optional<SpectrumEntry> spectrum;
    std::optional<LatticeEntry> lattice;
    std::vector<BoundEntry> bounds;
    std::optional<DecompositionEntry> decomposition;
    std::vector<BalanceEntry> balances;
    std::optional<OracleEntry> oracle;
    std::optional<MonodromyEntry> monodromy;
    std::vector<std::string> caveats;
    std::string status = "ok";
    std::optional<double> timing_seconds;
    bool operator==(const AnalysisReport &) const = default;
};

nlohmann::json to_json(const AnalysisReport &r);
/// Throws nlohmann::json::exception or std::invalid_argument on malformed
/// documents.
AnalysisReport report_from_json(const nlohmann::json &j);

std::string render_text(const AnalysisReport &r);

} // namespace resbound::cli
