#pragma once

#include <cstdint>

namespace resbound::cli {

inline constexpr double kTol = 1e-10;
inline constexpr long kKmax = 50;
inline constexpr unsigned kMaxDeg = 4;
inline constexpr int kTrials = 20;
inline constexpr int kAttempts = 64;
inline constexpr int kSteps = 10000;
inline constexpr std::uint64_t kSeed = 1;

enum ExitCode : int {
    kOk = 0,
    kViolation = 1,
    kBadInput = 2,
    kNotSingular = 3,
    kToleranceInfeasible = 4,
    kNoBalances = 5,
};

} // namespace resbound::cli
