#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrp/holder.hpp"

namespace rrp {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs every module's invariant suite at desk scale with a fixed seed.
/// Failures are results, not exceptions.
std::vector<CheckResult> run_all_checks(std::uint64_t seed = 0, const PairBudget& budget = {});

/// Canonical one-line-per-check rendering (stable across runs and thread
/// counts for a fixed seed).
std::string render_check_report(const std::vector<CheckResult>& results);

}  // namespace rrp
