#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrp/holder.hpp"

namespace rrp {

struct SweepRow {
    std::size_t n = 0;
    double value_at_horizon = 0.0;
    double error = 0.0;
};

struct SweepResult {
    std::string scenario;
    std::vector<SweepRow> rows;
    /// Least-squares slope of log2(error) against log2(N), negated; rows with
    /// error below 1e-15 are excluded (exact scenarios report 0 with all rows
    /// excluded).
    double fitted_order = 0.0;
    std::size_t fit_points = 0;

    std::string csv() const;
};

/// Resamples a driver family across N = 2^k and tabulates errors against the
/// oracle or against the finest refinement.
///
/// Scenarios:
///   "circle-constant"       solve with a constant field (telescopes exactly)
///   "line-exp"              dY = Y dX, X_t = t, oracle e^t
///   "fbm-sin-integral"      int sin(X) dX on nested refinements of one
///                           fBm(H = 0.45) sample, error vs finest
///   "fbm-identity-integral" int X dX on the same refinements (telescopes
///                           exactly at every N)
SweepResult convergence_sweep(const std::string& scenario, std::uint64_t seed = 0,
                              const PairBudget& budget = {});

}  // namespace rrp
