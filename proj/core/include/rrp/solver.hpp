#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rrp/integral.hpp"

namespace rrp {

/// Tolerances and step-control parameters of the Picard solver.
struct SolverConfig {
    /// Working exponent, strictly below the driver regularity beta; 0 picks
    /// beta - 0.05 clipped into (1/3, beta).
    double alpha = 0.0;
    /// Initial window length in time units; 0 picks the full horizon.
    double tau_init = 0.0;
    /// Smallest admissible window; 0 picks the grid mesh (one step).
    double tau_min = 0.0;
    /// Required per-iteration contraction of successive iterate distances.
    double contraction_target = 0.5;
    int max_picard_iters = 64;
    /// Sup-distance tolerance between successive iterates.
    double fixed_point_tol = 1e-12;
    /// Radius of the fixed-point ball around the canonical center in the
    /// controlled seminorm.
    double ball_radius = 1.0;
    /// Auto enforces the ball only for globally bounded (C^3_b) fields, where
    /// the global theory applies; for box-bounded fields the seminorm is
    /// monitored and recorded but does not gate window acceptance.
    enum class BallMode { Auto, Enforce, Monitor } ball_mode = BallMode::Auto;
    /// Seminorm monitoring switches to the dyadic pair set earlier than the
    /// library default; window acceptance scans run once per accepted window.
    PairBudget budget{PairBudget::Policy::Auto, 1024, 1};
};

struct StepRecord {
    std::size_t begin_index = 0;  // global grid indices
    std::size_t end_index = 0;
    double t0 = 0.0, t1 = 0.0;
    double tau_used = 0.0;
    int picard_iterations = 0;
    /// dist_k / dist_{k-1} of the last two successive-iterate distances above
    /// tolerance; 0 when the first iterate already met the tolerance.
    double final_contraction_ratio = 0.0;
    /// Per-iteration ratio log (for distances above tolerance).
    std::vector<double> contraction_ratios;
    double seminorm = 0.0;  // ||Y, Y'||_{X;alpha} of the accepted iterate
    bool ball_ok = true;
};

struct SolveReport {
    SolutionPath solution;  // on the full grid, with Y' = F(Y) pointwise
    std::vector<StepRecord> steps;
    double residual_norm = 0.0;  // sup_t |Y_t - xi - int_0^t F(Y) dX|
    bool global = false;         // true when F carries exact global bounds
    double alpha = 0.0;          // working exponent
    double beta = 0.0;           // driver exponent
    double tau_theory = 0.0;     // step suggested by the a-priori constants
};

struct ResidualReport {
    double residual = 0.0;
    /// Empirical ||R^Y||_{2 beta}: finite by the bootstrap, reported as-is.
    double remainder_2beta = 0.0;
};

/// Canonical fixed-point center P_t = xi + F(xi) X_{0,t}, P'_t = F(xi); its
/// remainder vanishes identically and its seminorm is zero.
SolutionPath canonical_center(const Vec& xi, const SmoothFunction& f,
                              const std::shared_ptr<const ReducedRoughPath>& r);

/// One application of the fixed-point map
///   M: (Y, Y') -> (xi + int_0^. F(Y) dX, F(Y)).
/// Preserves Y(0) = xi and Y'(0) = F(xi) exactly.
SolutionPath picard_map(const SolutionPath& y, const SmoothFunction& f, const Vec& xi);

struct LocalSolve {
    SolutionPath solution;  // on the accepted window (a slice of the driver)
    StepRecord record;      // indices relative to the window driver
};

/// Picard iteration from the canonical center (or a supplied in-ball guess)
/// on the given window driver. Halves the window on non-convergence, missing
/// contraction, ball violation (when enforced) or non-finite output; throws
/// StepTooSmall below tau_min. The returned solution may cover only an
/// accepted prefix of the window.
LocalSolve solve_local(const Vec& xi, const SmoothFunction& f,
                       const std::shared_ptr<const ReducedRoughPath>& window, double beta,
                       const SolverConfig& cfg = {},
                       const std::optional<SolutionPath>& initial_guess = std::nullopt);

/// Globalization over [0, T]: concatenates accepted windows, re-deriving
/// xi and Y' = F(Y) at every junction. For globally bounded fields the
/// accepted tau is kept uniform across segments (monotone nonincreasing).
SolveReport solve_global(const Vec& xi, const SmoothFunction& f,
                         const std::shared_ptr<const ReducedRoughPath>& r, double beta,
                         const SolverConfig& cfg = {});

/// Recomputes int F(Y) dX from the reported solution and returns the sup
/// residual plus the 2*beta remainder seminorm (diagnostic, never throws).
ResidualReport verify_solution(const SolveReport& report, const SmoothFunction& f,
                               const PairBudget& budget = {});

}  // namespace rrp
