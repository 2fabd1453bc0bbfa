#include "rrp/solver.hpp"

#include <algorithm>
#include <cmath>

namespace rrp {

namespace {

double resolve_alpha(double cfg_alpha, double beta) {
    if (!(beta > 1.0 / 3.0 && beta <= 0.5))
        throw InvalidExponent("solver: driver exponent beta must lie in (1/3, 1/2]");
    double alpha = cfg_alpha;
    if (alpha == 0.0) {
        alpha = beta - 0.05;
        if (!(alpha > 1.0 / 3.0)) alpha = 0.5 * (1.0 / 3.0 + beta);
    }
    if (!(alpha > 1.0 / 3.0 && alpha < beta))
        throw InvalidExponent("solver: working alpha must satisfy 1/3 < alpha < beta");
    return alpha;
}

/// C^2_b data for F on the relevant region: exact global bounds when
/// available, otherwise the probe box {y : |y - xi| <= 2} (solutions are then
/// local-only).
CbNorm field_bounds(const SmoothFunction& f, const Vec& xi) {
    if (f.globally_bounded()) {
        ProbeBox unused = ProbeBox::centered(xi, 0.0);
        return cb_norm(f, 2, unused, 0);
    }
    return cb_norm(f, 2, ProbeBox::centered(xi, 2.0), 128);
}

struct IterationOutcome {
    std::optional<SolutionPath> solution;
    int iterations = 0;
    double final_ratio = 0.0;
    std::vector<double> ratios;
    double seminorm = 0.0;
    bool converged = false;
    bool finite = true;
};

IterationOutcome iterate_picard(const Vec& xi, const SmoothFunction& f, const SolverConfig& cfg,
                                const SolutionPath& start) {
    IterationOutcome out;
    SolutionPath prev = start;
    double prev_dist = -1.0;
    int growth_streak = 0;
    for (int it = 1; it <= cfg.max_picard_iters; ++it) {
        out.iterations = it;
        SolutionPath cur = picard_map(prev, f, xi);
        const double dist = sup_distance(cur, prev);
        if (!std::isfinite(dist)) {
            out.finite = false;
            return out;
        }
        if (prev_dist > cfg.fixed_point_tol) {
            out.final_ratio = dist / prev_dist;
            out.ratios.push_back(out.final_ratio);
            growth_streak = out.final_ratio >= 1.0 ? growth_streak + 1 : 0;
            if (growth_streak >= 3) return out;  // diverging, give up early
        }
        if (dist <= cfg.fixed_point_tol) {
            out.converged = true;
            out.seminorm = controlled_norms(cur, cfg.budget).seminorm;
            out.solution = std::move(cur);
            return out;
        }
        prev = std::move(cur);
        prev_dist = dist;
    }
    return out;
}

}  // namespace

SolutionPath canonical_center(const Vec& xi, const SmoothFunction& f,
                              const std::shared_ptr<const ReducedRoughPath>& r) {
    if (xi.dim() != f.domain_dim())
        throw DimensionMismatch("canonical_center: initial value dimension");
    const LinMap f_xi = f.eval_field(xi);
    std::vector<Vec> values;
    std::vector<LinMap> derivs;
    values.reserve(r->grid().points());
    derivs.reserve(r->grid().points());
    for (std::size_t i = 0; i < r->grid().points(); ++i) {
        values.push_back(xi + f_xi.apply(r->x_increment(0, i)));
        derivs.push_back(f_xi);
    }
    return SolutionPath(r, GridPath<Vec>(r->grid_ptr(), std::move(values)),
                        GridPath<LinMap>(r->grid_ptr(), std::move(derivs)));
}

SolutionPath picard_map(const SolutionPath& y, const SmoothFunction& f, const Vec& xi) {
    IntegrandPath integrand = compose_field(f, y);
    GridPath<Vec> integral = integrate_values(integrand);
    std::vector<Vec> values;
    values.reserve(y.points());
    for (std::size_t i = 0; i < y.points(); ++i)
        values.push_back(xi + integral.value(i));
    return SolutionPath(y.base(), GridPath<Vec>(y.y().grid_ptr(), std::move(values)),
                        integrand.y());
}

LocalSolve solve_local(const Vec& xi, const SmoothFunction& f,
                       const std::shared_ptr<const ReducedRoughPath>& window, double beta,
                       const SolverConfig& cfg, const std::optional<SolutionPath>& initial_guess) {
    resolve_alpha(cfg.alpha == 0.0 ? window->alpha() : cfg.alpha, beta);
    const Grid& g = window->grid();
    const double tau_min = cfg.tau_min > 0.0 ? cfg.tau_min : g.mesh();
    const bool enforce_ball =
        cfg.ball_mode == SolverConfig::BallMode::Enforce ||
        (cfg.ball_mode == SolverConfig::BallMode::Auto && f.globally_bounded());

    std::size_t span = g.steps();
    while (true) {
        std::shared_ptr<const ReducedRoughPath> sub =
            span == g.steps() ? window
                              : std::make_shared<const ReducedRoughPath>(slice(*window, 0, span));
        std::optional<SolutionPath> start;
        if (initial_guess) {
            if (span == g.steps()) {
                start = *initial_guess;
            } else {
                // Restrict the supplied guess to the shrunken window.
                std::vector<Vec> v(initial_guess->y().values().begin(),
                                   initial_guess->y().values().begin() +
                                       static_cast<std::ptrdiff_t>(span) + 1);
                std::vector<LinMap> dp(initial_guess->y_prime().values().begin(),
                                       initial_guess->y_prime().values().begin() +
                                           static_cast<std::ptrdiff_t>(span) + 1);
                start = SolutionPath(sub, GridPath<Vec>(sub->grid_ptr(), std::move(v)),
                                     GridPath<LinMap>(sub->grid_ptr(), std::move(dp)));
            }
        }

        IterationOutcome outcome;
        bool non_finite = false;
        try {
            outcome = iterate_picard(xi, f, cfg, start ? *start : canonical_center(xi, f, sub));
        } catch (const NonFiniteOutput&) {
            non_finite = true;
        }

        const bool ball_ok = outcome.seminorm <= cfg.ball_radius;
        const bool accepted = !non_finite && outcome.finite && outcome.converged &&
                              outcome.final_ratio <= cfg.contraction_target &&
                              (!enforce_ball || ball_ok);
        if (accepted) {
            LocalSolve result{std::move(*outcome.solution), {}};
            result.record.begin_index = 0;
            result.record.end_index = span;
            result.record.t0 = 0.0;
            result.record.t1 = sub->grid().horizon();
            result.record.tau_used = sub->grid().horizon();
            result.record.picard_iterations = outcome.iterations;
            result.record.final_contraction_ratio = outcome.final_ratio;
            result.record.contraction_ratios = std::move(outcome.ratios);
            result.record.seminorm = outcome.seminorm;
            result.record.ball_ok = ball_ok;
            return result;
        }

        if (span == 1 || g.time(std::max<std::size_t>(span / 2, 1)) < tau_min) {
            if (non_finite)
                throw NonFiniteOutput("solve_local: iterates blew up at the smallest window");
            if (!outcome.converged && outcome.iterations >= cfg.max_picard_iters)
                throw MaxItersExceeded("solve_local: no convergence at the smallest window");
            throw StepTooSmall(
                "solve_local: window below tau_min; driver norms too large for this field at "
                "this scale");
        }
        span = std::max<std::size_t>(span / 2, 1);
    }
}

SolveReport solve_global(const Vec& xi, const SmoothFunction& f,
                         const std::shared_ptr<const ReducedRoughPath>& r, double beta,
                         const SolverConfig& cfg) {
    const double alpha = resolve_alpha(cfg.alpha, beta);
    const Grid& g = r->grid();
    const std::size_t n_points = g.points();

    // Working copy of the driver at the solve exponent alpha < beta.
    auto work = std::make_shared<const ReducedRoughPath>(
        ReducedRoughPath(alpha, r->path(), r->second_level_steps()));

    // A-priori step guess from the invariance constants; conservative to the
    // point of being far below any practical window for alpha = beta - 0.05,
    // so it is recorded as a diagnostic and clipped into [tau_min, tau_init].
    const CbNorm fb = field_bounds(f, xi);
    const RrpNorms beta_norms = rrp_norm_at(*work, beta, cfg.budget);
    const double big_m = fb.per_order[0] + 1.0;
    const double c1 = fb.per_order[0] + fb.per_order[1];
    const double c2 = fb.total;
    const double invariance_k =
        c1 * (big_m * beta_norms.x_alpha + 1.0) +
        (1.0 + sewing_constant(alpha)) * beta_norms.total *
            (c1 * c1 + 2.0 * (1.0 + big_m) * big_m * big_m * c2);
    const double tau_theory =
        invariance_k > 0.0 ? std::pow(0.5 / invariance_k, 1.0 / (beta - alpha)) : g.horizon();

    const double tau_min = cfg.tau_min > 0.0 ? cfg.tau_min : g.mesh();
    double tau = cfg.tau_init > 0.0 ? std::min(cfg.tau_init, g.horizon()) : g.horizon();
    if (tau_theory >= tau_min && tau_theory <= tau) tau = tau_theory;

    SolverConfig local_cfg = cfg;
    local_cfg.alpha = alpha;
    local_cfg.tau_min = tau_min;

    std::vector<Vec> values;
    values.reserve(n_points);
    values.push_back(xi);
    std::vector<StepRecord> steps;

    std::size_t a = 0;
    Vec xi_seg = xi;
    while (a + 1 < n_points) {
        // Largest window end with length <= tau (at least one step).
        std::size_t b = a + 1;
        while (b + 1 < n_points && g.time(b + 1) - g.time(a) <= tau * (1.0 + 1e-12)) ++b;

        auto sub = std::make_shared<const ReducedRoughPath>(slice(*work, a, b));
        LocalSolve local = solve_local(xi_seg, f, sub, beta, local_cfg);
        const std::size_t accepted = local.record.end_index;

        for (std::size_t i = 1; i <= accepted; ++i)
            values.push_back(local.solution.y().value(i));

        StepRecord rec = local.record;
        rec.begin_index = a;
        rec.end_index = a + accepted;
        rec.t0 = g.time(a);
        rec.t1 = g.time(a + accepted);
        steps.push_back(rec);

        a += accepted;
        xi_seg = values.back();
        tau = std::min(tau, rec.tau_used);  // uniform, monotone nonincreasing
    }

    // Re-derive Y' = F(Y) on the full grid (junctions included).
    std::vector<LinMap> derivs;
    derivs.reserve(n_points);
    for (const Vec& y : values) derivs.push_back(f.eval_field(y));

    SolveReport report;
    report.solution = SolutionPath(work, GridPath<Vec>(work->grid_ptr(), std::move(values)),
                                   GridPath<LinMap>(work->grid_ptr(), std::move(derivs)));
    report.steps = std::move(steps);
    report.global = f.globally_bounded();
    report.alpha = alpha;
    report.beta = beta;
    report.tau_theory = tau_theory;

    ResidualReport rr = verify_solution(report, f, cfg.budget);
    report.residual_norm = rr.residual;
    return report;
}

ResidualReport verify_solution(const SolveReport& report, const SmoothFunction& f,
                               const PairBudget& budget) {
    ResidualReport out;
    const SolutionPath& y = report.solution;
    IntegrandPath integrand = compose_field(f, y);
    GridPath<Vec> integral = integrate_values(integrand);
    const Vec xi = y.y().value(0);
    for (std::size_t i = 0; i < y.points(); ++i) {
        const double res = (y.y().value(i) - xi - integral.value(i)).norm();
        out.residual = std::max(out.residual, res);
    }
    out.remainder_2beta =
        two_param_seminorm(y.remainder_field(), 2.0 * report.beta, budget).seminorm;
    return out;
}

}  // namespace rrp
