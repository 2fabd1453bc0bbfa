#include "rrp/sweep.hpp"

#include <cmath>
#include <sstream>

#include "rrp/drivers.hpp"
#include "rrp/io.hpp"
#include "rrp/solver.hpp"

namespace rrp {

namespace {

void fit_order(SweepResult& out) {
    std::vector<double> xs, ys;
    for (const auto& row : out.rows) {
        if (row.error > 1e-15) {
            xs.push_back(std::log2(static_cast<double>(row.n)));
            ys.push_back(std::log2(row.error));
        }
    }
    out.fit_points = xs.size();
    if (xs.size() < 2) {
        out.fitted_order = 0.0;
        return;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double k = static_cast<double>(xs.size());
    out.fitted_order = -(k * sxy - sx * sy) / (k * sxx - sx * sx);
}

/// Subsample every `factor`-th point of a uniform-grid path; the coarse grid
/// reuses the exact fine times so increments are bit-identical.
GridPath<Vec> subsample(const GridPath<Vec>& fine, std::size_t factor) {
    std::vector<double> times;
    std::vector<Vec> values;
    for (std::size_t i = 0; i < fine.points(); i += factor) {
        times.push_back(fine.grid().time(i));
        values.push_back(fine.value(i));
    }
    return GridPath<Vec>(Grid::make(std::move(times)), std::move(values));
}

IntegrandPath scalar_integrand(const std::shared_ptr<const ReducedRoughPath>& base,
                               const std::function<double(double)>& y,
                               const std::function<double(double)>& y_prime) {
    std::vector<LinMap> v;
    std::vector<BilinMap> dp;
    for (std::size_t i = 0; i < base->grid().points(); ++i) {
        const double x = base->path().value(i)[0];
        v.push_back(LinMap(1, 1, {y(x)}));
        dp.push_back(BilinMap(1, 1, {y_prime(x)}));
    }
    return IntegrandPath(base, GridPath<LinMap>(base->grid_ptr(), std::move(v)),
                         GridPath<BilinMap>(base->grid_ptr(), std::move(dp)));
}

SweepResult fbm_integral_sweep(const std::string& scenario, std::uint64_t seed, bool identity,
                               const PairBudget& budget) {
    SweepResult out;
    out.scenario = scenario;
    const std::size_t n_max = 1u << 12;
    auto fine_grid = Grid::uniform(n_max, 1.0);
    GridPath<Vec> fine = gen_fbm({0.45, seed, 1}, fine_grid).path;

    auto integral_at = [&](std::size_t factor) {
        GridPath<Vec> x = subsample(fine, factor);
        auto base = std::make_shared<const ReducedRoughPath>(geometric_lift(x, 0.45));
        IntegrandPath c =
            identity ? scalar_integrand(base, [](double v) { return v; },
                                        [](double) { return 1.0; })
                     : scalar_integrand(base, [](double v) { return std::sin(v); },
                                        [](double v) { return std::cos(v); });
        IntegralResult res = integrate(c, budget);
        return res.values.value(res.values.points() - 1)[0];
    };

    const double finest = integral_at(1);
    for (std::size_t n = 64; n <= 2048; n *= 2) {
        SweepRow row;
        row.n = n;
        row.value_at_horizon = integral_at(n_max / n);
        row.error = std::abs(row.value_at_horizon - finest);
        out.rows.push_back(row);
    }
    fit_order(out);
    return out;
}

}  // namespace

std::string SweepResult::csv() const {
    std::ostringstream out;
    out << "# scenario=" << scenario << " fitted_order=" << format_double(fitted_order)
        << " fit_points=" << fit_points << "\n";
    out << "n,value_at_T,error\n";
    for (const auto& row : rows)
        out << row.n << "," << format_double(row.value_at_horizon) << ","
            << format_double(row.error) << "\n";
    return out.str();
}

SweepResult convergence_sweep(const std::string& scenario, std::uint64_t seed,
                              const PairBudget& budget) {
    SweepResult out;
    out.scenario = scenario;

    if (scenario == "circle-constant") {
        for (std::size_t n = 16; n <= 512; n *= 2) {
            auto grid = Grid::uniform(n, 1.0);
            auto base = std::make_shared<const ReducedRoughPath>(
                geometric_lift(sample_curve("circle", {}, grid), 0.5));
            SmoothFunction f = make_constant_field(LinMap(1, 2, {0.4, -0.9}));
            SolverConfig cfg;
            cfg.budget = budget;
            SolveReport rep = solve_global(Vec{0.3}, f, base, 0.5, cfg);
            const double expect = 0.3 + 0.4 * (std::cos(1.0) - 1.0) - 0.9 * std::sin(1.0);
            SweepRow row;
            row.n = n;
            row.value_at_horizon = rep.solution.y().value(n)[0];
            row.error = std::abs(row.value_at_horizon - expect);
            out.rows.push_back(row);
        }
        fit_order(out);
        return out;
    }

    if (scenario == "line-exp") {
        for (std::size_t n = 16; n <= 1024; n *= 2) {
            auto grid = Grid::uniform(n, 1.0);
            auto base = std::make_shared<const ReducedRoughPath>(
                geometric_lift(sample_curve("line", {1.0}, grid), 0.5));
            SmoothFunction f = make_linear_field_1d(1.0);
            SolverConfig cfg;
            cfg.budget = budget;
            SolveReport rep = solve_global(Vec{1.0}, f, base, 0.5, cfg);
            double sup_err = 0.0;
            for (std::size_t i = 0; i <= n; ++i)
                sup_err = std::max(sup_err, std::abs(rep.solution.y().value(i)[0] -
                                                     std::exp(grid->time(i))));
            SweepRow row;
            row.n = n;
            row.value_at_horizon = rep.solution.y().value(n)[0];
            row.error = sup_err;
            out.rows.push_back(row);
        }
        fit_order(out);
        return out;
    }

    if (scenario == "fbm-sin-integral")
        return fbm_integral_sweep(scenario, seed, false, budget);
    if (scenario == "fbm-identity-integral")
        return fbm_integral_sweep(scenario, seed, true, budget);

    throw UnknownCurve("unknown sweep scenario: " + scenario);
}

}  // namespace rrp
