#include <cmath>

#include "doctest.h"
#include "rrp/drivers.hpp"
#include "rrp/solver.hpp"
#include "test_helpers.hpp"

using namespace rrp;

TEST_SUITE_BEGIN("rde_solver");

TEST_CASE("canonical center") {
    auto base = test::line_base(64, 0.45);

    // F = 0: the center is the constant xi with zero derivative.
    SmoothFunction zero = make_constant_field(LinMap(1, 1, {0.0}));
    SolutionPath p0 = canonical_center(Vec{2.0}, zero, base);
    CHECK(p0.y().value(40)[0] == 2.0);
    CHECK(p0.y_prime().value(40).norm() == 0.0);

    // F = 1 over X_t = t from xi = 0: P = (t, 1) with zero seminorm.
    SmoothFunction one = make_constant_field(LinMap(1, 1, {1.0}));
    SolutionPath p1 = canonical_center(Vec{0.0}, one, base);
    for (std::size_t i = 0; i <= 64; ++i)
        CHECK(p1.y().value(i)[0] == doctest::Approx(base->grid().time(i)).epsilon(1e-15));
    CHECK(controlled_norms(p1).seminorm <= 1e-15);

    // Every canonical center has vanishing remainder and seminorm.
    SmoothFunction f = make_tanh_matrix_field(2, 2, 11);
    auto grid = Grid::uniform(64, 1.0);
    auto circle = std::make_shared<const ReducedRoughPath>(
        geometric_lift(sample_curve("circle", {}, grid), 0.45));
    SolutionPath pc = canonical_center(Vec{0.3, -0.2}, f, circle);
    CHECK(controlled_norms(pc).seminorm <= 1e-14);
    CHECK(pc.remainder(3, 49).norm() <= 1e-15);
}

TEST_CASE("picard map basics") {
    auto base = test::line_base(64, 0.45);

    // Constant field: one application lands exactly on (t, 1).
    SmoothFunction one = make_constant_field(LinMap(1, 1, {1.0}));
    SolutionPath anything = test::scalar_controlled(
        base, [](double t) { return 0.2 * std::sin(t); }, [](double) { return 1.0; });
    SolutionPath mapped = picard_map(anything, one, Vec{0.0});
    for (std::size_t i = 0; i <= 64; ++i) {
        CHECK(mapped.y().value(i)[0] ==
              doctest::Approx(base->grid().time(i)).epsilon(1e-14));
        CHECK(mapped.y_prime().value(i).at(0, 0) == 1.0);
    }

    // Initial data are preserved exactly.
    CHECK(mapped.y().value(0)[0] == 0.0);
}

TEST_CASE("picard iterate reproduces the classical polynomial exactly") {
    // dY = Y dX on X_t = t from xi = 1: starting from the center 1 + t, one
    // application gives 1 + t + t^2/2 exactly at grid level (the second-level
    // term supplies the t^2/2).
    auto base = test::line_base(256, 0.45);
    SmoothFunction f = make_linear_field_1d(1.0);
    SolutionPath center = canonical_center(Vec{1.0}, f, base);
    SolutionPath first = picard_map(center, f, Vec{1.0});
    for (std::size_t i = 0; i <= 256; ++i) {
        const double t = base->grid().time(i);
        CHECK(std::abs(first.y().value(i)[0] - (1.0 + t + 0.5 * t * t)) <= 1e-14);
    }
}

TEST_CASE("zero field solves in one iteration") {
    auto base = test::line_base(128, 0.45);
    SmoothFunction zero = make_constant_field(LinMap(1, 1, {0.0}));
    LocalSolve ls = solve_local(Vec{3.0}, zero, base, 0.5);
    CHECK(ls.record.picard_iterations == 1);
    CHECK(ls.record.final_contraction_ratio == 0.0);
    for (std::size_t i = 0; i <= ls.record.end_index; ++i)
        CHECK(ls.solution.y().value(i)[0] == 3.0);
}

TEST_CASE("linear field matches the exponential oracle") {
    auto base = test::line_base(1 << 10, 0.45);
    SmoothFunction f = make_linear_field_1d(1.0);
    SolveReport rep = solve_global(Vec{1.0}, f, base, 0.5);

    CHECK(!rep.global);  // linear fields carry box bounds only
    double worst = 0.0;
    for (std::size_t i = 0; i <= (1u << 10); ++i)
        worst = std::max(worst,
                         std::abs(rep.solution.y().value(i)[0] - std::exp(base->grid().time(i))));
    CHECK(worst <= 1e-4);
    CHECK(rep.residual_norm <= 1e-9);

    // Initial data exact; Y' = F(Y) pointwise.
    CHECK(rep.solution.y().value(0)[0] == 1.0);
    CHECK(rep.solution.y_prime().value(0).at(0, 0) == 1.0);
    for (std::size_t i = 0; i <= (1u << 10); i += 37)
        CHECK(rep.solution.y_prime().value(i).at(0, 0) ==
              doctest::Approx(rep.solution.y().value(i)[0]).epsilon(1e-15));

    // Every accepted window contracted at or below the target, and the
    // per-iteration ratio log decreases strictly once the window is accepted.
    CHECK(!rep.steps.empty());
    for (const auto& st : rep.steps) {
        CHECK(st.final_contraction_ratio <= 0.5);
        CHECK(st.picard_iterations >= 1);
        for (std::size_t k = 0; k < st.contraction_ratios.size(); ++k) {
            CHECK(st.contraction_ratios[k] <= 0.5);
            if (k > 0) CHECK(st.contraction_ratios[k] < st.contraction_ratios[k - 1]);
        }
    }
    CHECK(std::isfinite(rep.tau_theory));
}

TEST_CASE("bounded sine field matches the separable closed form") {
    const std::size_t n = 1 << 10;
    auto grid = Grid::uniform(n, 2.0);
    auto base = std::make_shared<const ReducedRoughPath>(
        geometric_lift(test::scalar_path(grid, [](double t) { return t; }), 0.45));
    SmoothFunction f = make_sin_field();
    SolveReport rep = solve_global(Vec{1.0}, f, base, 0.5);
    CHECK(rep.global);

    const double u0 = std::tan(0.5);
    double worst = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = grid->time(i);
        const double oracle = 2.0 * std::atan(u0 * std::exp(t));
        worst = std::max(worst, std::abs(rep.solution.y().value(i)[0] - oracle));
    }
    CHECK(worst <= 1e-4);
    for (const auto& st : rep.steps) {
        CHECK(st.final_contraction_ratio <= 0.5);
        CHECK(st.ball_ok);  // global field: ball membership enforced
    }
}

TEST_CASE("constant field over the circle telescopes exactly") {
    auto grid = Grid::uniform(512, 1.0);
    auto base = std::make_shared<const ReducedRoughPath>(
        geometric_lift(sample_curve("circle", {}, grid), 0.5));
    SmoothFunction f = make_constant_field(LinMap(1, 2, {0.4, -0.9}));
    SolveReport rep = solve_global(Vec{0.3}, f, base, 0.5);
    for (std::size_t i = 0; i <= 512; ++i) {
        const double t = grid->time(i);
        const double expect = 0.3 + 0.4 * (std::cos(t) - 1.0) - 0.9 * std::sin(t);
        CHECK(rep.solution.y().value(i)[0] == doctest::Approx(expect).epsilon(1e-13));
    }
    CHECK(rep.residual_norm <= 1e-12);
}

TEST_CASE("two in-ball starting guesses reach the same fixed point") {
    auto base = test::line_base(256, 0.45, 0.5);
    SmoothFunction f = make_linear_field_1d(1.0);
    SolverConfig cfg;
    cfg.fixed_point_tol = 1e-12;

    LocalSolve from_center = solve_local(Vec{1.0}, f, base, 0.5, cfg);

    // Perturbed center: same initial data, a bump vanishing at the window
    // start, still within the unit ball.
    SolutionPath center = canonical_center(Vec{1.0}, f, base);
    std::vector<Vec> bumped;
    for (std::size_t i = 0; i <= 256; ++i) {
        const double s = base->grid().time(i) / base->grid().horizon();
        bumped.push_back(center.y().value(i) + Vec{0.05 * s * (1.0 - s)});
    }
    SolutionPath guess(base, GridPath<Vec>(base->grid_ptr(), bumped), center.y_prime());
    LocalSolve from_guess = solve_local(Vec{1.0}, f, base, 0.5, cfg, guess);

    REQUIRE(from_center.record.end_index == from_guess.record.end_index);
    double dist = 0.0;
    for (std::size_t i = 0; i <= from_center.record.end_index; ++i)
        dist = std::max(dist, (from_center.solution.y().value(i) -
                               from_guess.solution.y().value(i))
                                  .norm());
    CHECK(dist <= 10.0 * cfg.fixed_point_tol);
}

TEST_CASE("verification flags corrupted solutions") {
    auto base = test::line_base(512, 0.45);
    SmoothFunction f = make_constant_field(LinMap(1, 1, {1.0}));
    SolveReport rep = solve_global(Vec{0.0}, f, base, 0.5);
    CHECK(verify_solution(rep, f).residual <= 1e-12);

    std::vector<Vec> corrupted = rep.solution.y().values();
    corrupted[200][0] += 1e-3;
    SolveReport bad = rep;
    bad.solution = SolutionPath(rep.solution.base(),
                                GridPath<Vec>(rep.solution.y().grid_ptr(), corrupted),
                                rep.solution.y_prime());
    CHECK(verify_solution(bad, f).residual >= 1e-4);
}

TEST_CASE("lift sensitivity: the second level steers the solution") {
    const std::size_t n = 1 << 10;
    auto grid = Grid::uniform(n, 1.0);
    GridPath<Vec> x = gen_fbm({0.5, 42, 1}, grid).path;
    auto strat = std::make_shared<const ReducedRoughPath>(geometric_lift(x, 0.45));
    auto ito = std::make_shared<const ReducedRoughPath>(
        perturbed_lift(*strat, ito_correction(grid, 1)));

    SmoothFunction f = make_linear_field_1d(1.0);
    SolveReport rs = solve_global(Vec{1.0}, f, strat, 0.5);
    SolveReport ri = solve_global(Vec{1.0}, f, ito, 0.5);

    const double strat_end = rs.solution.y().value(n)[0];
    const double ito_end = ri.solution.y().value(n)[0];
    const double x_end = x.value(n)[0];
    // Stratonovich oracle exp(X_t); Ito oracle exp(X_t - t/2).
    CHECK(std::abs(strat_end - std::exp(x_end)) <= 2e-2 * std::exp(x_end));
    CHECK(std::abs(ito_end - std::exp(x_end - 0.5)) <= 2e-2 * std::exp(x_end - 0.5));
    CHECK(std::abs(strat_end - ito_end) > 0.1 * std::abs(strat_end));
}

TEST_CASE("failure modes surface as typed errors") {
    CHECK_THROWS_AS(solve_global(Vec{1.0}, make_linear_field_1d(1.0), test::line_base(16), 0.3),
                    InvalidExponent);
    SolverConfig cfg;
    cfg.alpha = 0.5;
    CHECK_THROWS_AS(solve_global(Vec{1.0}, make_linear_field_1d(1.0), test::line_base(16), 0.5,
                                 cfg),
                    InvalidExponent);

    // Quadratic field past its blow-up time; halving bottoms out.
    auto base = test::line_base(32, 0.45);
    SmoothFunction::Init sq;
    sq.name = "square_field";
    sq.domain_dim = 1;
    sq.codomain = SmoothFunction::Codomain::Field;
    sq.out_rows = 1;
    sq.out_cols = 1;
    sq.declared_order = 3;
    sq.evaluators[0] = [](const Vec& y) { return DenseTensor({1, 1}, {y[0] * y[0]}); };
    sq.evaluators[1] = [](const Vec& y) { return DenseTensor({1, 1, 1}, {2.0 * y[0]}); };
    sq.evaluators[2] = [](const Vec&) { return DenseTensor({1, 1, 1, 1}, {2.0}); };
    sq.evaluators[3] = [](const Vec&) { return DenseTensor({1, 1, 1, 1, 1}, {0.0}); };
    SmoothFunction square_field{std::move(sq)};
    CHECK_THROWS_AS(solve_global(Vec{4.0}, square_field, base, 0.5), Error);
}

TEST_SUITE_END();
