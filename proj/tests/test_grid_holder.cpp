#include <cmath>

#include "doctest.h"
#include "rrp/holder.hpp"
#include "test_helpers.hpp"

using namespace rrp;

TEST_SUITE_BEGIN("path_grid");

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid({0.0, 0.5, 0.5, 1.0}), GridMismatch);
    CHECK_THROWS_AS(Grid({0.1, 0.5, 1.0}), GridMismatch);
    CHECK_THROWS_AS(Grid({0.0}), GridMismatch);
    Grid single({0.0, 1.0});  // degenerate single-step grid is allowed
    CHECK(single.steps() == 1);
    CHECK(single.mesh() == 1.0);
}

TEST_CASE("increments") {
    auto grid = Grid::uniform(4, 1.0);
    GridPath<Vec> constant = test::scalar_path(grid, [](double) { return 2.5; });
    for (std::size_t i = 0; i <= 4; ++i)
        for (std::size_t j = i; j <= 4; ++j) CHECK(constant.increment(i, j).norm() == 0.0);

    GridPath<Vec> lin = test::scalar_path(grid, [](double t) { return t; });
    CHECK(lin.increment(0, 4)[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lin.increment(2, 2).norm() == 0.0);

    auto g3 = Grid::make({0.0, 0.5, 1.0});
    GridPath<Vec> sq = test::scalar_path(g3, [](double t) { return t * t; });
    CHECK(sq.increment(0, 1)[0] == doctest::Approx(0.25).epsilon(1e-15));

    CHECK_THROWS_AS(lin.increment(3, 2), IndexOutOfRange);
    CHECK_THROWS_AS(lin.increment(0, 9), IndexOutOfRange);
}

TEST_CASE("increment additivity holds to the last bit of the subtraction") {
    auto grid = Grid::uniform(64, 1.0);
    GridPath<Vec> p = test::scalar_path(grid, [](double t) { return std::sin(5 * t) + t; });
    CounterRng rng(5, "incr");
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t i = rng.next_u64() % 63;
        std::size_t k = i + 1 + rng.next_u64() % (64 - i);
        std::size_t j = i + rng.next_u64() % (k - i + 1);
        CHECK((p.increment(i, k) - p.increment(i, j) - p.increment(j, k)).norm() <= 1e-15);
    }
}

TEST_CASE("holder seminorm examples") {
    auto grid = Grid::uniform(32, 1.0);
    GridPath<Vec> constant = test::scalar_path(grid, [](double) { return 3.0; });
    CHECK(holder_seminorm(constant, 0.5).seminorm == 0.0);

    GridPath<Vec> lin = test::scalar_path(grid, [](double t) { return t; });
    HolderReport r = holder_seminorm(lin, 0.5);
    CHECK(r.seminorm == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r.argmax_i == 0);
    CHECK(r.argmax_j == 32);
    CHECK(r.pair_budget == "all-pairs");
    // The reported argmax pair attains the reported value.
    CHECK(holder_quotient(lin.increment(r.argmax_i, r.argmax_j).norm(),
                          grid->gap(r.argmax_i, r.argmax_j), 0.5) == r.seminorm);

    CHECK(holder_seminorm(lin, 1.0).seminorm == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(holder_seminorm(lin, 0.0), InvalidExponent);
    CHECK_THROWS_AS(holder_seminorm(lin, 1.5), InvalidExponent);
}

TEST_CASE("two-parameter seminorm examples") {
    auto grid = Grid::uniform(32, 1.0);
    TwoParamField<Vec> zero(grid, [](std::size_t, std::size_t) { return Vec{0.0}; });
    CHECK(two_param_seminorm(zero, 1.0).seminorm == 0.0);

    // S_{s,t} = (t-s)^2/2 at exponent 1 peaks at the full interval.
    TwoParamField<Vec> geo(grid, [&](std::size_t i, std::size_t j) {
        const double g = grid->gap(i, j);
        return Vec{0.5 * g * g};
    });
    HolderReport r = two_param_seminorm(geo, 1.0);
    CHECK(r.seminorm == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r.argmax_j == 32);

    const double alpha = 0.42, c = 3.7;
    TwoParamField<Vec> flat(grid, [&](std::size_t i, std::size_t j) {
        return Vec{c * std::pow(grid->gap(i, j), 2.0 * alpha)};
    });
    CHECK(two_param_seminorm(flat, 2.0 * alpha).seminorm == doctest::Approx(c).epsilon(1e-12));

    CHECK_THROWS_AS(two_param_seminorm(zero, 2.5), InvalidExponent);
}

TEST_CASE("sup bound from holder seminorm") {
    auto grid = Grid::uniform(16, 1.0);
    GridPath<Vec> constant = test::scalar_path(grid, [](double) { return -4.0; });
    CHECK(sup_bound_from_holder(constant, 0.5) == doctest::Approx(4.0).epsilon(1e-15));

    GridPath<Vec> lin = test::scalar_path(grid, [](double t) { return t; });
    CHECK(sup_bound_from_holder(lin, 0.5) == doctest::Approx(1.0).epsilon(1e-13));

    GridPath<Vec> shifted = test::scalar_path(grid, [](double t) { return 2.0 + t; });
    CHECK(sup_bound_from_holder(shifted, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("sup bound dominates the empirical sup norm") {
    CounterRng rng(17, "supbound");
    for (int rep = 0; rep < 20; ++rep) {
        auto grid = Grid::uniform(64, 1.0);
        const double a = 2.0 * rng.next_unit() - 1.0;
        const double b = 4.0 * rng.next_unit() - 2.0;
        const double w = 1.0 + 6.0 * rng.next_unit();
        GridPath<Vec> p = test::scalar_path(
            grid, [&](double t) { return a + b * std::sin(w * t) + 0.5 * t * t; });
        for (double alpha : {0.4, 0.5, 1.0}) {
            // Also holds under the sparse dyadic policy.
            PairBudget dyadic;
            dyadic.policy = PairBudget::Policy::Dyadic;
            CHECK(sup_bound_from_holder(p, alpha, dyadic) >= sup_norm(p) - 1e-12);
        }
    }
}

TEST_CASE("seminorm scales homogeneously") {
    auto grid = Grid::uniform(64, 1.0);
    GridPath<Vec> p = test::scalar_path(grid, [](double t) { return std::sin(4 * t); });
    GridPath<Vec> q = test::scalar_path(grid, [](double t) { return -3.0 * std::sin(4 * t); });
    const double sp = holder_seminorm(p, 0.45).seminorm;
    const double sq = holder_seminorm(q, 0.45).seminorm;
    CHECK(sq == doctest::Approx(3.0 * sp).epsilon(1e-12));
}

TEST_CASE("seminorm is nondecreasing in alpha when all gaps are <= 1") {
    // With gaps below one, (t-s)^alpha shrinks as alpha grows, so the
    // quotient grows: ||X||_a <= ||X||_a' for a <= a'.
    auto grid = Grid::uniform(64, 1.0);
    GridPath<Vec> p = test::scalar_path(grid, [](double t) { return std::sin(3 * t) + t; });
    double prev = 0.0;
    for (double alpha : {0.35, 0.4, 0.45, 0.5, 0.75, 1.0}) {
        const double s = holder_seminorm(p, alpha).seminorm;
        CHECK(s >= prev - 1e-12);
        prev = s;
    }
}

TEST_CASE("dyadic policy underestimates all-pairs and hits monotone maxima") {
    auto grid = Grid::uniform(1024, 1.0);
    GridPath<Vec> p = test::scalar_path(grid, [](double t) { return std::cos(9 * t); });
    PairBudget all;
    all.policy = PairBudget::Policy::AllPairs;
    PairBudget dy;
    dy.policy = PairBudget::Policy::Dyadic;
    const double sa = holder_seminorm(p, 0.45, all).seminorm;
    const double sd = holder_seminorm(p, 0.45, dy).seminorm;
    CHECK(sd <= sa + 1e-15);
    CHECK(sd >= 0.5 * sa);  // dyadic pairs stay within a constant factor here

    GridPath<Vec> lin = test::scalar_path(grid, [](double t) { return t; });
    CHECK(holder_seminorm(lin, 0.5, dy).seminorm ==
          doctest::Approx(holder_seminorm(lin, 0.5, all).seminorm).epsilon(1e-13));

    PairBudget to_resolve;
    CHECK(to_resolve.resolved(1024) == PairBudget::Policy::AllPairs);
    CHECK(to_resolve.resolved(8192) == PairBudget::Policy::Dyadic);
}

TEST_CASE("parallel scans are deterministic across thread counts") {
    auto grid = Grid::uniform(512, 1.0);
    GridPath<Vec> p = test::scalar_path(grid, [](double t) { return std::sin(11 * t); });
    PairBudget one;
    one.threads = 1;
    PairBudget four;
    four.threads = 4;
    HolderReport a = holder_seminorm(p, 0.45, one);
    HolderReport b = holder_seminorm(p, 0.45, four);
    CHECK(a.seminorm == b.seminorm);
    CHECK(a.argmax_i == b.argmax_i);
    CHECK(a.argmax_j == b.argmax_j);
}

TEST_CASE("holder quotient avoids pow underflow at tiny gaps") {
    const double q = holder_quotient(1e-20, 1e-300, 0.5);
    CHECK(std::isfinite(q));
    CHECK(q == doctest::Approx(1e-20 * std::pow(1e-300, -0.5)).epsilon(1e-12));
    CHECK(holder_quotient(0.0, 1e-300, 0.5) == 0.0);
}

TEST_SUITE_END();
