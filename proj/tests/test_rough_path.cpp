#include <cmath>

#include "doctest.h"
#include "rrp/drivers.hpp"
#include "rrp/rough_path.hpp"
#include "test_helpers.hpp"

using namespace rrp;

TEST_SUITE_BEGIN("rough_path");

TEST_CASE("second level composes through the Chen relation") {
    auto grid = Grid::make({0.0, 0.5, 1.0});
    auto r = geometric_lift(test::scalar_path(grid, [](double t) { return t; }), 0.5);

    // Stored step values are returned exactly for adjacent pairs.
    CHECK(r.second_level(0, 1).at(0, 0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(r.second_level(1, 2).at(0, 0) == doctest::Approx(0.125).epsilon(1e-15));
    // 0.125 + 0.125 + 0.5 * 0.5 / ... = 0.5 = (1)^2 / 2.
    CHECK(r.second_level(0, 2).at(0, 0) == doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(r.second_level(1, 1), IndexOutOfRange);
    CHECK_THROWS_AS(r.second_level(0, 3), IndexOutOfRange);
}

TEST_CASE("pair values satisfy the definitional fold identity") {
    auto grid = Grid::uniform(128, 1.0);
    auto r = geometric_lift(sample_curve("lissajous", {3.0, 2.0}, grid), 0.45);
    CounterRng rng(23, "chen-fold");
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t i = rng.next_u64() % 126;
        std::size_t k = i + 2 + rng.next_u64() % (128 - i - 1);
        std::size_t j = i + 1 + rng.next_u64() % (k - i - 1);
        SymTensor2 lhs = r.second_level(i, k);
        SymTensor2 rhs = r.second_level(i, j) + r.second_level(j, k) +
                         sym_outer(r.x_increment(i, j), r.x_increment(j, k));
        CHECK((lhs - rhs).norm() <= 1e-13);
        // Prefix evaluation agrees with the left fold.
        CHECK((lhs - r.second_level_folded(i, k)).norm() <= 1e-12);
    }
}

TEST_CASE("chen defect is roundoff-level for composed lifts") {
    auto grid = Grid::uniform(256, 1.0);
    std::vector<ReducedRoughPath> lifts;
    lifts.push_back(geometric_lift(sample_curve("circle", {}, grid), 0.5));
    lifts.push_back(geometric_lift(gen_fbm({0.45, 99, 2}, grid).path, 0.4));
    lifts.push_back(perturbed_lift(lifts[1], ito_correction(grid, 2)));
    CounterRng rng(31, "defect");
    for (const auto& r : lifts) {
        double worst = 0.0;
        for (int rep = 0; rep < 300; ++rep) {
            std::size_t i = rng.next_u64() % 254;
            std::size_t k = i + 2 + rng.next_u64() % (256 - i - 1);
            std::size_t j = i + 1 + rng.next_u64() % (k - i - 1);
            worst = std::max(worst, r.chen_defect(i, j, k));
        }
        CHECK(worst <= 1e-12);
    }
    CHECK_THROWS_AS(lifts[0].chen_defect(3, 3, 5), NonMonotoneTriple);
    CHECK_THROWS_AS(lifts[0].chen_defect(5, 4, 6), NonMonotoneTriple);
}

TEST_CASE("geometric lift reproduces the closed form at every pair") {
    auto grid = Grid::uniform(128, 1.0);
    auto r = geometric_lift(sample_curve("circle", {}, grid), 0.5);
    CounterRng rng(41, "geo");
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t i = rng.next_u64() % 128;
        std::size_t j = i + 1 + rng.next_u64() % (128 - i);
        Vec dx = r.x_increment(i, j);
        CHECK((r.second_level(i, j) - 0.5 * sym_outer(dx, dx)).norm() <= 1e-12);
        // trace of the circle lift is |X_{s,t}|^2 / 2
        const SymTensor2 s = r.second_level(i, j);
        CHECK(s.at(0, 0) + s.at(1, 1) ==
              doctest::Approx(0.5 * dx.norm() * dx.norm()).epsilon(1e-10));
    }
    // Constant path lifts to the zero enhancement.
    auto c = geometric_lift(test::scalar_path(grid, [](double) { return 1.0; }), 0.5);
    CHECK(rrp_norm(c).total == 0.0);
}

TEST_CASE("perturbed lift adds increments of phi") {
    auto grid = Grid::uniform(64, 1.0);
    auto base = geometric_lift(test::scalar_path(grid, [](double t) { return t; }), 0.5);

    // phi = 0 keeps the path identical.
    std::vector<SymTensor2> zeros(65, SymTensor2(1));
    auto same = perturbed_lift(base, GridPath<SymTensor2>(grid, zeros));
    CHECK(rrp_distance(base, same) == 0.0);

    // phi_t = -t/2 turns S_{s,t} = (t-s)^2/2 into (t-s)^2/2 - (t-s)/2.
    auto ito = perturbed_lift(base, ito_correction(grid, 1));
    CounterRng rng(43, "pert");
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t i = rng.next_u64() % 64;
        std::size_t j = i + 1 + rng.next_u64() % (64 - i);
        const double g = grid->gap(i, j);
        CHECK(ito.second_level(i, j).at(0, 0) ==
              doctest::Approx(0.5 * g * g - 0.5 * g).epsilon(1e-12));
        CHECK(ito.chen_defect(0, std::max<std::size_t>(1, i), 64) <= 1e-12);
    }

    auto wrong_grid = Grid::uniform(32, 1.0);
    std::vector<SymTensor2> w(33, SymTensor2(1));
    CHECK_THROWS_AS(perturbed_lift(base, GridPath<SymTensor2>(wrong_grid, w)), GridMismatch);
}

TEST_CASE("perturbations compose additively") {
    auto grid = Grid::uniform(32, 1.0);
    auto base = geometric_lift(sample_curve("circle", {}, grid), 0.5);
    CounterRng rng(47, "phi");
    std::vector<SymTensor2> p1, p2, ps;
    for (std::size_t i = 0; i <= 32; ++i) {
        SymTensor2 a = symmetrize(test::random_tensor(rng, 2, 0.4));
        SymTensor2 b = symmetrize(test::random_tensor(rng, 2, 0.4));
        p1.push_back(a);
        p2.push_back(b);
        ps.push_back(a + b);
    }
    auto lhs = perturbed_lift(perturbed_lift(base, GridPath<SymTensor2>(grid, p1)),
                              GridPath<SymTensor2>(grid, p2));
    auto rhs = perturbed_lift(base, GridPath<SymTensor2>(grid, ps));
    CHECK(rrp_distance(lhs, rhs) <= 1e-14);
}

TEST_CASE("norms of the canonical line example") {
    auto grid = Grid::uniform(64, 1.0);
    auto r = geometric_lift(test::scalar_path(grid, [](double t) { return t; }), 0.5);
    RrpNorms n = rrp_norm(r);
    CHECK(n.x_alpha == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(n.s_2alpha == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(n.total == doctest::Approx(1.5).epsilon(1e-13));

    // Scaling: X -> cX scales the first level by |c| and the geometric
    // second level by c^2.
    const double c = -2.0;
    auto rc = geometric_lift(test::scalar_path(grid, [&](double t) { return c * t; }), 0.5);
    RrpNorms nc = rrp_norm(rc);
    CHECK(nc.x_alpha == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(nc.s_2alpha == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("distance axioms") {
    auto grid = Grid::uniform(64, 1.0);
    auto a = geometric_lift(sample_curve("circle", {}, grid), 0.5);
    auto b = perturbed_lift(a, ito_correction(grid, 2));
    auto c = geometric_lift(sample_curve("lissajous", {2.0, 1.0}, grid), 0.5);

    CHECK(rrp_distance(a, a) == 0.0);
    CHECK(rrp_distance(a, b) == doctest::Approx(rrp_distance(b, a)).epsilon(1e-15));
    CHECK(rrp_distance(a, c) <= rrp_distance(a, b) + rrp_distance(b, c) + 1e-12);

    // Distance to the trivial path (constant, 0) is the norm.
    std::vector<SymTensor2> zeros(65, SymTensor2(2));
    auto trivial = ReducedRoughPath(
        0.5, GridPath<Vec>(grid, std::vector<Vec>(65, Vec{1.0, 0.0})),
        std::vector<SymTensor2>(64, SymTensor2(2)));
    CHECK(rrp_distance(a, trivial) == doctest::Approx(rrp_norm(a).total).epsilon(1e-13));

    auto other_alpha = geometric_lift(sample_curve("circle", {}, grid), 0.45);
    CHECK_THROWS_AS(rrp_distance(a, other_alpha), ExponentMismatch);
    auto other_grid = geometric_lift(sample_curve("circle", {}, Grid::uniform(32, 1.0)), 0.5);
    CHECK_THROWS_AS(rrp_distance(a, other_grid), GridMismatch);
}

TEST_CASE("slices shift times and preserve increments") {
    auto grid = Grid::uniform(64, 2.0);
    auto r = geometric_lift(sample_curve("lissajous", {3.0, 2.0}, grid), 0.45);
    auto s = slice(r, 16, 48);
    CHECK(s.grid().points() == 33);
    CHECK(s.grid().time(0) == 0.0);
    CHECK(s.grid().horizon() == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t k = 0; k < 32; ++k) {
        CHECK((s.x_increment(0, k + 1) - r.x_increment(16, 17 + k)).norm() == 0.0);
        CHECK((s.second_level(0, k + 1) - r.second_level(16, 17 + k)).norm() <= 1e-13);
    }
}

TEST_CASE("construction validates the regime and shapes") {
    auto grid = Grid::uniform(4, 1.0);
    GridPath<Vec> x = test::scalar_path(grid, [](double t) { return t; });
    CHECK_THROWS_AS(geometric_lift(x, 0.3), InvalidExponent);
    CHECK_THROWS_AS(geometric_lift(x, 0.6), InvalidExponent);
    CHECK_THROWS_AS(ReducedRoughPath(0.5, x, std::vector<SymTensor2>(3, SymTensor2(1))),
                    GridMismatch);
    CHECK_THROWS_AS(ReducedRoughPath(0.5, x, std::vector<SymTensor2>(4, SymTensor2(2))),
                    DimensionMismatch);
}

TEST_SUITE_END();
