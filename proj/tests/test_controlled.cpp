#include <cmath>

#include "doctest.h"
#include "rrp/controlled.hpp"
#include "test_helpers.hpp"

using namespace rrp;

TEST_SUITE_BEGIN("controlled_path");

TEST_CASE("remainder examples") {
    auto base = test::line_base(64);

    // Y = (X, 1): the remainder vanishes identically.
    SolutionPath identity = test::scalar_controlled(
        base, [](double t) { return t; }, [](double) { return 1.0; });
    CounterRng rng(3, "rem");
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t i = rng.next_u64() % 64;
        std::size_t j = i + rng.next_u64() % (65 - i);
        CHECK(identity.remainder(i, j).norm() <= 1e-16);
    }

    // Y = t^2, Y' = 2t: R_{s,t} = (t-s)^2.
    SolutionPath sq = test::scalar_controlled(
        base, [](double t) { return t * t; }, [](double t) { return 2.0 * t; });
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t i = rng.next_u64() % 64;
        std::size_t j = i + 1 + rng.next_u64() % (64 - i);
        const double g = base->grid().gap(i, j);
        CHECK(sq.remainder(i, j)[0] == doctest::Approx(g * g).epsilon(1e-12));
    }
    CHECK(sq.remainder(5, 5).norm() == 0.0);

    // Y' = 0 leaves the bare increment.
    SolutionPath bare = test::scalar_controlled(
        base, [](double t) { return std::sin(t); }, [](double) { return 0.0; });
    CHECK(bare.remainder(0, 64)[0] == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
}

TEST_CASE("remainder reconstruction and cocycle identities") {
    auto base = std::make_shared<const ReducedRoughPath>(geometric_lift(
        test::scalar_path(Grid::uniform(128, 1.0), [](double t) { return std::sin(3 * t); }),
        0.45));
    SolutionPath c = test::scalar_controlled(
        base, [](double t) { return std::cos(2 * t); }, [](double t) { return t - 0.3; });
    CounterRng rng(5, "cocycle");
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t i = rng.next_u64() % 126;
        std::size_t k = i + 2 + rng.next_u64() % (128 - i - 1);
        std::size_t j = i + 1 + rng.next_u64() % (k - i - 1);
        Vec recon = apply_linmap(c.y_prime().value(i), base->x_increment(i, k)) +
                    c.remainder(i, k);
        CHECK((c.y().increment(i, k) - recon).norm() <= 1e-14);

        // R_{ik} - R_{ij} - R_{jk} = (Y'_j - Y'_i) X_{jk}
        Vec lhs = c.remainder(i, k) - c.remainder(i, j) - c.remainder(j, k);
        Vec rhs = apply_linmap(c.y_prime().value(j) - c.y_prime().value(i),
                               base->x_increment(j, k));
        CHECK((lhs - rhs).norm() <= 1e-12);
    }
}

TEST_CASE("controlled norms") {
    auto base = test::line_base(64);

    SolutionPath constant = test::scalar_controlled(
        base, [](double) { return -2.0; }, [](double) { return 0.0; });
    ControlledNorms nc = controlled_norms(constant);
    CHECK(nc.seminorm == 0.0);
    CHECK(nc.full_norm == 2.0);

    SolutionPath identity = test::scalar_controlled(
        base, [](double t) { return 0.7 + t; }, [](double) { return 1.0; });
    ControlledNorms ni = controlled_norms(identity);
    CHECK(ni.y_prime_alpha == 0.0);
    CHECK(ni.remainder_2alpha <= 1e-15);
    CHECK(ni.full_norm == doctest::Approx(0.7 + 1.0).epsilon(1e-15));

    // Y = t^2, Y' = 2t at alpha = 1/2: ||Y'|| = 2, ||R||_1 = 1.
    SolutionPath sq = test::scalar_controlled(
        base, [](double t) { return t * t; }, [](double t) { return 2.0 * t; });
    ControlledNorms ns = controlled_norms(sq);
    CHECK(ns.y_prime_alpha == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(ns.remainder_2alpha == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ns.seminorm == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(ns.full_norm == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("composition with smooth functions") {
    auto base = test::line_base(64);
    SolutionPath c = test::scalar_controlled(
        base, [](double t) { return t; }, [](double) { return 1.0; });

    SolutionPath same = compose(make_identity_vector(1), c);
    CHECK(sup_distance(same, c) <= 1e-16);

    SolutionPath sq = compose(make_square_scalar(), c);
    for (std::size_t i = 0; i <= 64; ++i) {
        const double t = base->grid().time(i);
        CHECK(sq.y().value(i)[0] == doctest::Approx(t * t).epsilon(1e-15));
        CHECK(sq.y_prime().value(i).at(0, 0) == doctest::Approx(2.0 * t).epsilon(1e-15));
    }

    SolutionPath constant = compose(make_constant_vector(Vec{3.0}), c);
    CHECK(constant.y().value(32)[0] == 3.0);
    CHECK(constant.y_prime().value(32).norm() == 0.0);
}

TEST_CASE("composition chain rule") {
    auto base = test::line_base(128);
    SolutionPath c = test::scalar_controlled(
        base, [](double t) { return t; }, [](double) { return 1.0; });
    SolutionPath inner = compose(make_square_scalar(), c);    // (t^2, 2t)
    SolutionPath outer_path = compose(make_sin_vector(), inner);
    for (std::size_t i = 0; i <= 128; ++i) {
        const double t = base->grid().time(i);
        CHECK(outer_path.y().value(i)[0] ==
              doctest::Approx(std::sin(t * t)).epsilon(1e-12));
        CHECK(outer_path.y_prime().value(i).at(0, 0) ==
              doctest::Approx(std::cos(t * t) * 2.0 * t).epsilon(1e-10));
    }
}

TEST_CASE("composition norm bound dominates") {
    auto base = test::line_base(64);
    SolutionPath c = test::scalar_controlled(
        base, [](double t) { return t; }, [](double) { return 1.0; });

    SolutionPath fy = compose(make_square_scalar(), c);
    const double measured = controlled_norms(fy).seminorm;
    const ControlledNorms cn = controlled_norms(c);
    const double m_cap = std::max(1.0, c.y_prime().value(0).norm() + cn.seminorm);
    const double bound = compose_norm_bound(make_square_scalar(), c, m_cap);
    CHECK(std::isfinite(bound));
    CHECK(bound > 0.0);
    CHECK(bound >= measured);

    // The bound is linear in ||F||_{C^2_b}: doubling the function doubles it.
    SmoothFunction::Init twice;
    twice.name = "double_square";
    twice.domain_dim = 1;
    twice.codomain = SmoothFunction::Codomain::Vector;
    twice.out_rows = 1;
    twice.declared_order = 3;
    twice.evaluators[0] = [](const Vec& y) { return DenseTensor({1}, {2.0 * y[0] * y[0]}); };
    twice.evaluators[1] = [](const Vec& y) { return DenseTensor({1, 1}, {4.0 * y[0]}); };
    twice.evaluators[2] = [](const Vec&) { return DenseTensor({1, 1, 1}, {4.0}); };
    twice.evaluators[3] = [](const Vec&) { return DenseTensor({1, 1, 1, 1}, {0.0}); };
    const double bound2 = compose_norm_bound(SmoothFunction(std::move(twice)), c, m_cap);
    CHECK(bound2 == doctest::Approx(2.0 * bound).epsilon(1e-12));

    // A constant function composes to seminorm zero, below any bound.
    SolutionPath k = compose(make_constant_vector(Vec{5.0}), c);
    CHECK(controlled_norms(k).seminorm == 0.0);

    CHECK_THROWS_AS(compose_norm_bound(make_square_scalar(), c, 0.5),
                    BoundPreconditionViolated);
    SolutionPath rough = test::scalar_controlled(
        base, [](double t) { return 10.0 * t * t; }, [](double t) { return 20.0 * t; });
    CHECK_THROWS_AS(compose_norm_bound(make_square_scalar(), rough, 1.0),
                    BoundPreconditionViolated);
}

TEST_CASE("leibniz product") {
    auto base = test::line_base(64);
    SolutionPath a = test::scalar_controlled(
        base, [](double t) { return t; }, [](double) { return 1.0; });

    // Unit of the product.
    SolutionPath one = test::scalar_controlled(
        base, [](double) { return 1.0; }, [](double) { return 0.0; });
    CHECK(sup_distance(leibniz_product(a, one), a) <= 1e-16);

    // (t, 1)^2 = (t^2, 2t), matching the composition with y^2.
    SolutionPath prod = leibniz_product(a, a);
    SolutionPath sq = compose(make_square_scalar(), a);
    CHECK(sup_distance(prod, sq) <= 1e-15);

    // Zero annihilates.
    SolutionPath zero = test::scalar_controlled(
        base, [](double) { return 0.0; }, [](double) { return 0.0; });
    CHECK(sup_distance(leibniz_product(zero, a), zero) <= 1e-16);
}

TEST_CASE("leibniz norm bound dominates") {
    auto base = test::line_base(64);
    SolutionPath a = test::scalar_controlled(
        base, [](double t) { return t; }, [](double) { return 1.0; });
    const double measured = controlled_norms(leibniz_product(a, a)).seminorm;
    CHECK(measured == doctest::Approx(3.0).epsilon(1e-12));
    const double bound = leibniz_norm_bound(a, a);
    CHECK(bound >= measured);
    // Assembled proof-chain constant at T = 1, ||X||_{1/2} = 1: w = 3,
    // factor = 4*3*2 + 2*2*3 + 9 = 45, and each initial-data factor is 1.
    CHECK(bound == doctest::Approx(45.0).epsilon(1e-12));

    // Bilinear scaling: scaling one factor scales product and bound alike.
    SolutionPath a3 = test::scalar_controlled(
        base, [](double t) { return 3.0 * t; }, [](double) { return 3.0; });
    CHECK(controlled_norms(leibniz_product(a3, a)).seminorm ==
          doctest::Approx(3.0 * measured).epsilon(1e-12));
    CHECK(leibniz_norm_bound(a3, a) == doctest::Approx(3.0 * bound).epsilon(1e-12));
}

TEST_CASE("first-level regularity bound dominates") {
    // ||Y||_a <= T^a ||R^Y||_{2a} + ||Y'||_inf ||X||_a, with measured norms,
    // for paths genuinely controlled by their base.
    CounterRng rng(23, "flb");
    for (int rep = 0; rep < 10; ++rep) {
        const double w = 1.0 + 5.0 * rng.next_unit();
        auto grid = Grid::uniform(128, 1.0);
        auto base = std::make_shared<const ReducedRoughPath>(geometric_lift(
            test::scalar_path(grid, [&](double t) { return std::sin(w * t); }), 0.45));
        // Y = g(X), Y' = g'(X): a bona fide controlled pair.
        std::vector<Vec> yv;
        std::vector<LinMap> ypv;
        for (std::size_t i = 0; i <= 128; ++i) {
            const double x = base->path().value(i)[0];
            yv.push_back(Vec{std::tanh(x)});
            const double t = std::tanh(x);
            ypv.push_back(LinMap(1, 1, std::vector<double>{1.0 - t * t}));
        }
        SolutionPath c(base, GridPath<Vec>(grid, yv), GridPath<LinMap>(grid, ypv));
        const double measured = holder_seminorm(c.y(), 0.45).seminorm;
        CHECK(first_level_alpha_bound(c) >= measured - 1e-12);

        // The sup-norm bound also holds for the derivative path.
        CHECK(sup_bound_from_holder(c.y_prime(), 0.45) >= sup_norm(c.y_prime()) - 1e-12);
    }
}

TEST_CASE("mixing bases is a hard error") {
    auto b1 = test::line_base(32);
    auto b2 = test::line_base(32);
    SolutionPath c1 = test::scalar_controlled(b1, [](double t) { return t; },
                                              [](double) { return 1.0; });
    SolutionPath c2 = test::scalar_controlled(b2, [](double t) { return t; },
                                              [](double) { return 1.0; });
    CHECK_THROWS_AS(leibniz_product(c1, c2), BaseMismatch);
    CHECK_THROWS_AS(sup_distance(c1, c2), BaseMismatch);

    auto other_grid = Grid::uniform(16, 1.0);
    CHECK_THROWS_AS(SolutionPath(b1, test::scalar_path(other_grid, [](double t) { return t; }),
                                 GridPath<LinMap>(other_grid,
                                                  std::vector<LinMap>(17, LinMap(1, 1)))),
                    GridMismatch);
}

TEST_CASE("limits of Cauchy sequences stay controlled") {
    // Y_n = Y + 2^{-n} P converges in the full norm; the componentwise limit
    // satisfies the same invariants with the same norms.
    auto base = test::line_base(64);
    SolutionPath y = test::scalar_controlled(
        base, [](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); });
    ControlledNorms limit_norms = controlled_norms(y);

    double prev_gap = -1.0;
    for (int n = 1; n <= 8; ++n) {
        const double eps = std::pow(2.0, -n);
        SolutionPath yn = test::scalar_controlled(
            base, [&](double t) { return std::cos(t) + eps * std::sin(2 * t); },
            [&](double t) { return -std::sin(t) + eps * 2.0 * std::cos(2 * t); });
        ControlledNorms nn = controlled_norms(yn);
        CHECK(std::isfinite(nn.full_norm));
        // Distance to the limit in the full norm halves with each term.
        SolutionPath diff = test::scalar_controlled(
            base, [&](double t) { return eps * std::sin(2 * t); },
            [&](double t) { return eps * 2.0 * std::cos(2 * t); });
        const double gap = controlled_norms(diff).full_norm;
        if (prev_gap > 0.0) CHECK(gap <= 0.55 * prev_gap);
        prev_gap = gap;
        CHECK(std::abs(nn.full_norm - limit_norms.full_norm) <= 10.0 * gap);
    }
}

TEST_SUITE_END();
