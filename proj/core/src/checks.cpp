#include "rrp/checks.hpp"

#include <cmath>
#include <sstream>

#include "rrp/drivers.hpp"
#include "rrp/integral.hpp"
#include "rrp/io.hpp"
#include "rrp/solver.hpp"

namespace rrp {

namespace {

struct Suite {
    std::uint64_t seed;
    PairBudget budget;
    std::vector<CheckResult> results;

    void record(const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
    }
    void record_max(const std::string& name, double observed, double tol) {
        std::ostringstream ss;
        ss << "max " << format_double(observed) << " tol " << format_double(tol);
        record(name, observed <= tol, ss.str());
    }
};

Vec random_vec(CounterRng& rng, std::size_t d, double scale = 1.0) {
    Vec v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = scale * (2.0 * rng.next_unit() - 1.0);
    return v;
}

Tensor2 random_tensor(CounterRng& rng, std::size_t d, double scale = 1.0) {
    Tensor2 t(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) t.at(i, j) = scale * (2.0 * rng.next_unit() - 1.0);
    return t;
}

void tensor_suite(Suite& s) {
    CounterRng rng(s.seed, "check/tensor");
    double worst_idem = 0.0, worst_lin = 0.0, worst_pair = 0.0, worst_outer = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 1 + rng.next_u64() % 4;
        Tensor2 t1 = random_tensor(rng, d), t2 = random_tensor(rng, d);
        SymTensor2 once = symmetrize(t1);
        worst_idem = std::max(worst_idem, (symmetrize(once.as_tensor()) - once).norm());
        const double a = 2.0 * rng.next_unit() - 1.0, b = 2.0 * rng.next_unit() - 1.0;
        worst_lin = std::max(worst_lin, (symmetrize(a * t1 + b * t2) -
                                         (a * symmetrize(t1) + b * symmetrize(t2)))
                                            .norm());
        BilinMap bm(2, d);
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    bm.at(k, i, j) = 2.0 * rng.next_unit() - 1.0;
        SymTensor2 sym = symmetrize(t2);
        worst_pair = std::max(
            worst_pair, (pair_bilinear(bm, sym) - pair_bilinear(bm.inner_symmetrized(), sym)).norm());
        Vec u = random_vec(rng, d), v = random_vec(rng, d);
        worst_outer = std::max(worst_outer, (outer(u, v).transposed() - outer(v, u)).norm());
    }
    s.record_max("tensor/symmetrize-idempotent", worst_idem, 0.0);
    s.record_max("tensor/symmetrize-linear", worst_lin, 1e-14);
    s.record_max("tensor/pair-kills-antisymmetric", worst_pair, 1e-14);
    s.record_max("tensor/outer-transpose", worst_outer, 0.0);
}

void path_grid_suite(Suite& s) {
    CounterRng rng(s.seed, "check/path_grid");
    auto grid = Grid::uniform(128, 1.0);
    std::vector<Vec> vals;
    for (std::size_t i = 0; i <= 128; ++i) {
        const double t = grid->time(i);
        vals.push_back(Vec{std::sin(3.0 * t) + 0.3 * t, std::cos(2.0 * t)});
    }
    GridPath<Vec> p(grid, vals);

    double worst_add = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t i = rng.next_u64() % 127, k = i + 1 + rng.next_u64() % (128 - i);
        std::size_t j = i + rng.next_u64() % (k - i + 1);
        worst_add = std::max(
            worst_add, (p.increment(i, k) - p.increment(i, j) - p.increment(j, k)).norm());
    }
    s.record_max("path_grid/increment-additivity", worst_add, 1e-15);

    const double alpha = 0.45;
    HolderReport rep = holder_seminorm(p, alpha, s.budget);
    double worst_bound = 0.0;
    for (std::size_t i = 0; i < p.points(); ++i)
        for (std::size_t j = i + 1; j < p.points(); ++j) {
            const double q = holder_quotient(p.increment(i, j).norm(), grid->gap(i, j), alpha);
            worst_bound = std::max(worst_bound, q - rep.seminorm);
        }
    s.record_max("path_grid/seminorm-upper-bound", worst_bound, 1e-12 * std::max(1.0, rep.seminorm));

    const double bound = sup_bound_from_holder(p, alpha, s.budget);
    s.record_max("path_grid/sup-bound-dominates", sup_norm(p) - bound, 1e-12);

    std::vector<Vec> scaled;
    scaled.reserve(vals.size());
    for (const Vec& v : vals) scaled.push_back(-2.5 * v);
    GridPath<Vec> q(grid, scaled);
    const double lhs = holder_seminorm(q, alpha, s.budget).seminorm;
    s.record_max("path_grid/seminorm-scaling", std::abs(lhs - 2.5 * rep.seminorm),
                 1e-12 * std::max(1.0, lhs));
}

void rough_path_suite(Suite& s) {
    CounterRng rng(s.seed, "check/rough_path");
    const std::size_t n = 512;
    auto grid = Grid::uniform(n, 1.0);

    std::vector<ReducedRoughPath> lifts;
    lifts.push_back(geometric_lift(sample_curve("circle", {}, grid), 0.5));
    lifts.push_back(geometric_lift(sample_curve("lissajous", {3.0, 2.0}, grid), 0.45));
    {
        std::vector<double> nt{0.0, 0.3, 0.7, 1.0};
        std::vector<Vec> nv{Vec{0.0}, Vec{0.7}, Vec{-0.2}, Vec{0.5}};
        lifts.push_back(geometric_lift(sample_piecewise_linear(nt, nv, grid), 0.5));
    }
    lifts.push_back(geometric_lift(gen_fbm({0.45, s.seed + 1, 2}, grid).path, 0.4));
    lifts.push_back(perturbed_lift(lifts.back(), ito_correction(grid, 2)));

    double worst_chen = 0.0;
    for (const auto& r : lifts) {
        for (int rep = 0; rep < 200; ++rep) {
            std::size_t i = rng.next_u64() % (n - 1);
            std::size_t k = i + 2 + rng.next_u64() % (n - i - 1);
            std::size_t j = i + 1 + rng.next_u64() % (k - i - 1);
            worst_chen = std::max(worst_chen, r.chen_defect(i, j, k));
        }
    }
    s.record_max("rough_path/chen-defect", worst_chen, 1e-10);

    const auto& geo = lifts[0];
    double worst_geo = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t i = rng.next_u64() % n;
        std::size_t j = i + 1 + rng.next_u64() % (n - i);
        Vec dx = geo.x_increment(i, j);
        worst_geo = std::max(worst_geo,
                             (geo.second_level(i, j) - 0.5 * sym_outer(dx, dx)).norm());
    }
    s.record_max("rough_path/geometric-identity", worst_geo, 1e-12);

    // Perturbation additivity on a small grid.
    auto small = Grid::uniform(64, 1.0);
    auto base = geometric_lift(sample_curve("circle", {}, small), 0.5);
    std::vector<SymTensor2> phi1v, phi2v, sumv;
    CounterRng prng = rng.fork("phi");
    for (std::size_t i = 0; i <= 64; ++i) {
        SymTensor2 a = symmetrize(random_tensor(prng, 2, 0.3));
        SymTensor2 b = symmetrize(random_tensor(prng, 2, 0.3));
        phi1v.push_back(a);
        phi2v.push_back(b);
        sumv.push_back(a + b);
    }
    GridPath<SymTensor2> phi1(small, phi1v), phi2(small, phi2v), phisum(small, sumv);
    auto twice = perturbed_lift(perturbed_lift(base, phi1), phi2);
    auto once = perturbed_lift(base, phisum);
    double worst_pert = 0.0;
    for (std::size_t i = 0; i < 64; ++i)
        worst_pert = std::max(
            worst_pert, (twice.second_level_steps()[i] - once.second_level_steps()[i]).norm());
    s.record_max("rough_path/perturbation-additivity", worst_pert, 1e-14);

    // Distance axioms on three lifts sharing grid and alpha.
    auto a0 = geometric_lift(sample_curve("circle", {}, small), 0.5);
    auto b0 = perturbed_lift(a0, ito_correction(small, 2));
    auto c0 = geometric_lift(sample_curve("lissajous", {2.0, 1.0}, small), 0.5);
    const double dab = rrp_distance(a0, b0, s.budget);
    const double dba = rrp_distance(b0, a0, s.budget);
    const double dac = rrp_distance(a0, c0, s.budget);
    const double dbc = rrp_distance(b0, c0, s.budget);
    const double daa = rrp_distance(a0, a0, s.budget);
    bool ok = std::abs(dab - dba) <= 1e-12 && daa <= 1e-12 && dac <= dab + dbc + 1e-12;
    std::ostringstream det;
    det << "sym " << format_double(std::abs(dab - dba)) << " id " << format_double(daa)
        << " tri-slack " << format_double(dab + dbc - dac);
    s.record("rough_path/distance-axioms", ok, det.str());
}

void controlled_suite(Suite& s) {
    CounterRng rng(s.seed, "check/controlled");
    const std::size_t n = 256;
    auto grid = Grid::uniform(n, 1.0);
    auto base = std::make_shared<const ReducedRoughPath>(
        geometric_lift(sample_curve("line", {1.0}, grid), 0.5));

    // Y_t = t^2, Y' = 2t over X_t = t.
    std::vector<Vec> y;
    std::vector<LinMap> yp;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = grid->time(i);
        y.push_back(Vec{t * t});
        yp.push_back(LinMap(1, 1, {2.0 * t}));
    }
    SolutionPath c(base, GridPath<Vec>(grid, y), GridPath<LinMap>(grid, yp));

    double worst_recon = 0.0, worst_cocycle = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t i = rng.next_u64() % (n - 1);
        std::size_t k = i + 2 + rng.next_u64() % (n - i - 1);
        std::size_t j = i + 1 + rng.next_u64() % (k - i - 1);
        worst_recon = std::max(
            worst_recon,
            (c.y().increment(i, k) -
             (apply_linmap(c.y_prime().value(i), base->x_increment(i, k)) + c.remainder(i, k)))
                .norm());
        Vec lhs = c.remainder(i, k) - c.remainder(i, j) - c.remainder(j, k);
        Vec rhs = apply_linmap(c.y_prime().value(j) - c.y_prime().value(i),
                               base->x_increment(j, k));
        worst_cocycle = std::max(worst_cocycle, (lhs - rhs).norm());
    }
    s.record_max("controlled/remainder-reconstruction", worst_recon, 1e-14);
    s.record_max("controlled/remainder-cocycle", worst_cocycle, 1e-12);

    // Chain rule at value and Gubinelli-derivative levels.
    SmoothFunction sq = make_square_scalar();
    SmoothFunction sinv = make_sin_vector();
    SolutionPath inner = compose(sq, c);
    SolutionPath lhs_path = compose(sinv, inner);
    double worst_val = 0.0, worst_der = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = grid->time(i);
        worst_val = std::max(worst_val,
                             std::abs(lhs_path.y().value(i)[0] - std::sin(t * t * t * t)));
        const double expect = std::cos(t * t * t * t) * 2.0 * (t * t) * 2.0 * t;
        worst_der = std::max(worst_der, std::abs(lhs_path.y_prime().value(i).at(0, 0) - expect));
    }
    s.record_max("controlled/chain-rule-values", worst_val, 1e-12);
    s.record_max("controlled/chain-rule-derivative", worst_der, 1e-10);

    // Bound domination smoke: composition and product norm bounds.
    ControlledNorms cn = controlled_norms(c, s.budget);
    const double m_cap = std::max(1.0, c.y_prime().value(0).norm() + cn.seminorm);
    SolutionPath fy = compose(sq, c);
    const double measured = controlled_norms(fy, s.budget).seminorm;
    const double bound = compose_norm_bound(sq, c, m_cap, s.budget);
    s.record_max("controlled/compose-bound", measured - bound, 0.0);

    SolutionPath prod = leibniz_product(c, c);
    const double pm = controlled_norms(prod, s.budget).seminorm;
    const double pb = leibniz_norm_bound(c, c, s.budget);
    s.record_max("controlled/leibniz-bound", pm - pb, 0.0);
}

void function_suite(Suite& s) {
    std::vector<SmoothFunction> fs;
    fs.push_back(make_sin_field());
    fs.push_back(make_tanh_field());
    fs.push_back(make_damped_poly_field());
    fs.push_back(make_linear_field_1d(1.0));
    fs.push_back(make_constant_field(LinMap(1, 2, {0.3, -0.7})));
    fs.push_back(make_rotation_field(2, 1.0));
    fs.push_back(make_sin_matrix_field(2, 2, s.seed + 3));
    fs.push_back(make_tanh_matrix_field(2, 2, s.seed + 4));
    fs.push_back(make_square_scalar());
    fs.push_back(make_identity_vector(2));

    double worst1 = 0.0, worst2 = 0.0;
    for (const auto& f : fs) {
        auto probes = halton_probes(ProbeBox::centered(Vec(f.domain_dim()), 1.5), 16);
        worst1 = std::max(worst1, fd_check(f, 1, probes, 1e-5));
        worst2 = std::max(worst2, fd_check(f, 2, probes, 1e-5));
    }
    s.record_max("function/fd-check-order1", worst1, 1e-5);
    s.record_max("function/fd-check-order2", worst2, 1e-4);

    // Probed sup estimates never shrink when the box grows.
    SmoothFunction sq = make_square_scalar();
    CbNorm small = cb_norm(sq, 2, ProbeBox::centered(Vec{0.0}, 1.0), 64);
    CbNorm large = cb_norm(sq, 2, ProbeBox::centered(Vec{0.0}, 3.0), 64);
    double shrink = 0.0;
    for (std::size_t k = 0; k < small.per_order.size(); ++k)
        shrink = std::max(shrink, small.per_order[k] - large.per_order[k]);
    s.record_max("function/cb-norm-box-monotone", shrink, 0.0);
}

void integral_suite(Suite& s) {
    // Exact telescoping of the compensated sum for Y = (X, Id), X_t = t.
    double worst_exact = 0.0;
    for (std::size_t n : {2u, 16u, 1024u}) {
        auto grid = Grid::uniform(n, 1.0);
        auto base = std::make_shared<const ReducedRoughPath>(
            geometric_lift(sample_curve("line", {1.0}, grid), 0.5));
        std::vector<LinMap> y;
        std::vector<BilinMap> yp;
        for (std::size_t i = 0; i <= n; ++i) {
            y.push_back(LinMap(1, 1, {grid->time(i)}));
            yp.push_back(BilinMap(1, 1, {1.0}));
        }
        IntegrandPath c(base, GridPath<LinMap>(grid, y), GridPath<BilinMap>(grid, yp));
        IntegralResult res = integrate(c, s.budget);
        worst_exact = std::max(worst_exact, std::abs(res.values.value(n)[0] - 0.5));

        auto ito = std::make_shared<const ReducedRoughPath>(
            perturbed_lift(*base, ito_correction(grid, 1)));
        IntegrandPath ci(ito, GridPath<LinMap>(grid, y), GridPath<BilinMap>(grid, yp));
        worst_exact = std::max(worst_exact,
                               std::abs(integrate(ci, s.budget).values.value(n)[0] - 0.0));
    }
    s.record_max("integral/exact-telescoping", worst_exact, 1e-14);

    // Antisymmetric-part independence and certificate domination on a d=2
    // integrand along a solved path.
    auto grid = Grid::uniform(256, 1.0);
    auto base = std::make_shared<const ReducedRoughPath>(
        geometric_lift(sample_curve("circle", {}, grid), 0.45));
    SmoothFunction f = make_tanh_matrix_field(2, 2, s.seed + 7);
    SolutionPath center = canonical_center(Vec{0.2, -0.1}, f, base);
    SolutionPath iter = picard_map(center, f, Vec{0.2, -0.1});
    IntegrandPath integrand = compose_field(f, iter);

    IntegralResult direct = integrate(integrand, s.budget);
    std::vector<BilinMap> symd;
    for (std::size_t i = 0; i < integrand.points(); ++i)
        symd.push_back(integrand.y_prime().value(i).inner_symmetrized());
    IntegrandPath symmed(base, integrand.y(), GridPath<BilinMap>(grid, symd));
    IntegralResult symres = integrate(symmed, s.budget);
    double worst_anti = 0.0;
    for (std::size_t i = 0; i < direct.values.points(); ++i)
        worst_anti = std::max(worst_anti,
                              (direct.values.value(i) - symres.values.value(i)).norm());
    s.record_max("integral/antisymmetric-independence", worst_anti, 1e-14);

    SewingCertificate cert(integrand, s.budget);
    double worst_cert = 0.0;
    for (std::size_t k = 2; k <= 128; k *= 2)
        for (std::size_t i = 0; i + k < 256; i += k) {
            auto [lhs, rhs] = cert.at(i, i + k);
            worst_cert = std::max(worst_cert, lhs - rhs);
        }
    s.record_max("integral/certificate-domination", worst_cert, 0.0);

    // Single-pass accumulation: increments of I match germ sums to roundoff.
    CounterRng arng(s.seed, "check/integral-additivity");
    const IntegralResult full = integrate(integrand, s.budget);
    double worst_add = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t i = arng.next_u64() % 255;
        std::size_t j = i + 1 + arng.next_u64() % (256 - i);
        Vec sum(2);
        for (std::size_t k = i; k < j; ++k) sum += germ(integrand, k, k + 1).value;
        const double scale = std::max(1.0, sum.norm());
        worst_add = std::max(worst_add, (full.values.increment(i, j) - sum).norm() / scale);
    }
    s.record_max("integral/additivity", worst_add, 1e-14);
}

void solver_suite(Suite& s) {
    // Constant field over the circle driver: exact telescoping solution.
    {
        auto grid = Grid::uniform(512, 1.0);
        auto base = std::make_shared<const ReducedRoughPath>(
            geometric_lift(sample_curve("circle", {}, grid), 0.5));
        SmoothFunction f = make_constant_field(LinMap(1, 2, {0.4, -0.9}));
        SolveReport rep = solve_global(Vec{0.3}, f, base, 0.5, SolverConfig{});
        double worst = 0.0;
        for (std::size_t i = 0; i <= 512; ++i) {
            const double t = grid->time(i);
            const double expect = 0.3 + 0.4 * (std::cos(t) - 1.0) - 0.9 * std::sin(t);
            worst = std::max(worst, std::abs(rep.solution.y().value(i)[0] - expect));
        }
        s.record_max("solver/constant-field-exact", worst, 1e-12);
        s.record_max("solver/constant-field-residual", rep.residual_norm, 1e-12);
    }

    // Linear field oracle e^t at modest resolution.
    {
        auto grid = Grid::uniform(1024, 1.0);
        auto base = std::make_shared<const ReducedRoughPath>(
            geometric_lift(sample_curve("line", {1.0}, grid), 0.5));
        SmoothFunction f = make_linear_field_1d(1.0);
        SolveReport rep = solve_global(Vec{1.0}, f, base, 0.5, SolverConfig{});
        double worst = 0.0;
        for (std::size_t i = 0; i <= 1024; ++i)
            worst = std::max(worst, std::abs(rep.solution.y().value(i)[0] -
                                             std::exp(grid->time(i))));
        s.record_max("solver/exp-oracle", worst, 1e-4);
        bool ratios_ok = true;
        double worst_ratio = 0.0;
        for (const auto& st : rep.steps) {
            worst_ratio = std::max(worst_ratio, st.final_contraction_ratio);
            ratios_ok = ratios_ok && st.final_contraction_ratio <= 0.5;
        }
        std::ostringstream det;
        det << "max ratio " << format_double(worst_ratio);
        s.record("solver/contraction-ratios", ratios_ok, det.str());
        bool init_ok = rep.solution.y().value(0)[0] == 1.0 &&
                       rep.solution.y_prime().value(0).at(0, 0) == 1.0;
        s.record("solver/initial-data-preserved", init_ok, "Y(0) and Y'(0) exact");
    }

    // Lift sensitivity at desk scale: geometric vs Ito enhancement of one
    // Brownian sample drive the solution to different oracles.
    {
        const std::size_t n = 1 << 10;
        auto grid = Grid::uniform(n, 1.0);
        GridPath<Vec> x = gen_fbm({0.5, s.seed + 31, 1}, grid).path;
        auto strat = std::make_shared<const ReducedRoughPath>(geometric_lift(x, 0.45));
        auto ito = std::make_shared<const ReducedRoughPath>(
            perturbed_lift(*strat, ito_correction(grid, 1)));
        SmoothFunction f = make_linear_field_1d(1.0);
        SolverConfig cfg;
        cfg.budget = s.budget;
        SolveReport rs = solve_global(Vec{1.0}, f, strat, 0.5, cfg);
        SolveReport ri = solve_global(Vec{1.0}, f, ito, 0.5, cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const double xt = x.value(i)[0];
            const double t = grid->time(i);
            worst = std::max(worst, std::abs(rs.solution.y().value(i)[0] - std::exp(xt)));
            worst = std::max(worst,
                             std::abs(ri.solution.y().value(i)[0] - std::exp(xt - 0.5 * t)));
        }
        s.record_max("solver/lift-sensitivity-oracles", worst, 5e-2);
        const double split =
            std::abs(rs.solution.y().value(n)[0] - ri.solution.y().value(n)[0]);
        std::ostringstream det;
        det << "split " << format_double(split);
        s.record("solver/lift-sensitivity-split", split > 1e-2, det.str());
    }

    // Desk-scale uniqueness: a perturbed in-ball guess lands on the same
    // fixed point.
    {
        const std::size_t n = 256;
        auto grid = Grid::uniform(n, 0.5);
        std::vector<Vec> v;
        for (std::size_t i = 0; i <= n; ++i) v.push_back(Vec{grid->time(i)});
        auto window = std::make_shared<const ReducedRoughPath>(
            geometric_lift(GridPath<Vec>(grid, v), 0.45));
        SmoothFunction f = make_linear_field_1d(1.0);
        SolverConfig cfg;
        cfg.budget = s.budget;
        LocalSolve a = solve_local(Vec{1.0}, f, window, 0.5, cfg);
        SolutionPath center = canonical_center(Vec{1.0}, f, window);
        std::vector<Vec> bumped;
        for (std::size_t i = 0; i <= n; ++i) {
            const double u = grid->time(i) / grid->horizon();
            bumped.push_back(center.y().value(i) + Vec{0.05 * u * (1.0 - u)});
        }
        SolutionPath guess(window, GridPath<Vec>(grid, bumped), center.y_prime());
        LocalSolve b = solve_local(Vec{1.0}, f, window, 0.5, cfg, guess);
        double dist = 1.0;
        if (a.record.end_index == b.record.end_index) {
            dist = 0.0;
            for (std::size_t i = 0; i <= a.record.end_index; ++i)
                dist = std::max(dist, (a.solution.y().value(i) - b.solution.y().value(i)).norm());
        }
        s.record_max("solver/uniqueness-two-guesses", dist, 10.0 * cfg.fixed_point_tol);
    }
}

void drivers_io_suite(Suite& s) {
    // fBm: origin pinned, determinism, variance smoke test.
    auto grid = Grid::uniform(64, 1.0);
    FbmSample one = gen_fbm({0.4, s.seed + 11, 1}, grid);
    FbmSample two = gen_fbm({0.4, s.seed + 11, 1}, grid);
    bool det = one.path.value(0)[0] == 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i <= 64; ++i)
        worst = std::max(worst, std::abs(one.path.value(i)[0] - two.path.value(i)[0]));
    s.record("drivers/fbm-deterministic", det && worst == 0.0, "method " + one.method);

    double var = 0.0;
    const int reps = 2000;
    for (int k = 0; k < reps; ++k) {
        FbmSample smp = gen_fbm({0.4, static_cast<std::uint64_t>(k) + 1000 * s.seed, 1}, grid);
        const double x1 = smp.path.value(64)[0];
        var += x1 * x1;
    }
    var /= reps;
    std::ostringstream det2;
    det2 << "Var(X_1) = " << format_double(var);
    s.record("drivers/fbm-variance-smoke", std::abs(var - 1.0) <= 0.15, det2.str());

    // Round-trips reproduce norms to 1e-12.
    auto base = geometric_lift(gen_fbm({0.45, s.seed + 21, 2}, grid).path, 0.45);
    ReducedRoughPath reloaded = rough_path_from_json(rough_path_to_json(base));
    RrpNorms n1 = rrp_norm(base, s.budget);
    RrpNorms n2 = rrp_norm(reloaded, s.budget);
    s.record_max("io/rough-path-roundtrip", std::abs(n1.total - n2.total), 1e-12);

    GridPath<Vec> reread = path_from_csv(path_to_csv(base.path()));
    double csv_worst = 0.0;
    for (std::size_t i = 0; i < reread.points(); ++i)
        csv_worst = std::max(csv_worst, (reread.value(i) - base.path().value(i)).norm());
    s.record_max("io/path-csv-roundtrip", csv_worst, 0.0);
}

}  // namespace

std::vector<CheckResult> run_all_checks(std::uint64_t seed, const PairBudget& budget) {
    Suite s{seed, budget, {}};
    tensor_suite(s);
    path_grid_suite(s);
    rough_path_suite(s);
    controlled_suite(s);
    function_suite(s);
    integral_suite(s);
    solver_suite(s);
    drivers_io_suite(s);
    return s.results;
}

std::string render_check_report(const std::vector<CheckResult>& results) {
    std::ostringstream out;
    std::size_t failures = 0;
    for (const auto& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) out << "  (" << r.detail << ")";
        out << "\n";
        if (!r.pass) ++failures;
    }
    out << results.size() - failures << "/" << results.size() << " checks passed\n";
    return out.str();
}

}  // namespace rrp
