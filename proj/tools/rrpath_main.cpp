// rrpath: reduced rough path toolkit CLI.
//
// Subcommands: lift, integrate, solve, convergence, fbm-gen, check.
// Exit codes: 0 success, 1 invariant/certificate failure, 2 usage error,
// 3 numerical failure (step-size floor, blow-up, embedding failure).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rrp/checks.hpp"
#include "rrp/drivers.hpp"
#include "rrp/integral.hpp"
#include "rrp/io.hpp"
#include "rrp/solver.hpp"
#include "rrp/sweep.hpp"

namespace {

using nlohmann::json;
using namespace rrp;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    unsigned threads = 1;
    double alpha = 0.0;
    double beta = 0.5;
};

PairBudget budget_of(const CommonOpts& common) {
    PairBudget b;
    b.threads = common.threads;
    return b;
}

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
    std::cout << "wrote " << path << "\n";
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GridPath<Vec> driver_from_json(const json& spec, std::uint64_t seed_override) {
    const std::string kind = spec.value("kind", "curve");
    if (kind == "csv") return load_path_csv(spec.at("file").get<std::string>());
    const std::size_t n = spec.value("n", 1024);
    const double horizon = spec.value("horizon", 1.0);
    auto grid = Grid::uniform(n, horizon);
    if (kind == "curve") {
        std::vector<double> params;
        if (spec.contains("params"))
            for (const auto& p : spec.at("params")) params.push_back(p.get<double>());
        return sample_curve(spec.at("name").get<std::string>(), params, grid);
    }
    if (kind == "piecewise_linear") {
        std::vector<double> nt;
        std::vector<Vec> nv;
        for (const auto& node : spec.at("nodes")) {
            nt.push_back(node.at("t").get<double>());
            Vec v(node.at("x").size());
            for (std::size_t k = 0; k < v.dim(); ++k) v[k] = node.at("x")[k].get<double>();
            nv.push_back(std::move(v));
        }
        return sample_piecewise_linear(nt, nv, grid);
    }
    if (kind == "fbm") {
        FbmOptions opt;
        opt.hurst = spec.value("hurst", 0.5);
        opt.seed = spec.contains("seed") ? spec.at("seed").get<std::uint64_t>() : seed_override;
        opt.dim = spec.value("dim", 1);
        FbmSample smp = gen_fbm(opt, grid);
        std::cout << "fbm method: " << smp.method << "\n";
        return smp.path;
    }
    throw ParseError("unknown driver kind: " + kind);
}

ReducedRoughPath lift_driver(const GridPath<Vec>& x, double alpha,
                             const std::string& enhancement) {
    ReducedRoughPath geo = geometric_lift(x, alpha);
    if (enhancement == "geometric") return geo;
    if (enhancement == "ito")
        return perturbed_lift(geo, ito_correction(x.grid_ptr(), x.value(0).dim()));
    throw ParseError("unknown enhancement: " + enhancement + " (geometric|ito)");
}

int cmd_lift(const CommonOpts& common, const std::string& input_csv, const std::string& driver_json,
             const std::string& enhancement) {
    const double alpha = common.alpha > 0.0 ? common.alpha : 0.5;
    GridPath<Vec> x = !input_csv.empty()
                          ? load_path_csv(input_csv)
                          : driver_from_json(json::parse(read_text(driver_json)), common.seed);
    ReducedRoughPath r = lift_driver(x, alpha, enhancement);
    write_text(common.out_dir, "rough_path.json", rough_path_to_json(r));
    return kExitOk;
}

/// Builds the integrand named by `spec` over the lifted driver; "field:..."
/// composes F with a converged solution from xi.
IntegrandPath integrand_from_spec(const std::string& spec,
                                  const std::shared_ptr<const ReducedRoughPath>& base,
                                  const json& config, double beta) {
    auto scalar_fn = [&](const std::function<double(double)>& f,
                         const std::function<double(double)>& df) {
        if (base->dim() != 1)
            throw DimensionMismatch("integrand '" + spec + "' requires a d=1 driver");
        std::vector<LinMap> y;
        std::vector<BilinMap> yp;
        for (std::size_t i = 0; i < base->grid().points(); ++i) {
            const double x = base->path().value(i)[0];
            y.push_back(LinMap(1, 1, std::vector<double>{f(x)}));
            yp.push_back(BilinMap(1, 1, std::vector<double>{df(x)}));
        }
        return IntegrandPath(base, GridPath<LinMap>(base->grid_ptr(), std::move(y)),
                             GridPath<BilinMap>(base->grid_ptr(), std::move(yp)));
    };
    if (spec == "identity")
        return scalar_fn([](double x) { return x; }, [](double) { return 1.0; });
    if (spec == "fn:sin")
        return scalar_fn([](double x) { return std::sin(x); },
                         [](double x) { return std::cos(x); });
    if (spec == "fn:cos")
        return scalar_fn([](double x) { return std::cos(x); },
                         [](double x) { return -std::sin(x); });
    if (spec.rfind("field:", 0) == 0) {
        Vec xi(config.at("xi").size());
        for (std::size_t k = 0; k < xi.dim(); ++k) xi[k] = config.at("xi")[k].get<double>();
        SmoothFunction f = parse_field_spec(spec.substr(6), xi.dim(), base->dim());
        SolveReport rep = solve_global(xi, f, base, beta);
        return compose_field(f, rep.solution);
    }
    throw ParseError("unknown integrand spec: " + spec);
}

int cmd_integrate(const CommonOpts& common, const std::string& config_file) {
    json config = json::parse(read_text(config_file));
    const double beta = config.value("beta", common.beta);
    std::shared_ptr<const ReducedRoughPath> base;
    if (config.contains("rough_path_file")) {
        base = std::make_shared<const ReducedRoughPath>(
            load_rough_path(config.at("rough_path_file").get<std::string>()));
    } else {
        const double alpha = common.alpha > 0.0 ? common.alpha : beta - 0.05;
        base = std::make_shared<const ReducedRoughPath>(
            lift_driver(driver_from_json(config.at("driver"), common.seed), alpha,
                        config.value("enhancement", "geometric")));
    }
    IntegrandPath c =
        integrand_from_spec(config.value("integrand", "identity"), base, config, beta);

    PairBudget budget = budget_of(common);
    SewingCertificate cert(c, budget);
    write_text(common.out_dir, "integral.csv", path_to_csv(cert.integral().values));

    // Dyadic certificate scan: per-scale max lhs drives the slope fit.
    json pairs = json::array(), lhs_arr = json::array(), rhs_arr = json::array();
    std::vector<double> log_gap, log_lhs;
    std::size_t violations = 0;
    const std::size_t n = base->grid().steps();
    for (std::size_t k = 1; 2 * k <= n; k *= 2) {
        double scale_lhs = 0.0, scale_rhs = 0.0, gap = 0.0;
        std::size_t probes = 0;
        for (std::size_t i = 0; i + k <= n && probes < 32; i += std::max<std::size_t>(k, n / 64)) {
            auto [l, r] = cert.at(i, i + k);
            pairs.push_back(json::array({i, i + k}));
            lhs_arr.push_back(l);
            rhs_arr.push_back(r);
            if (l > r) ++violations;
            scale_lhs = std::max(scale_lhs, l);
            scale_rhs = std::max(scale_rhs, r);
            gap = base->grid().gap(i, i + k);
            ++probes;
        }
        if (scale_lhs > 1e-14) {
            log_gap.push_back(std::log(gap));
            log_lhs.push_back(std::log(scale_lhs));
        }
    }
    double slope = 0.0;
    if (log_gap.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < log_gap.size(); ++i) {
            sx += log_gap[i];
            sy += log_lhs[i];
            sxx += log_gap[i] * log_gap[i];
            sxy += log_gap[i] * log_lhs[i];
        }
        const double m = static_cast<double>(log_gap.size());
        slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }

    json report;
    report["schema"] = "rrp.sewing_certificate.v1";
    report["alpha"] = base->alpha();
    report["c_alpha"] = cert.c_alpha();
    report["pairs"] = std::move(pairs);
    report["lhs"] = std::move(lhs_arr);
    report["rhs"] = std::move(rhs_arr);
    report["slope"] = slope;
    report["violations"] = violations;
    report["germ_defect_3alpha"] = cert.integral().germ_defect_3alpha;
    report["y_prime_antisym_defect"] = cert.integral().y_prime_antisym_defect;
    write_text(common.out_dir, "certificate.json", report.dump());

    if (violations > 0) {
        std::cerr << violations << " certificate violation(s)\n";
        return kExitCheckFailure;
    }
    return kExitOk;
}

int cmd_solve(const CommonOpts& common, const std::string& config_file) {
    json config = json::parse(read_text(config_file));
    const double beta = config.value("beta", common.beta);
    const double alpha = common.alpha > 0.0 ? common.alpha : config.value("alpha", 0.0);

    GridPath<Vec> x = driver_from_json(config.at("driver"), common.seed);
    auto base = std::make_shared<const ReducedRoughPath>(
        lift_driver(x, alpha > 0.0 ? alpha : (beta > 1.0 / 3.0 + 0.05 ? beta - 0.05 : 0.45),
                    config.value("enhancement", "geometric")));

    Vec xi(config.at("xi").size());
    for (std::size_t k = 0; k < xi.dim(); ++k) xi[k] = config.at("xi")[k].get<double>();
    SmoothFunction f =
        parse_field_spec(config.at("field").get<std::string>(), xi.dim(), base->dim());

    SolverConfig cfg;
    cfg.alpha = alpha;
    cfg.budget.threads = common.threads;
    if (config.contains("solver")) {
        const json& s = config.at("solver");
        cfg.alpha = s.value("alpha", cfg.alpha);
        cfg.tau_init = s.value("tau_init", cfg.tau_init);
        cfg.tau_min = s.value("tau_min", cfg.tau_min);
        cfg.contraction_target = s.value("contraction_target", cfg.contraction_target);
        cfg.max_picard_iters = s.value("max_picard_iters", cfg.max_picard_iters);
        cfg.fixed_point_tol = s.value("fixed_point_tol", cfg.fixed_point_tol);
        cfg.ball_radius = s.value("ball_radius", cfg.ball_radius);
    }

    SolveReport rep = solve_global(xi, f, base, beta, cfg);
    write_text(common.out_dir, "solution.csv", path_to_csv(rep.solution.y()));
    write_text(common.out_dir, "solve_report.json", solve_report_to_json(rep));
    std::cout << "residual " << format_double(rep.residual_norm) << ", " << rep.steps.size()
              << " window(s), " << (rep.global ? "global" : "local") << " solution\n";
    return kExitOk;
}

int cmd_convergence(const CommonOpts& common, const std::string& scenario) {
    SweepResult result = convergence_sweep(scenario, common.seed, budget_of(common));
    write_text(common.out_dir, "convergence_" + scenario + ".csv", result.csv());
    std::cout << "fitted order " << format_double(result.fitted_order) << " over "
              << result.fit_points << " points\n";
    return kExitOk;
}

int cmd_fbm_gen(const CommonOpts& common, double hurst, std::size_t n, double horizon,
                std::size_t dim) {
    FbmSample smp = gen_fbm({hurst, common.seed, dim}, Grid::uniform(n, horizon));
    std::cout << "fbm method: " << smp.method << "\n";
    write_text(common.out_dir, "fbm.csv", path_to_csv(smp.path));
    return kExitOk;
}

int cmd_check(const CommonOpts& common, const std::string& table_file) {
    if (!table_file.empty()) {
        ChenValidation v = validate_dense_second_level(read_text(table_file));
        std::cout << (v.ok ? "PASS" : "FAIL") << "  dense-table Chen validation ("
                  << v.triples_checked << " triples, max defect " << format_double(v.max_defect)
                  << ")\n";
        if (!v.ok) std::cout << v.message << "\n";
        return v.ok ? kExitOk : kExitCheckFailure;
    }
    PairBudget budget = budget_of(common);
    std::vector<CheckResult> results = run_all_checks(common.seed, budget);
    std::cout << render_check_report(results);
    for (const auto& r : results)
        if (!r.pass) return kExitCheckFailure;
    return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"reduced rough path toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts common;
    app.add_option("--seed", common.seed, "RNG seed (counter-based, reproducible)");
    app.add_option("--out-dir", common.out_dir, "output directory");
    app.add_option("--threads", common.threads, "worker threads for seminorm scans");
    app.add_option("--alpha", common.alpha, "Hoelder exponent in (1/3, 1/2]");
    app.add_option("--beta", common.beta, "driver regularity exponent in (1/3, 1/2]");

    auto* lift = app.add_subcommand("lift", "lift a sampled path to a reduced rough path");
    std::string lift_csv, lift_driver_json;
    std::string enhancement = "geometric";
    lift->add_option("--input", lift_csv, "path CSV (t,x0,...)");
    lift->add_option("--driver", lift_driver_json, "driver spec JSON file");
    lift->add_option("--enhancement", enhancement, "geometric|ito");

    auto* integrate_cmd =
        app.add_subcommand("integrate", "compensated-sum integral with sewing certificate");
    std::string integrate_config;
    integrate_cmd->add_option("--config", integrate_config, "config JSON")->required();

    auto* solve = app.add_subcommand("solve", "Picard fixed-point RDE solve");
    std::string solve_config;
    solve->add_option("--config", solve_config, "config JSON")->required();

    auto* convergence = app.add_subcommand("convergence", "resampling convergence sweep");
    std::string scenario = "line-exp";
    convergence->add_option("--scenario", scenario,
                            "circle-constant|line-exp|fbm-sin-integral|fbm-identity-integral");

    auto* fbm = app.add_subcommand("fbm-gen", "sample fractional Brownian motion");
    double hurst = 0.5, horizon = 1.0;
    std::size_t fbm_n = 1024, fbm_dim = 1;
    fbm->add_option("--hurst", hurst, "Hurst index in (1/3, 1/2]");
    fbm->add_option("--n", fbm_n, "grid steps");
    fbm->add_option("--horizon", horizon, "time horizon T");
    fbm->add_option("--dim", fbm_dim, "components");

    auto* check = app.add_subcommand("check", "run every module invariant suite");
    std::string table_file;
    check->add_option("--table", table_file, "validate a dense second-level table JSON");

    try {
        app.parse(argc, argv);
        if (*lift) {
            if (lift_csv.empty() == lift_driver_json.empty())
                throw ParseError("lift: exactly one of --input / --driver required");
            return cmd_lift(common, lift_csv, lift_driver_json, enhancement);
        }
        if (*integrate_cmd) return cmd_integrate(common, integrate_config);
        if (*solve) return cmd_solve(common, solve_config);
        if (*convergence) return cmd_convergence(common, scenario);
        if (*fbm) return cmd_fbm_gen(common, hurst, fbm_n, horizon, fbm_dim);
        if (*check) return cmd_check(common, table_file);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const StepTooSmall& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NonFiniteOutput& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const MaxItersExceeded& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const EmbeddingFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (...) {
        std::cerr << "unexpected error\n";
        return kExitUsage;
    }
}
