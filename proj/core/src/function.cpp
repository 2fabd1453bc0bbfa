#include "rrp/function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rrp/errors.hpp"
#include "rrp/rng.hpp"

namespace rrp {

namespace {

std::size_t shape_size(const std::vector<std::size_t>& shape) {
    std::size_t s = 1;
    for (std::size_t d : shape) s *= d;
    return s;
}

constexpr std::array<int, 8> kHaltonBases = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::size_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % static_cast<std::size_t>(base));
        index /= static_cast<std::size_t>(base);
    }
    return r;
}

}  // namespace

// ---- DenseTensor ----

DenseTensor::DenseTensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(shape_size(shape_), 0.0) {}

DenseTensor::DenseTensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != shape_size(shape_))
        throw DimensionMismatch("DenseTensor: data size does not match shape");
}

double DenseTensor::norm() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

bool DenseTensor::finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

// ---- ProbeBox / Halton ----

ProbeBox ProbeBox::centered(const Vec& center, double radius) {
    ProbeBox b;
    b.lo = center;
    b.hi = center;
    for (std::size_t i = 0; i < center.dim(); ++i) {
        b.lo[i] -= radius;
        b.hi[i] += radius;
    }
    return b;
}

std::vector<Vec> halton_probes(const ProbeBox& box, std::size_t count) {
    const std::size_t n = box.lo.dim();
    if (box.hi.dim() != n) throw DimensionMismatch("halton_probes: box corners differ");
    std::vector<Vec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Vec p(n);
        for (std::size_t k = 0; k < n; ++k) {
            const int base = kHaltonBases[k % kHaltonBases.size()];
            const double u = radical_inverse(i + 1, base);
            p[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * u;
        }
        out.push_back(std::move(p));
    }
    return out;
}

// ---- SmoothFunction ----

SmoothFunction::SmoothFunction(Init init) : init_(std::move(init)) {
    if (init_.declared_order < 1 || init_.declared_order > 3)
        throw OrderUnavailable("SmoothFunction: declared order must be 1, 2 or 3");
    for (int m = 0; m <= init_.declared_order; ++m)
        if (!init_.evaluators[static_cast<std::size_t>(m)])
            throw OrderUnavailable("SmoothFunction: evaluator missing below declared order");
    if (!init_.global_bounds.empty() &&
        init_.global_bounds.size() != static_cast<std::size_t>(init_.declared_order) + 1)
        throw DimensionMismatch("SmoothFunction: need one global bound per order");
}

std::vector<std::size_t> SmoothFunction::expected_shape(int order) const {
    std::vector<std::size_t> s;
    s.push_back(init_.out_rows);
    if (init_.codomain == Codomain::Field) s.push_back(init_.out_cols);
    for (int k = 0; k < order; ++k) s.push_back(init_.domain_dim);
    return s;
}

DenseTensor SmoothFunction::derivative(int order, const Vec& y) const {
    if (order < 0 || order > init_.declared_order)
        throw OrderUnavailable("SmoothFunction::derivative: order above declared smoothness");
    if (y.dim() != init_.domain_dim)
        throw DimensionMismatch("SmoothFunction::derivative: argument dimension");
    DenseTensor value = init_.evaluators[static_cast<std::size_t>(order)](y);
    if (value.shape() != expected_shape(order))
        throw DimensionMismatch("SmoothFunction::derivative: evaluator returned wrong shape");
    if (!value.finite()) throw NonFiniteOutput("SmoothFunction::derivative: non-finite output");
    return value;
}

Vec SmoothFunction::eval_vec(const Vec& y) const {
    if (init_.codomain != Codomain::Vector)
        throw DimensionMismatch("SmoothFunction::eval_vec: function is field-valued");
    DenseTensor v = derivative(0, y);
    Vec r(init_.out_rows);
    for (std::size_t i = 0; i < init_.out_rows; ++i) r[i] = v[i];
    return r;
}

LinMap SmoothFunction::eval_field(const Vec& y) const {
    if (init_.codomain != Codomain::Field)
        throw DimensionMismatch("SmoothFunction::eval_field: function is vector-valued");
    DenseTensor v = derivative(0, y);
    return LinMap(init_.out_rows, init_.out_cols, v.data());
}

std::vector<double> SmoothFunction::box_exact_bounds(const ProbeBox& box, int m) const {
    if (!init_.box_bounds) throw OrderUnavailable("SmoothFunction: no box bounds available");
    return init_.box_bounds(box, m);
}

// ---- cb_norm / fd_check ----

CbNorm cb_norm(const SmoothFunction& f, int m, const ProbeBox& box, std::size_t probe_count) {
    if (m < 0 || m > f.declared_order())
        throw OrderUnavailable("cb_norm: order above declared smoothness");
    CbNorm out;
    out.probe_box = box;
    if (f.globally_bounded()) {
        out.per_order.assign(f.global_bounds().begin(),
                             f.global_bounds().begin() + m + 1);
        out.exact = true;
    } else if (f.has_box_bounds()) {
        out.per_order = f.box_exact_bounds(box, m);
        out.exact = true;
    } else {
        out.per_order.assign(static_cast<std::size_t>(m) + 1, 0.0);
        out.probe_count = probe_count;
        for (const Vec& y : halton_probes(box, probe_count))
            for (int k = 0; k <= m; ++k) {
                double v = f.derivative(k, y).norm();
                out.per_order[static_cast<std::size_t>(k)] =
                    std::max(out.per_order[static_cast<std::size_t>(k)], v);
            }
    }
    for (double v : out.per_order) out.total += v;
    return out;
}

double fd_check(const SmoothFunction& f, int order, const std::vector<Vec>& probes, double h) {
    if (order < 1 || order > f.declared_order())
        throw OrderUnavailable("fd_check: order above declared smoothness");
    const std::size_t n = f.domain_dim();
    double worst = 0.0;
    for (const Vec& y : probes) {
        DenseTensor given = f.derivative(order, y);
        // Central FD of the order-(order-1) evaluator in each coordinate
        // direction; flat layout (base..., w) matches the row-major shape.
        std::vector<double> fd(given.size(), 0.0);
        double fd_sq = 0.0;
        for (std::size_t w = 0; w < n; ++w) {
            Vec yp = y, ym = y;
            yp[w] += h;
            ym[w] -= h;
            DenseTensor up = f.derivative(order - 1, yp);
            DenseTensor um = f.derivative(order - 1, ym);
            for (std::size_t b = 0; b < up.size(); ++b) {
                const double v = (up[b] - um[b]) / (2.0 * h);
                fd[b * n + w] = v;
                fd_sq += v * v;
            }
        }
        double diff_sq = 0.0;
        for (std::size_t idx = 0; idx < fd.size(); ++idx) {
            const double dv = fd[idx] - given[idx];
            diff_sq += dv * dv;
        }
        const double rel = std::sqrt(diff_sq) / std::max(std::sqrt(fd_sq), 1.0);
        worst = std::max(worst, rel);
    }
    return worst;
}

// ---- built-ins ----

namespace {

/// Scalar n=d=1 field from four closed-form derivative callables.
SmoothFunction scalar_field(std::string name, std::function<double(double)> g0,
                            std::function<double(double)> g1, std::function<double(double)> g2,
                            std::function<double(double)> g3, std::vector<double> bounds) {
    SmoothFunction::Init init;
    init.name = std::move(name);
    init.domain_dim = 1;
    init.codomain = SmoothFunction::Codomain::Field;
    init.out_rows = 1;
    init.out_cols = 1;
    init.declared_order = 3;
    auto wrap = [](std::function<double(double)> g, int order) -> SmoothFunction::Evaluator {
        return [g = std::move(g), order](const Vec& y) {
            std::vector<std::size_t> shape{1, 1};
            for (int k = 0; k < order; ++k) shape.push_back(1);
            return DenseTensor(std::move(shape), {g(y[0])});
        };
    };
    init.evaluators[0] = wrap(std::move(g0), 0);
    init.evaluators[1] = wrap(std::move(g1), 1);
    init.evaluators[2] = wrap(std::move(g2), 2);
    init.evaluators[3] = wrap(std::move(g3), 3);
    init.global_bounds = std::move(bounds);
    return SmoothFunction(std::move(init));
}

double tanh_d1(double t) { return 1.0 - t * t; }

/// Builds the matrix fields F[k][a](y) = amp * s(y[(k+a) mod n] + phase).
SmoothFunction matrix_field(std::string name, std::size_t n, std::size_t d, std::uint64_t seed,
                            double amp, bool use_tanh) {
    if (n == 0 || d == 0) throw DimensionMismatch("matrix_field: zero dimension");
    CounterRng rng(seed, name + "/phases");
    std::vector<double> phase(n * d);
    for (double& p : phase) p = 2.0 * std::numbers::pi * rng.next_unit();

    auto arg_index = [n, d](std::size_t k, std::size_t a) { return (k + a) % n; };
    auto s_val = [use_tanh](int order, double u) -> double {
        if (use_tanh) {
            const double t = std::tanh(u);
            switch (order) {
                case 0: return t;
                case 1: return tanh_d1(t);
                case 2: return -2.0 * t * tanh_d1(t);
                default: return tanh_d1(t) * (6.0 * t * t - 2.0);
            }
        }
        switch (order) {
            case 0: return std::sin(u);
            case 1: return std::cos(u);
            case 2: return -std::sin(u);
            default: return -std::cos(u);
        }
    };

    SmoothFunction::Init init;
    init.name = std::move(name);
    init.domain_dim = n;
    init.codomain = SmoothFunction::Codomain::Field;
    init.out_rows = n;
    init.out_cols = d;
    init.declared_order = 3;
    for (int order = 0; order <= 3; ++order) {
        init.evaluators[static_cast<std::size_t>(order)] = [=](const Vec& y) {
            std::vector<std::size_t> shape{n, d};
            for (int k = 0; k < order; ++k) shape.push_back(n);
            DenseTensor out(std::move(shape));
            std::size_t block = 1;
            for (int k = 0; k < order; ++k) block *= n;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t a = 0; a < d; ++a) {
                    const std::size_t w = arg_index(k, a);
                    const double v = amp * s_val(order, y[w] + phase[k * d + a]);
                    // All derivatives fall in the single direction w.
                    std::size_t flat = (k * d + a) * block;
                    std::size_t off = 0, stride = 1;
                    for (int q = 0; q < order; ++q) {
                        off += w * stride;
                        stride *= n;
                    }
                    out[flat + off] = v;
                }
            return out;
        };
    }
    // Entrywise sups give Frobenius upper bounds amp * c_m * sqrt(n d);
    // the per-order sups are not attained jointly, so these are safe
    // (not tight) constants.
    const double scale = amp * std::sqrt(static_cast<double>(n * d));
    if (use_tanh)
        init.global_bounds = {scale, scale, scale * 4.0 / (3.0 * std::sqrt(3.0)), scale * 2.0};
    else
        init.global_bounds = {scale, scale, scale, scale};
    return SmoothFunction(std::move(init));
}

double parse_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw ParseError("trailing characters in number: " + s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("cannot parse number: " + s);
    }
}

}  // namespace

SmoothFunction make_sin_field() {
    return scalar_field(
        "sin", [](double y) { return std::sin(y); }, [](double y) { return std::cos(y); },
        [](double y) { return -std::sin(y); }, [](double y) { return -std::cos(y); },
        {1.0, 1.0, 1.0, 1.0});
}

SmoothFunction make_tanh_field() {
    return scalar_field(
        "tanh", [](double y) { return std::tanh(y); },
        [](double y) { return tanh_d1(std::tanh(y)); },
        [](double y) {
            const double t = std::tanh(y);
            return -2.0 * t * tanh_d1(t);
        },
        [](double y) {
            const double t = std::tanh(y);
            return tanh_d1(t) * (6.0 * t * t - 2.0);
        },
        {1.0, 1.0, 4.0 / (3.0 * std::sqrt(3.0)), 2.0});
}

SmoothFunction make_damped_poly_field() {
    // g = y exp(-y^2/2); sup |g''| is attained at y^2 = 3 - sqrt(6).
    const double u = 3.0 - std::sqrt(6.0);
    const double sup_d2 = std::sqrt(u) * std::sqrt(6.0) * std::exp(-u / 2.0);
    return scalar_field(
        "bounded_poly", [](double y) { return y * std::exp(-0.5 * y * y); },
        [](double y) { return (1.0 - y * y) * std::exp(-0.5 * y * y); },
        [](double y) { return y * (y * y - 3.0) * std::exp(-0.5 * y * y); },
        [](double y) {
            const double y2 = y * y;
            return (-y2 * y2 + 6.0 * y2 - 3.0) * std::exp(-0.5 * y2);
        },
        {std::exp(-0.5), 1.0, sup_d2, 3.0});
}

SmoothFunction make_constant_field(const LinMap& value) {
    const std::size_t k = value.rows(), d = value.cols();
    SmoothFunction::Init init;
    init.name = "constant";
    init.domain_dim = k;
    init.codomain = SmoothFunction::Codomain::Field;
    init.out_rows = k;
    init.out_cols = d;
    init.declared_order = 3;
    init.evaluators[0] = [value, k, d](const Vec&) {
        return DenseTensor({k, d}, value.entries());
    };
    for (int order = 1; order <= 3; ++order)
        init.evaluators[static_cast<std::size_t>(order)] = [k, d, order](const Vec&) {
            std::vector<std::size_t> shape{k, d};
            for (int q = 0; q < order; ++q) shape.push_back(k);
            return DenseTensor(std::move(shape));
        };
    init.global_bounds = {value.norm(), 0.0, 0.0, 0.0};
    return SmoothFunction(std::move(init));
}

SmoothFunction make_linear_field(const DenseTensor& coeff) {
    if (coeff.rank() != 3) throw DimensionMismatch("make_linear_field: coeff must be (k, d, n)");
    const std::size_t k = coeff.shape()[0], d = coeff.shape()[1], n = coeff.shape()[2];
    SmoothFunction::Init init;
    init.name = "linear";
    init.domain_dim = n;
    init.codomain = SmoothFunction::Codomain::Field;
    init.out_rows = k;
    init.out_cols = d;
    init.declared_order = 3;
    init.evaluators[0] = [coeff, k, d, n](const Vec& y) {
        DenseTensor out({k, d});
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t a = 0; a < d; ++a) {
                double s = 0.0;
                for (std::size_t w = 0; w < n; ++w) s += coeff[(i * d + a) * n + w] * y[w];
                out[i * d + a] = s;
            }
        return out;
    };
    init.evaluators[1] = [coeff, k, d, n](const Vec&) {
        return DenseTensor({k, d, n}, coeff.data());
    };
    for (int order = 2; order <= 3; ++order)
        init.evaluators[static_cast<std::size_t>(order)] = [k, d, n, order](const Vec&) {
            std::vector<std::size_t> shape{k, d};
            for (int q = 0; q < order; ++q) shape.push_back(n);
            return DenseTensor(std::move(shape));
        };
    if (n <= 16) {
        init.box_bounds = [coeff, k, d, n](const ProbeBox& box, int m) {
            // |F(y)| is convex in y, so the sup over the box sits at a vertex.
            double sup0 = 0.0;
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                Vec y(n);
                for (std::size_t w = 0; w < n; ++w)
                    y[w] = (mask >> w) & 1 ? box.hi[w] : box.lo[w];
                double sq = 0.0;
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t a = 0; a < d; ++a) {
                        double s = 0.0;
                        for (std::size_t w = 0; w < n; ++w) s += coeff[(i * d + a) * n + w] * y[w];
                        sq += s * s;
                    }
                sup0 = std::max(sup0, std::sqrt(sq));
            }
            std::vector<double> b{sup0};
            if (m >= 1) b.push_back(coeff.norm());
            for (int q = 2; q <= m; ++q) b.push_back(0.0);
            return b;
        };
    }
    return SmoothFunction(std::move(init));
}

SmoothFunction make_linear_field_1d(double a) {
    return make_linear_field(DenseTensor({1, 1, 1}, {a}));
}

SmoothFunction make_rotation_field(std::size_t n, double omega) {
    if (n < 2 || n % 2 != 0)
        throw DimensionMismatch("make_rotation_field: need even state dimension");
    DenseTensor coeff({n, 1, n});
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        coeff[(i * 1 + 0) * n + (i + 1)] = omega;
        coeff[((i + 1) * 1 + 0) * n + i] = -omega;
    }
    SmoothFunction f = make_linear_field(coeff);
    return f;
}

SmoothFunction make_sin_matrix_field(std::size_t n, std::size_t d, std::uint64_t seed,
                                     double amp) {
    return matrix_field("sin_matrix", n, d, seed, amp, false);
}

SmoothFunction make_tanh_matrix_field(std::size_t n, std::size_t d, std::uint64_t seed,
                                      double amp) {
    return matrix_field("tanh_matrix", n, d, seed, amp, true);
}

SmoothFunction make_identity_vector(std::size_t n) {
    SmoothFunction::Init init;
    init.name = "identity";
    init.domain_dim = n;
    init.codomain = SmoothFunction::Codomain::Vector;
    init.out_rows = n;
    init.declared_order = 3;
    init.evaluators[0] = [n](const Vec& y) {
        return DenseTensor({n}, y.entries());
    };
    init.evaluators[1] = [n](const Vec&) {
        DenseTensor out({n, n});
        for (std::size_t i = 0; i < n; ++i) out[i * n + i] = 1.0;
        return out;
    };
    init.evaluators[2] = [n](const Vec&) { return DenseTensor({n, n, n}); };
    init.evaluators[3] = [n](const Vec&) { return DenseTensor({n, n, n, n}); };
    return SmoothFunction(std::move(init));
}

SmoothFunction make_square_scalar() {
    SmoothFunction::Init init;
    init.name = "square";
    init.domain_dim = 1;
    init.codomain = SmoothFunction::Codomain::Vector;
    init.out_rows = 1;
    init.declared_order = 3;
    init.evaluators[0] = [](const Vec& y) { return DenseTensor({1}, {y[0] * y[0]}); };
    init.evaluators[1] = [](const Vec& y) { return DenseTensor({1, 1}, {2.0 * y[0]}); };
    init.evaluators[2] = [](const Vec&) { return DenseTensor({1, 1, 1}, {2.0}); };
    init.evaluators[3] = [](const Vec&) { return DenseTensor({1, 1, 1, 1}, {0.0}); };
    return SmoothFunction(std::move(init));
}

SmoothFunction make_sin_vector() {
    SmoothFunction::Init init;
    init.name = "sin_vector";
    init.domain_dim = 1;
    init.codomain = SmoothFunction::Codomain::Vector;
    init.out_rows = 1;
    init.declared_order = 3;
    init.evaluators[0] = [](const Vec& y) { return DenseTensor({1}, {std::sin(y[0])}); };
    init.evaluators[1] = [](const Vec& y) { return DenseTensor({1, 1}, {std::cos(y[0])}); };
    init.evaluators[2] = [](const Vec& y) { return DenseTensor({1, 1, 1}, {-std::sin(y[0])}); };
    init.evaluators[3] = [](const Vec& y) { return DenseTensor({1, 1, 1, 1}, {-std::cos(y[0])}); };
    init.global_bounds = {1.0, 1.0, 1.0, 1.0};
    return SmoothFunction(std::move(init));
}

SmoothFunction make_constant_vector(const Vec& value) {
    const std::size_t k = value.dim();
    SmoothFunction::Init init;
    init.name = "constant_vector";
    init.domain_dim = k;
    init.codomain = SmoothFunction::Codomain::Vector;
    init.out_rows = k;
    init.declared_order = 3;
    init.evaluators[0] = [value, k](const Vec&) { return DenseTensor({k}, value.entries()); };
    for (int order = 1; order <= 3; ++order)
        init.evaluators[static_cast<std::size_t>(order)] = [k, order](const Vec&) {
            std::vector<std::size_t> shape{k};
            for (int q = 0; q < order; ++q) shape.push_back(k);
            return DenseTensor(std::move(shape));
        };
    init.global_bounds = {value.norm(), 0.0, 0.0, 0.0};
    return SmoothFunction(std::move(init));
}

SmoothFunction parse_field_spec(const std::string& spec, std::size_t n, std::size_t d) {
    std::string name = spec;
    std::string params;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        params = spec.substr(colon + 1);
    }
    auto get = [&params](const std::string& key) -> std::string {
        std::stringstream ss(params);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq != std::string::npos && item.substr(0, eq) == key) return item.substr(eq + 1);
        }
        return {};
    };
    auto get_entries = [&get](const std::string& key) {
        std::vector<double> out;
        std::stringstream ss(get(key));
        std::string item;
        while (std::getline(ss, item, ';')) out.push_back(parse_double(item));
        return out;
    };
    auto require_scalar_dims = [&] {
        if (n != 1 || d != 1)
            throw DimensionMismatch("field '" + name + "' requires n = d = 1");
    };

    if (name == "sin") {
        require_scalar_dims();
        return make_sin_field();
    }
    if (name == "tanh") {
        require_scalar_dims();
        return make_tanh_field();
    }
    if (name == "bounded_poly" || name == "damped_poly") {
        require_scalar_dims();
        return make_damped_poly_field();
    }
    if (name == "linear") {
        if (auto a = get("a"); !a.empty()) {
            require_scalar_dims();
            return make_linear_field_1d(parse_double(a));
        }
        auto entries = get_entries("entries");
        if (entries.size() != n * d * n)
            throw ParseError("linear: expected entries=<k*d*n flattened values>");
        return make_linear_field(DenseTensor({n, d, n}, std::move(entries)));
    }
    if (name == "rotation") {
        if (d != 1) throw DimensionMismatch("rotation field requires d = 1");
        const std::string omega = get("omega");
        return make_rotation_field(n, omega.empty() ? 1.0 : parse_double(omega));
    }
    if (name == "constant") {
        if (auto c = get("c"); !c.empty())
            return make_constant_field(LinMap(n, d, std::vector<double>(n * d, parse_double(c))));
        auto entries = get_entries("entries");
        if (entries.size() != n * d) throw ParseError("constant: expected entries=<n*d values>");
        return make_constant_field(LinMap(n, d, std::move(entries)));
    }
    if (name == "sin_matrix" || name == "tanh_matrix") {
        const std::string seed = get("seed");
        const std::string amp = get("amp");
        const std::uint64_t s = seed.empty() ? 0 : static_cast<std::uint64_t>(std::stoull(seed));
        const double a = amp.empty() ? 0.5 : parse_double(amp);
        return name == "sin_matrix" ? make_sin_matrix_field(n, d, s, a)
                                    : make_tanh_matrix_field(n, d, s, a);
    }
    throw UnknownCurve("unknown field spec: " + spec);
}

}  // namespace rrp
