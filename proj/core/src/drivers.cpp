#include "rrp/drivers.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "rrp/detail/fft.hpp"

namespace rrp {

namespace {

bool grid_is_uniform(const Grid& g) {
    const double h = g.horizon() / static_cast<double>(g.steps());
    for (std::size_t i = 0; i + 1 < g.points(); ++i)
        if (std::abs(g.time(i + 1) - g.time(i) - h) > 1e-12 * std::max(1.0, g.horizon()))
            return false;
    return true;
}

/// Autocovariance of unit-spacing fractional Gaussian noise.
double fgn_gamma(std::size_t k, double hurst) {
    const double kk = static_cast<double>(k);
    const double h2 = 2.0 * hurst;
    return 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) +
                  std::pow(std::abs(kk - 1.0), h2));
}

/// Davie-Harte circulant embedding: one fGn vector of length n at unit
/// spacing. Returns false when the embedding is not nonnegative definite.
bool fgn_circulant(std::size_t n, double hurst, CounterRng& rng, std::vector<double>& out) {
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> c(m);
    for (std::size_t k = 0; k <= n; ++k) c[k] = fgn_gamma(k, hurst);
    for (std::size_t k = 1; k < n; ++k) c[m - k] = c[k];
    detail::fft_pow2(c, -1);

    std::vector<double> lambda(m);
    double max_l = 0.0, min_l = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        lambda[k] = c[k].real();
        max_l = std::max(max_l, lambda[k]);
        min_l = std::min(min_l, lambda[k]);
    }
    if (min_l < -1e-9 * std::max(1.0, max_l)) return false;
    for (double& l : lambda) l = std::max(l, 0.0);

    std::vector<std::complex<double>> a(m);
    const double dm = static_cast<double>(m);
    a[0] = std::sqrt(lambda[0] / dm) * rng.next_gaussian();
    a[n] = std::sqrt(lambda[n] / dm) * rng.next_gaussian();
    for (std::size_t k = 1; k < n; ++k) {
        const double scale = std::sqrt(lambda[k] / (2.0 * dm));
        const double re = rng.next_gaussian();
        const double im = rng.next_gaussian();
        a[k] = std::complex<double>(scale * re, scale * im);
        a[m - k] = std::conj(a[k]);
    }
    detail::fft_pow2(a, -1);
    out.resize(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k].real();
    return true;
}

/// Cholesky sampling of fBm values at arbitrary times (N <= 2048).
std::vector<double> fbm_cholesky(const std::vector<double>& times, double hurst,
                                 CounterRng& rng) {
    const std::size_t n = times.size();
    const double h2 = 2.0 * hurst;
    auto cov = [&](double s, double t) {
        return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
    };
    std::vector<double> l(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = cov(times[i], times[j]);
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
            if (i == j) {
                if (s <= 0.0)
                    throw EmbeddingFailure("fbm: covariance not positive definite at this grid");
                l[i * n + i] = std::sqrt(s);
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    std::vector<double> g(n), x(n, 0.0);
    for (double& v : g) v = rng.next_gaussian();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += l[i * n + k] * g[k];
        x[i] = s;
    }
    return x;
}

}  // namespace

GridPath<Vec> sample_curve(const std::string& name, const std::vector<double>& params,
                           const std::shared_ptr<const Grid>& grid) {
    std::vector<Vec> values;
    values.reserve(grid->points());
    if (name == "line") {
        if (params.empty()) throw UnknownCurve("line: needs direction components");
        const std::size_t d = params.size();
        for (std::size_t i = 0; i < grid->points(); ++i) {
            Vec v(d);
            for (std::size_t k = 0; k < d; ++k) v[k] = params[k] * grid->time(i);
            values.push_back(std::move(v));
        }
    } else if (name == "circle") {
        for (std::size_t i = 0; i < grid->points(); ++i) {
            const double t = grid->time(i);
            values.push_back(Vec{std::cos(t), std::sin(t)});
        }
    } else if (name == "polynomial") {
        if (params.empty()) throw UnknownCurve("polynomial: needs coefficients");
        for (std::size_t i = 0; i < grid->points(); ++i) {
            const double t = grid->time(i);
            double acc = 0.0;
            for (std::size_t k = params.size(); k-- > 0;) acc = acc * t + params[k];
            values.push_back(Vec{acc});
        }
    } else if (name == "lissajous") {
        if (params.size() != 2) throw UnknownCurve("lissajous: needs two frequencies");
        for (std::size_t i = 0; i < grid->points(); ++i) {
            const double t = grid->time(i);
            values.push_back(Vec{std::sin(params[0] * t), std::sin(params[1] * t)});
        }
    } else {
        throw UnknownCurve("unknown curve: " + name);
    }
    return GridPath<Vec>(grid, std::move(values));
}

GridPath<Vec> sample_piecewise_linear(const std::vector<double>& node_times,
                                      const std::vector<Vec>& node_values,
                                      const std::shared_ptr<const Grid>& grid) {
    if (node_times.size() != node_values.size() || node_times.size() < 2)
        throw GridMismatch("piecewise_linear: need matching node times/values");
    for (std::size_t i = 0; i + 1 < node_times.size(); ++i)
        if (!(node_times[i] < node_times[i + 1]))
            throw GridMismatch("piecewise_linear: node times must increase");
    if (node_times.front() > 0.0 || node_times.back() < grid->horizon())
        throw GridMismatch("piecewise_linear: nodes must cover [0, T]");

    std::vector<Vec> values;
    values.reserve(grid->points());
    for (std::size_t i = 0; i < grid->points(); ++i) {
        const double t = grid->time(i);
        auto it = std::upper_bound(node_times.begin(), node_times.end(), t);
        std::size_t hi = std::min<std::size_t>(
            static_cast<std::size_t>(it - node_times.begin()), node_times.size() - 1);
        if (hi == 0) hi = 1;
        const std::size_t lo = hi - 1;
        const double w = (t - node_times[lo]) / (node_times[hi] - node_times[lo]);
        values.push_back(node_values[lo] + w * (node_values[hi] - node_values[lo]));
    }
    return GridPath<Vec>(grid, std::move(values));
}

FbmSample gen_fbm(const FbmOptions& options, const std::shared_ptr<const Grid>& grid) {
    if (!(options.hurst > 1.0 / 3.0 && options.hurst <= 0.5))
        throw InvalidHurst("fbm: Hurst index must lie in (1/3, 1/2]");
    if (options.dim == 0) throw DimensionMismatch("fbm: dimension must be positive");

    const std::size_t n = grid->steps();
    const bool circulant_ok = grid_is_uniform(*grid) && detail::is_pow2(n);

    std::vector<std::vector<double>> components(options.dim);
    std::string method;
    CounterRng base(options.seed, "fbm");

    if (circulant_ok) {
        const double scale = std::pow(grid->horizon() / static_cast<double>(n), options.hurst);
        bool ok = true;
        for (std::size_t c = 0; c < options.dim; ++c) {
            CounterRng rng = base.fork(c);
            std::vector<double> fgn;
            if (!fgn_circulant(n, options.hurst, rng, fgn)) {
                ok = false;
                break;
            }
            std::vector<double> x(n + 1, 0.0);
            for (std::size_t k = 0; k < n; ++k) x[k + 1] = x[k] + scale * fgn[k];
            components[c] = std::move(x);
        }
        if (ok) method = "circulant";
    }

    if (method.empty()) {
        if (n > 2048)
            throw EmbeddingFailure(
                "fbm: circulant embedding unavailable (grid not a uniform power of two) and N > "
                "2048 for the Cholesky fallback");
        std::vector<double> times(grid->times().begin() + 1, grid->times().end());
        for (std::size_t c = 0; c < options.dim; ++c) {
            CounterRng rng = base.fork(c);
            std::vector<double> x = fbm_cholesky(times, options.hurst, rng);
            x.insert(x.begin(), 0.0);
            components[c] = std::move(x);
        }
        method = "cholesky";
    }

    std::vector<Vec> values;
    values.reserve(grid->points());
    for (std::size_t i = 0; i < grid->points(); ++i) {
        Vec v(options.dim);
        for (std::size_t c = 0; c < options.dim; ++c) v[c] = components[c][i];
        values.push_back(std::move(v));
    }
    return FbmSample{GridPath<Vec>(grid, std::move(values)), method};
}

}  // namespace rrp
