#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rrp/grid.hpp"
#include "rrp/rng.hpp"

namespace rrp {

/// Samples a named closed-form curve at the grid times.
/// Catalog: "line" (params: direction components), "circle" (cos t, sin t),
/// "polynomial" (params: coefficients c0 + c1 t + ...), "lissajous"
/// (params: a, b -> (sin a t, sin b t)).
GridPath<Vec> sample_curve(const std::string& name, const std::vector<double>& params,
                           const std::shared_ptr<const Grid>& grid);

/// Piecewise-linear interpolation of nodes, sampled at the grid times.
/// Node times must be increasing and cover [0, T].
GridPath<Vec> sample_piecewise_linear(const std::vector<double>& node_times,
                                      const std::vector<Vec>& node_values,
                                      const std::shared_ptr<const Grid>& grid);

struct FbmOptions {
    double hurst = 0.5;  // must lie in (1/3, 1/2]
    std::uint64_t seed = 0;
    std::size_t dim = 1;
};

struct FbmSample {
    GridPath<Vec> path;
    /// "circulant" (Davie-Harte, exact covariance, uniform power-of-two
    /// grids) or "cholesky" (exact covariance fallback, N <= 2048).
    std::string method;
};

/// Exact-covariance fractional Brownian motion with
/// cov(X_s, X_t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2, componentwise
/// independent across dimensions, deterministic given the seed.
FbmSample gen_fbm(const FbmOptions& options, const std::shared_ptr<const Grid>& grid);

}  // namespace rrp
