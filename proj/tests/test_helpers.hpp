#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "rrp/controlled.hpp"
#include "rrp/rng.hpp"

namespace rrp::test {

/// Scalar path sampled from a closed form on a uniform grid.
inline GridPath<Vec> scalar_path(const std::shared_ptr<const Grid>& grid,
                                 const std::function<double(double)>& f) {
    std::vector<Vec> v;
    v.reserve(grid->points());
    for (std::size_t i = 0; i < grid->points(); ++i) v.push_back(Vec{f(grid->time(i))});
    return GridPath<Vec>(grid, std::move(v));
}

/// d=1 solution-kind controlled path from closed forms for Y and Y'.
inline SolutionPath scalar_controlled(const std::shared_ptr<const ReducedRoughPath>& base,
                                      const std::function<double(double)>& y,
                                      const std::function<double(double)>& y_prime) {
    const auto& grid = base->grid_ptr();
    std::vector<Vec> yv;
    std::vector<LinMap> ypv;
    for (std::size_t i = 0; i < grid->points(); ++i) {
        const double t = grid->time(i);
        yv.push_back(Vec{y(t)});
        ypv.push_back(LinMap(1, 1, {y_prime(t)}));
    }
    return SolutionPath(base, GridPath<Vec>(grid, std::move(yv)),
                        GridPath<LinMap>(grid, std::move(ypv)));
}

/// d=1 integrand-kind controlled path from closed forms.
inline IntegrandPath scalar_integrand(const std::shared_ptr<const ReducedRoughPath>& base,
                                      const std::function<double(double)>& y,
                                      const std::function<double(double)>& y_prime) {
    const auto& grid = base->grid_ptr();
    std::vector<LinMap> yv;
    std::vector<BilinMap> ypv;
    for (std::size_t i = 0; i < grid->points(); ++i) {
        const double t = grid->time(i);
        yv.push_back(LinMap(1, 1, {y(t)}));
        ypv.push_back(BilinMap(1, 1, {y_prime(t)}));
    }
    return IntegrandPath(base, GridPath<LinMap>(grid, std::move(yv)),
                         GridPath<BilinMap>(grid, std::move(ypv)));
}

/// Base X_t = t with the geometric lift (S_{s,t} = (t-s)^2 / 2).
inline std::shared_ptr<const ReducedRoughPath> line_base(std::size_t steps, double alpha = 0.5,
                                                         double horizon = 1.0) {
    auto grid = Grid::uniform(steps, horizon);
    return std::make_shared<const ReducedRoughPath>(
        geometric_lift(scalar_path(grid, [](double t) { return t; }), alpha));
}

inline Vec random_vec(CounterRng& rng, std::size_t d, double scale = 1.0) {
    Vec v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = scale * (2.0 * rng.next_unit() - 1.0);
    return v;
}

inline Tensor2 random_tensor(CounterRng& rng, std::size_t d, double scale = 1.0) {
    Tensor2 t(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) t.at(i, j) = scale * (2.0 * rng.next_unit() - 1.0);
    return t;
}

}  // namespace rrp::test
