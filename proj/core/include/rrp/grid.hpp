#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "rrp/errors.hpp"
#include "rrp/tensor.hpp"

namespace rrp {

/// Partition 0 = t_0 < t_1 < ... < t_N = T of the time interval.
class Grid {
public:
    explicit Grid(std::vector<double> times);
    static std::shared_ptr<const Grid> uniform(std::size_t steps, double horizon);
    static std::shared_ptr<const Grid> make(std::vector<double> times);

    std::size_t points() const { return t_.size(); }
    std::size_t steps() const { return t_.size() - 1; }
    double time(std::size_t i) const;
    double horizon() const { return t_.back(); }
    double mesh() const;
    /// t_j - t_i for i <= j.
    double gap(std::size_t i, std::size_t j) const;
    const std::vector<double>& times() const { return t_; }
    bool same_times(const Grid& o) const { return t_ == o.t_; }

private:
    std::vector<double> t_;
};

/// Grid-sampled path with values of any tensor kind (Vec, LinMap, BilinMap,
/// SymTensor2). Values are immutable after construction and validated finite.
template <class T>
class GridPath {
public:
    GridPath() = default;
    GridPath(std::shared_ptr<const Grid> grid, std::vector<T> values)
        : g_(std::move(grid)), v_(std::move(values)) {
        if (!g_) throw GridMismatch("GridPath: null grid");
        if (v_.size() != g_->points())
            throw GridMismatch("GridPath: value count != grid points");
        for (const T& x : v_)
            if (!x.finite()) throw NonFiniteOutput("GridPath: non-finite value");
    }

    const Grid& grid() const { return *g_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return g_; }
    std::size_t points() const { return v_.size(); }
    const T& value(std::size_t i) const {
        if (i >= v_.size()) throw IndexOutOfRange("GridPath::value: index out of range");
        return v_[i];
    }
    const std::vector<T>& values() const { return v_; }

    /// X_{t_i, t_j} = X_{t_j} - X_{t_i}; requires i <= j.
    T increment(std::size_t i, std::size_t j) const {
        if (i > j) throw IndexOutOfRange("GridPath::increment: requires i <= j");
        if (j >= v_.size()) throw IndexOutOfRange("GridPath::increment: index out of range");
        return v_[j] - v_[i];
    }

private:
    std::shared_ptr<const Grid> g_;
    std::vector<T> v_;
};

}  // namespace rrp
