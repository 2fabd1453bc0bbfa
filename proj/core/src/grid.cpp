#include "rrp/grid.hpp"

#include <algorithm>
#include <cmath>

namespace rrp {

Grid::Grid(std::vector<double> times) : t_(std::move(times)) {
    if (t_.size() < 2) throw GridMismatch("Grid: need at least one step");
    if (t_.front() != 0.0) throw GridMismatch("Grid: t_0 must be 0");
    for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
        if (!(t_[i] < t_[i + 1])) throw GridMismatch("Grid: times must be strictly increasing");
    }
    for (double t : t_)
        if (!std::isfinite(t)) throw GridMismatch("Grid: non-finite time");
}

std::shared_ptr<const Grid> Grid::uniform(std::size_t steps, double horizon) {
    if (steps == 0) throw GridMismatch("Grid::uniform: need at least one step");
    if (!(horizon > 0.0)) throw GridMismatch("Grid::uniform: horizon must be positive");
    std::vector<double> t(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        t[i] = horizon * static_cast<double>(i) / static_cast<double>(steps);
    t[0] = 0.0;
    t[steps] = horizon;
    return std::make_shared<const Grid>(std::move(t));
}

std::shared_ptr<const Grid> Grid::make(std::vector<double> times) {
    return std::make_shared<const Grid>(std::move(times));
}

double Grid::time(std::size_t i) const {
    if (i >= t_.size()) throw IndexOutOfRange("Grid::time: index out of range");
    return t_[i];
}

double Grid::mesh() const {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < t_.size(); ++i) m = std::max(m, t_[i + 1] - t_[i]);
    return m;
}

double Grid::gap(std::size_t i, std::size_t j) const {
    if (i > j) throw IndexOutOfRange("Grid::gap: requires i <= j");
    if (j >= t_.size()) throw IndexOutOfRange("Grid::gap: index out of range");
    return t_[j] - t_[i];
}

}  // namespace rrp
