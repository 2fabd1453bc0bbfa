#include "rrp/rough_path.hpp"

#include <cmath>

namespace rrp {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 1.0 / 3.0 && alpha <= 0.5))
        throw InvalidExponent("reduced rough path: alpha must lie in (1/3, 1/2]");
}

}  // namespace

ReducedRoughPath::ReducedRoughPath(double alpha, GridPath<Vec> path,
                                   std::vector<SymTensor2> second_level_steps)
    : alpha_(alpha), x_(std::move(path)), steps_(std::move(second_level_steps)) {
    require_alpha(alpha_);
    if (steps_.size() != x_.grid().steps())
        throw GridMismatch("ReducedRoughPath: one second-level value per grid step required");
    const std::size_t d = x_.value(0).dim();
    for (const auto& s : steps_) {
        if (s.dim() != d) throw DimensionMismatch("ReducedRoughPath: second-level dimension");
        if (!s.finite()) throw NonFiniteOutput("ReducedRoughPath: non-finite second level");
    }
    prefix_.reserve(steps_.size() + 1);
    prefix_.emplace_back(d);
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        SymTensor2 next = prefix_.back() + steps_[i] + sym_outer(x_.increment(0, i), x_.increment(i, i + 1));
        prefix_.push_back(std::move(next));
    }
}

SymTensor2 ReducedRoughPath::second_level(std::size_t i, std::size_t j) const {
    if (!(i < j)) throw IndexOutOfRange("second_level: requires i < j");
    if (j >= x_.points()) throw IndexOutOfRange("second_level: index out of range");
    if (j == i + 1) return steps_[i];
    if (i == 0) return prefix_[j];
    return prefix_[j] - prefix_[i] - sym_outer(x_.increment(0, i), x_.increment(i, j));
}

SymTensor2 ReducedRoughPath::second_level_folded(std::size_t i, std::size_t j) const {
    if (!(i < j)) throw IndexOutOfRange("second_level_folded: requires i < j");
    if (j >= x_.points()) throw IndexOutOfRange("second_level_folded: index out of range");
    SymTensor2 acc = steps_[i];
    for (std::size_t m = i + 1; m < j; ++m)
        acc = acc + steps_[m] + sym_outer(x_.increment(i, m), x_.increment(m, m + 1));
    return acc;
}

double ReducedRoughPath::chen_defect(std::size_t i, std::size_t j, std::size_t k) const {
    if (!(i < j && j < k)) throw NonMonotoneTriple("chen_defect: requires i < j < k");
    if (k >= x_.points()) throw IndexOutOfRange("chen_defect: index out of range");
    SymTensor2 defect = second_level(i, k) - second_level(i, j) - second_level(j, k) -
                        sym_outer(x_.increment(i, j), x_.increment(j, k));
    return defect.norm();
}

TwoParamField<SymTensor2> ReducedRoughPath::second_level_field() const {
    return TwoParamField<SymTensor2>(
        grid_ptr(), [this](std::size_t i, std::size_t j) { return second_level(i, j); });
}

ReducedRoughPath geometric_lift(const GridPath<Vec>& x, double alpha) {
    require_alpha(alpha);
    std::vector<SymTensor2> steps;
    steps.reserve(x.grid().steps());
    for (std::size_t i = 0; i + 1 < x.points(); ++i) {
        Vec dx = x.increment(i, i + 1);
        steps.push_back(0.5 * sym_outer(dx, dx));
    }
    return ReducedRoughPath(alpha, x, std::move(steps));
}

ReducedRoughPath perturbed_lift(const ReducedRoughPath& base, const GridPath<SymTensor2>& phi) {
    if (!base.grid().same_times(phi.grid()))
        throw GridMismatch("perturbed_lift: phi must live on the base grid");
    if (phi.value(0).dim() != base.dim())
        throw DimensionMismatch("perturbed_lift: phi dimension mismatch");
    std::vector<SymTensor2> steps;
    steps.reserve(base.second_level_steps().size());
    for (std::size_t i = 0; i < base.second_level_steps().size(); ++i)
        steps.push_back(base.second_level_steps()[i] + phi.increment(i, i + 1));
    return ReducedRoughPath(base.alpha(), base.path(), std::move(steps));
}

GridPath<SymTensor2> ito_correction(const std::shared_ptr<const Grid>& grid, std::size_t dim) {
    std::vector<SymTensor2> values;
    values.reserve(grid->points());
    for (std::size_t i = 0; i < grid->points(); ++i) {
        SymTensor2 v(dim);
        for (std::size_t k = 0; k < dim; ++k) v.set(k, k, -0.5 * grid->time(i));
        values.push_back(std::move(v));
    }
    return GridPath<SymTensor2>(grid, std::move(values));
}

RrpNorms rrp_norm_at(const ReducedRoughPath& r, double exponent, const PairBudget& budget) {
    RrpNorms n;
    n.x_alpha = holder_seminorm(r.path(), exponent, budget).seminorm;
    n.s_2alpha = two_param_seminorm(r.second_level_field(), 2.0 * exponent, budget).seminorm;
    n.total = n.x_alpha + n.s_2alpha;
    return n;
}

RrpNorms rrp_norm(const ReducedRoughPath& r, const PairBudget& budget) {
    return rrp_norm_at(r, r.alpha(), budget);
}

double rrp_distance(const ReducedRoughPath& a, const ReducedRoughPath& b,
                    const PairBudget& budget) {
    if (a.alpha() != b.alpha())
        throw ExponentMismatch("rrp_distance: alpha mismatch");
    if (!a.grid().same_times(b.grid())) throw GridMismatch("rrp_distance: grid mismatch");
    if (a.dim() != b.dim()) throw DimensionMismatch("rrp_distance: dimension mismatch");
    const Grid& g = a.grid();
    const double alpha = a.alpha();
    const auto policy = budget.resolved(g.steps());

    auto first = detail::scan_pairs(g, policy, budget.threads, [&](std::size_t i, std::size_t j) {
        return holder_quotient((a.x_increment(i, j) - b.x_increment(i, j)).norm(), g.gap(i, j),
                               alpha);
    });
    auto second = detail::scan_pairs(g, policy, budget.threads, [&](std::size_t i, std::size_t j) {
        return holder_quotient((a.second_level(i, j) - b.second_level(i, j)).norm(), g.gap(i, j),
                               2.0 * alpha);
    });
    return std::max(first.value, 0.0) + std::max(second.value, 0.0);
}

ReducedRoughPath slice(const ReducedRoughPath& r, std::size_t a, std::size_t b) {
    if (!(a < b)) throw IndexOutOfRange("slice: requires a < b");
    if (b >= r.grid().points()) throw IndexOutOfRange("slice: index out of range");
    const double t0 = r.grid().time(a);
    std::vector<double> times;
    times.reserve(b - a + 1);
    for (std::size_t i = a; i <= b; ++i) times.push_back(r.grid().time(i) - t0);
    times.front() = 0.0;
    auto grid = Grid::make(std::move(times));

    std::vector<Vec> values(r.path().values().begin() + static_cast<std::ptrdiff_t>(a),
                            r.path().values().begin() + static_cast<std::ptrdiff_t>(b) + 1);
    std::vector<SymTensor2> steps(r.second_level_steps().begin() + static_cast<std::ptrdiff_t>(a),
                                  r.second_level_steps().begin() + static_cast<std::ptrdiff_t>(b));
    return ReducedRoughPath(r.alpha(), GridPath<Vec>(grid, std::move(values)), std::move(steps));
}

}  // namespace rrp
