#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rrp/grid.hpp"

namespace rrp {

/// Pair-enumeration policy for empirical sup estimators. The continuum sup
/// of a Hoelder quotient can only be probed on grid pairs; the policy states
/// exactly which pairs were probed so every reported constant is
/// reproducible.
struct PairBudget {
    enum class Policy { Auto, AllPairs, Dyadic };
    Policy policy = Policy::Auto;
    /// Auto switches from exact all-pairs to the O(N log N) dyadic set
    /// (i, i + 2^k) above this step count.
    std::size_t all_pairs_limit = 4096;
    unsigned threads = 1;

    Policy resolved(std::size_t steps) const {
        if (policy != Policy::Auto) return policy;
        return steps <= all_pairs_limit ? Policy::AllPairs : Policy::Dyadic;
    }
};

struct HolderReport {
    double exponent = 0.0;
    double seminorm = 0.0;
    /// Pair attaining the reported sup (lexicographic tie-break).
    std::size_t argmax_i = 0;
    std::size_t argmax_j = 0;
    std::string pair_budget;
};

/// |delta| / (t_j - t_i)^exponent, computed as |delta| * exp(-exponent*ln(gap))
/// to avoid pow underflow at very fine meshes.
inline double holder_quotient(double delta_norm, double gap, double exponent) {
    if (delta_norm == 0.0) return 0.0;
    return delta_norm * std::exp(-exponent * std::log(gap));
}

namespace detail {

struct PartialMax {
    double value = -1.0;
    std::size_t i = 0, j = 0;

    void consider(double q, std::size_t a, std::size_t b) {
        if (q > value || (q == value && (a < i || (a == i && b < j)))) {
            value = q;
            i = a;
            j = b;
        }
    }
    void merge(const PartialMax& o) {
        if (o.value >= 0.0) consider(o.value, o.i, o.j);
    }
};

/// Deterministic scan over the enumerated pair set. quotient_fn(i, j) must be
/// a pure function; chunks are merged in fixed order so the result does not
/// depend on the thread count.
template <class QuotientFn>
PartialMax scan_pairs(const Grid& g, PairBudget::Policy policy, unsigned threads,
                      QuotientFn&& quotient_fn) {
    const std::size_t n = g.points();
    std::vector<std::pair<std::size_t, std::size_t>> row_ranges;  // chunks of first index
    if (threads < 1) threads = 1;
    const std::size_t chunk = std::max<std::size_t>(1, n / (threads * 4) + 1);
    for (std::size_t lo = 0; lo < n; lo += chunk)
        row_ranges.emplace_back(lo, std::min(n, lo + chunk));

    auto scan_chunk = [&](std::size_t lo, std::size_t hi) {
        PartialMax best;
        if (policy == PairBudget::Policy::AllPairs) {
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    best.consider(quotient_fn(i, j), i, j);
        } else {
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t step = 1; i + step < n; step *= 2)
                    best.consider(quotient_fn(i, i + step), i, i + step);
        }
        return best;
    };

    if (threads == 1 || row_ranges.size() == 1) {
        PartialMax best;
        for (auto [lo, hi] : row_ranges) best.merge(scan_chunk(lo, hi));
        return best;
    }

    std::vector<std::future<PartialMax>> futs;
    futs.reserve(row_ranges.size());
    for (auto [lo, hi] : row_ranges)
        futs.push_back(std::async(std::launch::async, scan_chunk, lo, hi));
    PartialMax best;
    for (auto& f : futs) best.merge(f.get());
    return best;
}

inline std::string policy_name(PairBudget::Policy p) {
    return p == PairBudget::Policy::AllPairs ? "all-pairs" : "dyadic";
}

}  // namespace detail

/// Two-parameter field on grid pairs (i, j), i < j, evaluated lazily.
/// Used for second levels, remainders and error fields.
template <class T>
class TwoParamField {
public:
    TwoParamField(std::shared_ptr<const Grid> grid,
                  std::function<T(std::size_t, std::size_t)> eval)
        : g_(std::move(grid)), eval_(std::move(eval)) {
        if (!g_) throw GridMismatch("TwoParamField: null grid");
    }

    const Grid& grid() const { return *g_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return g_; }
    T operator()(std::size_t i, std::size_t j) const {
        if (!(i < j)) throw IndexOutOfRange("TwoParamField: requires i < j");
        if (j >= g_->points()) throw IndexOutOfRange("TwoParamField: index out of range");
        return eval_(i, j);
    }

private:
    std::shared_ptr<const Grid> g_;
    std::function<T(std::size_t, std::size_t)> eval_;
};

/// Empirical ||p||_alpha = sup |p_{t_j} - p_{t_i}| / (t_j - t_i)^alpha over
/// the budgeted pair set. alpha must lie in (0, 1].
template <class T>
HolderReport holder_seminorm(const GridPath<T>& p, double alpha, const PairBudget& budget = {}) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw InvalidExponent("holder_seminorm: alpha must lie in (0, 1]");
    const Grid& g = p.grid();
    const auto policy = budget.resolved(g.steps());
    auto best = detail::scan_pairs(g, policy, budget.threads, [&](std::size_t i, std::size_t j) {
        return holder_quotient(p.increment(i, j).norm(), g.gap(i, j), alpha);
    });
    HolderReport r;
    r.exponent = alpha;
    r.seminorm = best.value < 0.0 ? 0.0 : best.value;
    r.argmax_i = best.i;
    r.argmax_j = best.j;
    r.pair_budget = detail::policy_name(policy);
    return r;
}

/// Empirical sup |f(i, j)| / (t_j - t_i)^exponent over the budgeted pair set;
/// exponent in (0, 2] (used at 2*alpha and 3*alpha scales).
template <class T>
HolderReport two_param_seminorm(const TwoParamField<T>& f, double exponent,
                                const PairBudget& budget = {}) {
    if (!(exponent > 0.0 && exponent <= 2.0))
        throw InvalidExponent("two_param_seminorm: exponent must lie in (0, 2]");
    const Grid& g = f.grid();
    const auto policy = budget.resolved(g.steps());
    auto best = detail::scan_pairs(g, policy, budget.threads, [&](std::size_t i, std::size_t j) {
        return holder_quotient(f(i, j).norm(), g.gap(i, j), exponent);
    });
    HolderReport r;
    r.exponent = exponent;
    r.seminorm = best.value < 0.0 ? 0.0 : best.value;
    r.argmax_i = best.i;
    r.argmax_j = best.j;
    r.pair_budget = detail::policy_name(policy);
    return r;
}

/// ||Y||_inf <= |Y_0| + T^alpha ||Y||_alpha. The (0, j) quotients are always
/// included on top of the budgeted set, which keeps the bound above the
/// empirical sup norm under sparse enumeration policies.
template <class T>
double sup_bound_from_holder(const GridPath<T>& p, double alpha, const PairBudget& budget = {}) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw InvalidExponent("sup_bound_from_holder: alpha must lie in (0, 1]");
    const Grid& g = p.grid();
    double semi = holder_seminorm(p, alpha, budget).seminorm;
    for (std::size_t j = 1; j < g.points(); ++j)
        semi = std::max(semi, holder_quotient(p.increment(0, j).norm(), g.gap(0, j), alpha));
    return p.value(0).norm() + std::pow(g.horizon(), alpha) * semi;
}

/// Largest value norm on the grid (empirical sup norm).
template <class T>
double sup_norm(const GridPath<T>& p) {
    double m = 0.0;
    for (std::size_t i = 0; i < p.points(); ++i) m = std::max(m, p.value(i).norm());
    return m;
}

}  // namespace rrp
