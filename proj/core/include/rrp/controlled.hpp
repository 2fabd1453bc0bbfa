#pragma once

#include <memory>

#include "rrp/function.hpp"
#include "rrp/rough_path.hpp"

namespace rrp {

namespace detail {

inline Vec apply_deriv(const LinMap& a, const Vec& x) { return a.apply(x); }
inline LinMap apply_deriv(const BilinMap& b, const Vec& x) { return b.apply(x); }

void check_controlled_dims(const Vec& y0, const LinMap& yp0, std::size_t driver_dim);
void check_controlled_dims(const LinMap& y0, const BilinMap& yp0, std::size_t driver_dim);

}  // namespace detail

/// Reduced controlled rough path (Y, Y') relative to a fixed base X.
/// Two concrete kinds are used:
///   SolutionPath:  Y in W = R^n, Y' in L(V, W)          (n x d)
///   IntegrandPath: Y in L(V, W), Y' in L(V (x) V, W)    (n x d x d)
/// The remainder R^Y_{s,t} = Y_{s,t} - Y'_s X_{s,t} is derived lazily; it is
/// never stored densely unless a seminorm scan pays for the O(N^2) anyway.
/// Mixing paths controlled by different bases is a hard error.
template <class ValueT, class DerivT>
class ControlledPath {
public:
    /// Empty state for deferred initialization (reports, containers).
    ControlledPath() = default;

    ControlledPath(std::shared_ptr<const ReducedRoughPath> base, GridPath<ValueT> y,
                   GridPath<DerivT> y_prime)
        : base_(std::move(base)), y_(std::move(y)), yp_(std::move(y_prime)) {
        if (!base_) throw BaseMismatch("ControlledPath: null base");
        if (y_.grid_ptr() != base_->grid_ptr() || yp_.grid_ptr() != base_->grid_ptr())
            throw GridMismatch("ControlledPath: y and y' must live on the base grid");
        detail::check_controlled_dims(y_.value(0), yp_.value(0), base_->dim());
    }

    const std::shared_ptr<const ReducedRoughPath>& base() const { return base_; }
    const Grid& grid() const { return y_.grid(); }
    const GridPath<ValueT>& y() const { return y_; }
    const GridPath<DerivT>& y_prime() const { return yp_; }
    std::size_t points() const { return y_.points(); }

    /// R^Y_{t_i, t_j} = Y_{t_i, t_j} - Y'_{t_i} X_{t_i, t_j}; zero for i == j.
    ValueT remainder(std::size_t i, std::size_t j) const {
        return y_.increment(i, j) - detail::apply_deriv(yp_.value(i), base_->x_increment(i, j));
    }

    TwoParamField<ValueT> remainder_field() const {
        return TwoParamField<ValueT>(y_.grid_ptr(), [this](std::size_t i, std::size_t j) {
            return remainder(i, j);
        });
    }

private:
    std::shared_ptr<const ReducedRoughPath> base_;
    GridPath<ValueT> y_;
    GridPath<DerivT> yp_;
};

using SolutionPath = ControlledPath<Vec, LinMap>;
using IntegrandPath = ControlledPath<LinMap, BilinMap>;

struct ControlledNorms {
    double y_prime_alpha = 0.0;    // ||Y'||_alpha
    double remainder_2alpha = 0.0; // ||R^Y||_{2 alpha}
    double seminorm = 0.0;         // ||Y, Y'||_{X;alpha}
    double full_norm = 0.0;        // seminorm + |Y_0| + |Y'_0|
};

template <class ValueT, class DerivT>
ControlledNorms controlled_norms(const ControlledPath<ValueT, DerivT>& c,
                                 const PairBudget& budget = {}) {
    ControlledNorms n;
    const double alpha = c.base()->alpha();
    n.y_prime_alpha = holder_seminorm(c.y_prime(), alpha, budget).seminorm;
    n.remainder_2alpha = two_param_seminorm(c.remainder_field(), 2.0 * alpha, budget).seminorm;
    n.seminorm = n.y_prime_alpha + n.remainder_2alpha;
    n.full_norm = n.seminorm + c.y().value(0).norm() + c.y_prime().value(0).norm();
    return n;
}

/// Sup distance max_i (|Y_i - Y~_i| + |Y'_i - Y~'_i|); the cheap per-iteration
/// fixed-point metric.
double sup_distance(const SolutionPath& a, const SolutionPath& b);

/// F(Y) := (F(Y_t), DF(Y_t) Y'_t) for vector-valued F: W -> R^k.
SolutionPath compose(const SmoothFunction& f, const SolutionPath& c);

/// F(Y) for field-valued F: W -> L(V, E); the result is integrand-shaped,
/// with the Gubinelli derivative in L(V, L(V, E)).
IntegrandPath compose_field(const SmoothFunction& f, const SolutionPath& c);

/// Right-hand side of the composition estimate
///   ||F(Y)||_{X,alpha} <= C_{alpha,T} M ||F||_{C^2_b} (1 + ||X||_alpha)^2
///                         (|Y'_0| + ||Y, Y'||_{X,alpha})
/// with C_{alpha,T} = 2 (1 + T^alpha + T^{2 alpha}) (1 + M). Requires
/// ||Y, Y'||_{X,alpha} <= M and M >= 1; the inequality is guaranteed when M
/// also dominates |Y'_0| + ||Y, Y'||_{X,alpha}.
double compose_norm_bound(const SmoothFunction& f, const SolutionPath& c, double M,
                          const PairBudget& budget = {});

/// Pointwise product (U, U') = (Y Z, Y Z' + Z Y') for a scalar path a times a
/// vector path b (scalar x scalar included; arguments may come in either
/// order).
SolutionPath leibniz_product(const SolutionPath& a, const SolutionPath& b);

/// Right-hand side of the product estimate
///   ||U||_{X,alpha} <= C (|Y_0| + |Y'_0| + ||Y||)(|Z_0| + |Z'_0| + ||Z||),
/// with the proof chain assembled as
///   C = 4(1+T^a+T^{2a})(1+||X||_a) + 2(1+T^a) w + w^2,
///   w = (1+T^a)(1+||X||_a) - 1,
/// which dominates the measured seminorm for every driver norm. (A single
/// power of (1+||X||_a) does not suffice: the term ||Y||_a ||Z||_a in the
/// remainder estimate is genuinely quadratic in the driver norm.)
double leibniz_norm_bound(const SolutionPath& a, const SolutionPath& b,
                          const PairBudget& budget = {});

/// ||Y||_alpha <= T^alpha ||R^Y||_{2 alpha} + ||Y'||_inf ||X||_alpha:
/// the first-level regularity inherited from the Gubinelli decomposition,
/// evaluated with measured seminorms (dominates the measured ||Y||_alpha).
double first_level_alpha_bound(const SolutionPath& c, const PairBudget& budget = {});

/// Bounding box of the values of Y, the region where composition estimates
/// evaluate F and its derivatives.
ProbeBox value_hull(const GridPath<Vec>& y);

/// ||F||_{C^m_b} data used by composition and solver estimates: exact global
/// bounds when the built-in carries them, otherwise box bounds over the hull
/// of the path values.
CbNorm cb_norm_along(const SmoothFunction& f, const SolutionPath& c, int m,
                     std::size_t probe_count = 256);

}  // namespace rrp
