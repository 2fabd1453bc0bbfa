#include "rrp/controlled.hpp"

#include <algorithm>
#include <cmath>

namespace rrp {

namespace detail {

void check_controlled_dims(const Vec& y0, const LinMap& yp0, std::size_t driver_dim) {
    if (yp0.rows() != y0.dim() || yp0.cols() != driver_dim)
        throw DimensionMismatch("ControlledPath: Y' must map V into W");
}

void check_controlled_dims(const LinMap& y0, const BilinMap& yp0, std::size_t driver_dim) {
    if (y0.cols() != driver_dim)
        throw DimensionMismatch("ControlledPath: integrand values must live in L(V, W)");
    if (yp0.rows() != y0.rows() || yp0.inner_dim() != driver_dim)
        throw DimensionMismatch("ControlledPath: integrand derivative must live in L(V(x)V, W)");
}

}  // namespace detail

double sup_distance(const SolutionPath& a, const SolutionPath& b) {
    if (a.base() != b.base()) throw BaseMismatch("sup_distance: different bases");
    double m = 0.0;
    for (std::size_t i = 0; i < a.points(); ++i) {
        const double d = (a.y().value(i) - b.y().value(i)).norm() +
                         (a.y_prime().value(i) - b.y_prime().value(i)).norm();
        m = std::max(m, d);
    }
    return m;
}

SolutionPath compose(const SmoothFunction& f, const SolutionPath& c) {
    if (f.codomain() != SmoothFunction::Codomain::Vector)
        throw DimensionMismatch("compose: expected a vector-valued function");
    if (f.domain_dim() != c.y().value(0).dim())
        throw DimensionMismatch("compose: domain dimension mismatch");
    const std::size_t k = f.out_rows();
    const std::size_t n = f.domain_dim();
    const std::size_t d = c.base()->dim();

    std::vector<Vec> values;
    std::vector<LinMap> derivs;
    values.reserve(c.points());
    derivs.reserve(c.points());
    for (std::size_t i = 0; i < c.points(); ++i) {
        const Vec& y = c.y().value(i);
        values.push_back(f.eval_vec(y));
        DenseTensor d1 = f.derivative(1, y);  // (k, n)
        const LinMap& yp = c.y_prime().value(i);
        LinMap out(k, d);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t a = 0; a < d; ++a) {
                double s = 0.0;
                for (std::size_t w = 0; w < n; ++w) s += d1[r * n + w] * yp.at(w, a);
                out.at(r, a) = s;
            }
        derivs.push_back(std::move(out));
    }
    return SolutionPath(c.base(), GridPath<Vec>(c.y().grid_ptr(), std::move(values)),
                        GridPath<LinMap>(c.y().grid_ptr(), std::move(derivs)));
}

IntegrandPath compose_field(const SmoothFunction& f, const SolutionPath& c) {
    if (f.codomain() != SmoothFunction::Codomain::Field)
        throw DimensionMismatch("compose_field: expected a field-valued function");
    if (f.domain_dim() != c.y().value(0).dim())
        throw DimensionMismatch("compose_field: domain dimension mismatch");
    const std::size_t d = c.base()->dim();
    if (f.out_cols() != d)
        throw DimensionMismatch("compose_field: field columns must match the driver dimension");
    const std::size_t k = f.out_rows();
    const std::size_t n = f.domain_dim();

    std::vector<LinMap> values;
    std::vector<BilinMap> derivs;
    values.reserve(c.points());
    derivs.reserve(c.points());
    for (std::size_t i = 0; i < c.points(); ++i) {
        const Vec& y = c.y().value(i);
        values.push_back(f.eval_field(y));
        DenseTensor d1 = f.derivative(1, y);  // (k, d, n)
        const LinMap& yp = c.y_prime().value(i);
        // Xi'(v) = DF(Y)[Y' v]: out[r][a][b] = sum_w D1[r][b][w] Y'[w][a];
        // the first inner slot a is the increment direction.
        BilinMap out(k, d);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    double s = 0.0;
                    for (std::size_t w = 0; w < n; ++w)
                        s += d1[(r * d + b) * n + w] * yp.at(w, a);
                    out.at(r, a, b) = s;
                }
        derivs.push_back(std::move(out));
    }
    return IntegrandPath(c.base(), GridPath<LinMap>(c.y().grid_ptr(), std::move(values)),
                         GridPath<BilinMap>(c.y().grid_ptr(), std::move(derivs)));
}

double first_level_alpha_bound(const SolutionPath& c, const PairBudget& budget) {
    const double alpha = c.base()->alpha();
    const double t_alpha = std::pow(c.grid().horizon(), alpha);
    const double r_2alpha = two_param_seminorm(c.remainder_field(), 2.0 * alpha, budget).seminorm;
    const double x_alpha = holder_seminorm(c.base()->path(), alpha, budget).seminorm;
    double yp_inf = 0.0;
    for (std::size_t i = 0; i < c.points(); ++i)
        yp_inf = std::max(yp_inf, c.y_prime().value(i).norm());
    return t_alpha * r_2alpha + yp_inf * x_alpha;
}

ProbeBox value_hull(const GridPath<Vec>& y) {
    const std::size_t n = y.value(0).dim();
    ProbeBox box;
    box.lo = y.value(0);
    box.hi = y.value(0);
    for (std::size_t i = 1; i < y.points(); ++i)
        for (std::size_t k = 0; k < n; ++k) {
            box.lo[k] = std::min(box.lo[k], y.value(i)[k]);
            box.hi[k] = std::max(box.hi[k], y.value(i)[k]);
        }
    return box;
}

CbNorm cb_norm_along(const SmoothFunction& f, const SolutionPath& c, int m,
                     std::size_t probe_count) {
    return cb_norm(f, m, value_hull(c.y()), probe_count);
}

double compose_norm_bound(const SmoothFunction& f, const SolutionPath& c, double M,
                          const PairBudget& budget) {
    if (!(M >= 1.0)) throw BoundPreconditionViolated("compose_norm_bound: M must be >= 1");
    const ControlledNorms cn = controlled_norms(c, budget);
    if (cn.seminorm > M)
        throw BoundPreconditionViolated("compose_norm_bound: seminorm exceeds M");
    const double alpha = c.base()->alpha();
    const double T = c.grid().horizon();
    const double x_alpha = holder_seminorm(c.base()->path(), alpha, budget).seminorm;
    const double f_c2b = cb_norm_along(f, c, 2).total;
    const double ta = std::pow(T, alpha);
    const double c_alpha_T = 2.0 * (1.0 + ta + ta * ta) * (1.0 + M);
    const double one_plus_x = 1.0 + x_alpha;
    return c_alpha_T * M * f_c2b * one_plus_x * one_plus_x *
           (c.y_prime().value(0).norm() + cn.seminorm);
}

SolutionPath leibniz_product(const SolutionPath& a, const SolutionPath& b) {
    if (a.base() != b.base()) throw BaseMismatch("leibniz_product: different bases");
    const SolutionPath* scalar = &a;
    const SolutionPath* vector = &b;
    if (scalar->y().value(0).dim() != 1) std::swap(scalar, vector);
    if (scalar->y().value(0).dim() != 1)
        throw DimensionMismatch("leibniz_product: one factor must be scalar");
    const std::size_t k = vector->y().value(0).dim();
    const std::size_t d = a.base()->dim();

    std::vector<Vec> values;
    std::vector<LinMap> derivs;
    values.reserve(a.points());
    derivs.reserve(a.points());
    for (std::size_t i = 0; i < a.points(); ++i) {
        const double s = scalar->y().value(i)[0];
        const Vec& z = vector->y().value(i);
        values.push_back(s * z);
        // U' = Y Z' + Z Y'.
        LinMap u = s * vector->y_prime().value(i);
        const LinMap& sp = scalar->y_prime().value(i);  // 1 x d
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c2 = 0; c2 < d; ++c2) u.at(r, c2) += z[r] * sp.at(0, c2);
        derivs.push_back(std::move(u));
    }
    return SolutionPath(a.base(), GridPath<Vec>(a.y().grid_ptr(), std::move(values)),
                        GridPath<LinMap>(a.y().grid_ptr(), std::move(derivs)));
}

double leibniz_norm_bound(const SolutionPath& a, const SolutionPath& b,
                          const PairBudget& budget) {
    if (a.base() != b.base()) throw BaseMismatch("leibniz_norm_bound: different bases");
    const double alpha = a.base()->alpha();
    const double T = a.grid().horizon();
    const double x_alpha = holder_seminorm(a.base()->path(), alpha, budget).seminorm;
    const ControlledNorms na = controlled_norms(a, budget);
    const ControlledNorms nb = controlled_norms(b, budget);
    const double ya = a.y().value(0).norm() + a.y_prime().value(0).norm() + na.seminorm;
    const double zb = b.y().value(0).norm() + b.y_prime().value(0).norm() + nb.seminorm;
    const double u = std::pow(T, alpha);
    const double w = (1.0 + u) * (1.0 + x_alpha) - 1.0;
    const double factor =
        4.0 * (1.0 + u + u * u) * (1.0 + x_alpha) + 2.0 * (1.0 + u) * w + w * w;
    return factor * ya * zb;
}

}  // namespace rrp
