#include "rrp/integral.hpp"

#include <algorithm>
#include <cmath>

namespace rrp {

namespace {

/// Grid index strictly between i and j whose time is closest to the
/// midpoint of [t_i, t_j].
std::size_t midpoint_index(const Grid& g, std::size_t i, std::size_t j) {
    const double mid = 0.5 * (g.time(i) + g.time(j));
    const auto& t = g.times();
    auto it = std::lower_bound(t.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                               t.begin() + static_cast<std::ptrdiff_t>(j), mid);
    std::size_t m = static_cast<std::size_t>(it - t.begin());
    if (m >= j) m = j - 1;
    if (m > i + 1 && mid - t[m - 1] < t[m] - mid) --m;
    return m;
}

Vec germ_value(const IntegrandPath& c, std::size_t i, std::size_t j) {
    return apply_linmap(c.y().value(i), c.base()->x_increment(i, j)) +
           pair_bilinear(c.y_prime().value(i), c.base()->second_level(i, j));
}

}  // namespace

Germ germ(const IntegrandPath& c, std::size_t i, std::size_t j) {
    if (!(i < j)) throw IndexOutOfRange("germ: requires i < j");
    if (j >= c.points()) throw IndexOutOfRange("germ: index out of range");
    return Germ{i, j, germ_value(c, i, j)};
}

double sewing_constant(double alpha) {
    if (!(alpha > 1.0 / 3.0))
        throw InvalidExponent("sewing_constant: requires 3 alpha > 1");
    return 2.0 / (1.0 - std::pow(2.0, 1.0 - 3.0 * alpha));
}

GridPath<Vec> integrate_values(const IntegrandPath& c) {
    const Grid& g = c.grid();
    const std::size_t n = g.points();
    const std::size_t w = c.y().value(0).rows();

    // Compensated (Kahan) accumulation of per-step germs; a single
    // deterministic pass so additivity holds to roundoff at any N.
    std::vector<Vec> values;
    values.reserve(n);
    Vec sum(w), comp(w);
    values.push_back(sum);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Vec a = germ_value(c, i, i + 1);
        for (std::size_t k = 0; k < w; ++k) {
            const double y = a[k] - comp[k];
            const double t = sum[k] + y;
            comp[k] = (t - sum[k]) - y;
            sum[k] = t;
        }
        values.push_back(sum);
    }
    if (!sum.finite()) throw NonFiniteOutput("integrate: non-finite compensated sum");
    return GridPath<Vec>(c.y().grid_ptr(), std::move(values));
}

IntegralResult integrate(const IntegrandPath& c, const PairBudget& budget) {
    const Grid& g = c.grid();
    const std::size_t n = g.points();

    IntegralResult out;
    for (std::size_t i = 0; i < n; ++i)
        out.y_prime_antisym_defect =
            std::max(out.y_prime_antisym_defect, c.y_prime().value(i).inner_antisym_defect());

    out.values = integrate_values(c);

    // ||delta A||_{3 alpha} over the budgeted pairs, each split at the time
    // midpoint; adjacent pairs have no interior point and defect zero.
    const double expo = 3.0 * c.base()->alpha();
    auto best = detail::scan_pairs(g, budget.resolved(g.steps()), budget.threads,
                                   [&](std::size_t i, std::size_t j) {
                                       if (j <= i + 1) return 0.0;
                                       const std::size_t m = midpoint_index(g, i, j);
                                       const Vec defect = germ_value(c, i, j) -
                                                          germ_value(c, i, m) -
                                                          germ_value(c, m, j);
                                       return holder_quotient(defect.norm(), g.gap(i, j), expo);
                                   });
    out.germ_defect_3alpha = std::max(best.value, 0.0);
    return out;
}

SewingCertificate::SewingCertificate(const IntegrandPath& c, const PairBudget& budget)
    : c_(c), integral_(integrate(c, budget)) {
    const double alpha = c.base()->alpha();
    c_alpha_ = sewing_constant(alpha);
    x_alpha_ = holder_seminorm(c.base()->path(), alpha, budget).seminorm;
    s_2alpha_ = two_param_seminorm(c.base()->second_level_field(), 2.0 * alpha, budget).seminorm;
    yp_alpha_ = holder_seminorm(c.y_prime(), alpha, budget).seminorm;
    r_2alpha_ = two_param_seminorm(c.remainder_field(), 2.0 * alpha, budget).seminorm;
}

std::pair<double, double> SewingCertificate::at(std::size_t i, std::size_t j) const {
    if (!(i < j)) throw IndexOutOfRange("SewingCertificate::at: requires i < j");
    const Grid& g = c_.grid();
    const Vec lhs_vec = integral_.values.increment(i, j) - germ_value(c_, i, j);
    const double lhs = lhs_vec.norm();
    const double gap = g.gap(i, j);
    const double rhs = c_alpha_ * (x_alpha_ * r_2alpha_ + s_2alpha_ * yp_alpha_) *
                       std::pow(gap, 3.0 * c_.base()->alpha());
    return {lhs, rhs};
}

std::pair<double, double> local_error_certificate(const IntegrandPath& c, std::size_t i,
                                                  std::size_t j, const PairBudget& budget) {
    return SewingCertificate(c, budget).at(i, j);
}

SolutionPath integral_as_controlled(const IntegrandPath& c, const Vec& offset) {
    IntegralResult result = integrate(c);
    std::vector<Vec> values;
    values.reserve(c.points());
    for (std::size_t i = 0; i < c.points(); ++i) values.push_back(offset + result.values.value(i));
    return SolutionPath(c.base(), GridPath<Vec>(c.y().grid_ptr(), std::move(values)),
                        c.y());
}

SolutionPath integral_as_controlled(const IntegrandPath& c) {
    return integral_as_controlled(c, Vec(c.y().value(0).rows()));
}

double integral_norm_bound(const IntegrandPath& c, const PairBudget& budget) {
    const double alpha = c.base()->alpha();
    const double y_alpha = holder_seminorm(c.y(), alpha, budget).seminorm;
    double yp_inf = 0.0;
    for (std::size_t i = 0; i < c.points(); ++i)
        yp_inf = std::max(yp_inf, c.y_prime().value(i).norm());
    const double s_2alpha =
        two_param_seminorm(c.base()->second_level_field(), 2.0 * alpha, budget).seminorm;
    const double x_alpha = holder_seminorm(c.base()->path(), alpha, budget).seminorm;
    const double yp_alpha = holder_seminorm(c.y_prime(), alpha, budget).seminorm;
    const double r_2alpha = two_param_seminorm(c.remainder_field(), 2.0 * alpha, budget).seminorm;
    const double t_alpha = std::pow(c.grid().horizon(), alpha);
    return y_alpha + yp_inf * s_2alpha +
           sewing_constant(alpha) * t_alpha * (x_alpha * r_2alpha + s_2alpha * yp_alpha);
}

}  // namespace rrp
