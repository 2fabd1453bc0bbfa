#pragma once

#include <utility>

#include "rrp/controlled.hpp"

namespace rrp {

/// Germ of the reduced rough integral on [t_i, t_j]:
///   A_{i,j} = Y_{t_i} X_{t_i,t_j} + Y'_{t_i} S_{t_i,t_j}.
/// The second-level pairing goes through Sym(V (x) V), so only the symmetric
/// part of Y' contributes.
struct Germ {
    std::size_t s_index = 0;
    std::size_t t_index = 0;
    Vec value;
};

Germ germ(const IntegrandPath& c, std::size_t i, std::size_t j);

/// Dyadic sewing constant C_alpha = 2 / (1 - 2^{1 - 3 alpha}); finite exactly
/// in the regime 3 alpha > 1.
double sewing_constant(double alpha);

struct IntegralResult {
    /// I_{t_k} at every grid point, I_0 = 0; compensated single-pass sum of
    /// the per-step germs (the grid is the finest partition of sampled data).
    GridPath<Vec> values;
    /// Levels of dyadic splitting below the grid (0 = grid-level sum;
    /// resampling-based refinement lives in the convergence sweeps).
    int refinement_depth = 0;
    /// Empirical ||delta A||_{3 alpha} over budgeted pairs split at the time
    /// midpoint.
    double germ_defect_3alpha = 0.0;
    /// max_i ||Y'_i - Sym(Y'_i)||_F: distance of the integrand derivative
    /// from the symmetry hypothesis of the reduced integral.
    double y_prime_antisym_defect = 0.0;
};

IntegralResult integrate(const IntegrandPath& c, const PairBudget& budget = {});

/// Compensated prefix sums only, skipping the defect and symmetry
/// diagnostics; the workhorse inside the Picard iteration.
GridPath<Vec> integrate_values(const IntegrandPath& c);

/// Pairs (lhs, rhs) of the local sewing estimate at (i, j):
///   lhs = |I_{t_i,t_j} - A_{i,j}|,
///   rhs = C_alpha (||X||_a ||R^Y||_{2a} + ||S||_{2a} ||Y'||_a) (t_j - t_i)^{3a}.
/// Norms and the integral are measured once at construction.
class SewingCertificate {
public:
    explicit SewingCertificate(const IntegrandPath& c, const PairBudget& budget = {});

    std::pair<double, double> at(std::size_t i, std::size_t j) const;
    double c_alpha() const { return c_alpha_; }
    double x_alpha() const { return x_alpha_; }
    double s_2alpha() const { return s_2alpha_; }
    double y_prime_alpha() const { return yp_alpha_; }
    double remainder_2alpha() const { return r_2alpha_; }
    const IntegralResult& integral() const { return integral_; }

private:
    IntegrandPath c_;
    IntegralResult integral_;
    double c_alpha_, x_alpha_, s_2alpha_, yp_alpha_, r_2alpha_;
};

/// One-shot convenience for a single pair.
std::pair<double, double> local_error_certificate(const IntegrandPath& c, std::size_t i,
                                                  std::size_t j, const PairBudget& budget = {});

/// Z := (int_0^. Y dX + offset, Y): the integral packaged as a controlled
/// path with the integrand as its Gubinelli derivative.
SolutionPath integral_as_controlled(const IntegrandPath& c, const Vec& offset);
SolutionPath integral_as_controlled(const IntegrandPath& c);

/// Right-hand side of
///   ||Z||_{X,alpha} <= ||Y||_a + ||Y'||_inf ||S||_{2a}
///                      + C_a T^a (||X||_a ||R^Y||_{2a} + ||S||_{2a} ||Y'||_a),
/// evaluated with measured seminorms; dominates the measured seminorm of
/// integral_as_controlled for integrands satisfying the symmetry hypothesis.
double integral_norm_bound(const IntegrandPath& c, const PairBudget& budget = {});

}  // namespace rrp
