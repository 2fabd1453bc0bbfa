#pragma once

#include <memory>
#include <vector>

#include "rrp/holder.hpp"

namespace rrp {

/// Reduced rough path X = (X, S): an alpha-Hoelder first level together with
/// a symmetric second level satisfying the reduced Chen relation
///   S_{s,t} - S_{s,u} - S_{u,t} = Sym(X_{s,u} (x) X_{u,t}).
///
/// S is stored per grid step and composed on demand through the Chen
/// relation, so consistency holds by construction and memory stays O(N d^2).
/// Prefix values S_{0,i} are precomputed, making arbitrary pair queries O(d^2)
/// via S_{i,j} = S_{0,j} - S_{0,i} - Sym(X_{0,i} (x) X_{i,j}).
class ReducedRoughPath {
public:
    ReducedRoughPath(double alpha, GridPath<Vec> path, std::vector<SymTensor2> second_level_steps);

    double alpha() const { return alpha_; }
    std::size_t dim() const { return x_.value(0).dim(); }
    const Grid& grid() const { return x_.grid(); }
    const std::shared_ptr<const Grid>& grid_ptr() const { return x_.grid_ptr(); }
    const GridPath<Vec>& path() const { return x_; }
    const std::vector<SymTensor2>& second_level_steps() const { return steps_; }

    Vec x_increment(std::size_t i, std::size_t j) const { return x_.increment(i, j); }

    /// S_{t_i, t_j} for i < j. Adjacent pairs return the stored step value.
    SymTensor2 second_level(std::size_t i, std::size_t j) const;

    /// Reference implementation: left fold of the Chen relation over the
    /// steps. Agrees with second_level up to accumulation roundoff.
    SymTensor2 second_level_folded(std::size_t i, std::size_t j) const;

    /// Frobenius norm of S_{ik} - S_{ij} - S_{jk} - Sym(X_{ij} (x) X_{jk})
    /// for i < j < k. Roundoff-level by construction here; meaningful as a
    /// validator for externally supplied dense second-level tables.
    double chen_defect(std::size_t i, std::size_t j, std::size_t k) const;

    TwoParamField<SymTensor2> second_level_field() const;

private:
    double alpha_;
    GridPath<Vec> x_;
    std::vector<SymTensor2> steps_;
    std::vector<SymTensor2> prefix_;  // prefix_[i] = S_{0,i}
};

/// Canonical symmetric enhancement S_{s,t} = 1/2 Sym(X_{s,t} (x) X_{s,t});
/// exact for bounded-variation paths by integration by parts, pathwise
/// well-defined for every sampled path.
ReducedRoughPath geometric_lift(const GridPath<Vec>& x, double alpha);

/// Additive perturbation S~_{s,t} = S_{s,t} + phi_t - phi_s. Increments of a
/// one-parameter function are additive, so the Chen relation is preserved.
ReducedRoughPath perturbed_lift(const ReducedRoughPath& base, const GridPath<SymTensor2>& phi);

/// phi_t = -(t/2) Id on the given grid: perturbing a geometric Brownian lift
/// by this phi yields the Ito enhancement S_{s,t} = 1/2 X (x) X - (t-s)/2 Id.
GridPath<SymTensor2> ito_correction(const std::shared_ptr<const Grid>& grid, std::size_t dim);

struct RrpNorms {
    double x_alpha = 0.0;   // ||X||_alpha
    double s_2alpha = 0.0;  // ||S||_{2 alpha}
    double total = 0.0;     // ||X||_alpha + ||S||_{2 alpha}
};

/// ||X||_alpha = d_alpha(X, 1) = ||X||_alpha + ||S||_{2 alpha}.
RrpNorms rrp_norm(const ReducedRoughPath& r, const PairBudget& budget = {});

/// Norms evaluated at an exponent other than the object's alpha (the solver
/// reads the driver at its beta regularity).
RrpNorms rrp_norm_at(const ReducedRoughPath& r, double exponent, const PairBudget& budget = {});

/// d_alpha(a, b): sup |X_{s,t} - X~_{s,t}|/(t-s)^a + sup |S - S~|/(t-s)^{2a}.
double rrp_distance(const ReducedRoughPath& a, const ReducedRoughPath& b,
                    const PairBudget& budget = {});

/// Restriction to grid indices [a, b], times shifted so the window starts at
/// 0. Increments and step values are unchanged.
ReducedRoughPath slice(const ReducedRoughPath& r, std::size_t a, std::size_t b);

}  // namespace rrp
