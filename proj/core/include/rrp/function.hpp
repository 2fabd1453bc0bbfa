#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rrp/tensor.hpp"

namespace rrp {

/// Flat dense tensor of arbitrary small rank; holds derivative values
/// D^m F(y). Kept local to the function model (the algebra layer stays at
/// order <= 2 plus BilinMap).
class DenseTensor {
public:
    DenseTensor() = default;
    explicit DenseTensor(std::vector<std::size_t> shape);
    DenseTensor(std::vector<std::size_t> shape, std::vector<double> data);

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t size() const { return data_.size(); }
    double operator[](std::size_t flat) const { return data_[flat]; }
    double& operator[](std::size_t flat) { return data_[flat]; }
    const std::vector<double>& data() const { return data_; }

    double norm() const;
    bool finite() const;

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

/// Axis-aligned probe box for sup-norm estimation.
struct ProbeBox {
    Vec lo;
    Vec hi;
    static ProbeBox centered(const Vec& center, double radius);
};

/// Deterministic low-discrepancy (Halton) probe set inside a box.
std::vector<Vec> halton_probes(const ProbeBox& box, std::size_t count);

/// C^m function model with analytic evaluators for F, DF, D^2F, D^3F.
///
/// Codomain shapes:
///   Vector:  F: R^n -> R^k;        D^m F has shape (k, n, ..., n)
///   Field:   F: R^n -> L(V, W)     (out_rows x out_cols matrices);
///            D^m F has shape (out_rows, out_cols, n, ..., n)
///
/// Derivatives are part of the definition (no automatic differentiation);
/// fd_check validates them against central finite differences.
class SmoothFunction {
public:
    enum class Codomain { Vector, Field };
    using Evaluator = std::function<DenseTensor(const Vec&)>;

    struct Init {
        std::string name;
        std::size_t domain_dim = 1;
        Codomain codomain = Codomain::Vector;
        std::size_t out_rows = 1;
        std::size_t out_cols = 1;  // Field only
        int declared_order = 3;
        std::array<Evaluator, 4> evaluators{};  // F, DF, D2F, D3F
        /// Exact sup norms over all of R^n per order 0..declared_order;
        /// empty when the function is not globally bounded.
        std::vector<double> global_bounds;
        /// Exact box-relative bounds (e.g. linear fields); optional.
        std::function<std::vector<double>(const ProbeBox&, int)> box_bounds;
    };

    explicit SmoothFunction(Init init);

    const std::string& name() const { return init_.name; }
    std::size_t domain_dim() const { return init_.domain_dim; }
    Codomain codomain() const { return init_.codomain; }
    std::size_t out_rows() const { return init_.out_rows; }
    std::size_t out_cols() const { return init_.out_cols; }
    int declared_order() const { return init_.declared_order; }
    bool globally_bounded() const { return !init_.global_bounds.empty(); }

    /// D^order F(y); order 0 is F itself.
    DenseTensor derivative(int order, const Vec& y) const;

    Vec eval_vec(const Vec& y) const;      // Codomain::Vector
    LinMap eval_field(const Vec& y) const; // Codomain::Field

    const std::vector<double>& global_bounds() const { return init_.global_bounds; }
    std::vector<double> box_exact_bounds(const ProbeBox& box, int m) const;
    bool has_box_bounds() const { return static_cast<bool>(init_.box_bounds); }

private:
    Init init_;
    std::vector<std::size_t> expected_shape(int order) const;
};

/// ||F||_{C^m_b} data: per-order sup estimates and their sum.
struct CbNorm {
    std::vector<double> per_order;  // ||F||_inf, ||DF||_inf, ...
    double total = 0.0;
    ProbeBox probe_box;
    std::size_t probe_count = 0;
    bool exact = false;  // true when analytic bounds were returned, probing skipped
};

/// Per-order sups over the box through a deterministic Halton probe set;
/// built-ins with known analytic bounds return those and skip probing.
CbNorm cb_norm(const SmoothFunction& f, int m, const ProbeBox& box, std::size_t probe_count = 128);

/// Central finite differences of the order-(order-1) evaluator against the
/// supplied order evaluator; returns the max relative error over the probes
/// (relative to the FD value, floored at 1).
double fd_check(const SmoothFunction& f, int order, const std::vector<Vec>& probes,
                double h = 1e-5);

// ---- built-in catalog ----

SmoothFunction make_sin_field();            // n=d=1, F(y) = sin y, C^inf_b
SmoothFunction make_tanh_field();           // n=d=1, F(y) = tanh y, C^inf_b
SmoothFunction make_damped_poly_field();    // n=d=1, F(y) = y exp(-y^2/2), C^inf_b
SmoothFunction make_constant_field(const LinMap& value);
/// F(y)[k][a] = sum_w A[k][a][w] y[w]; unbounded, carries exact box bounds.
SmoothFunction make_linear_field(const DenseTensor& coeff);
SmoothFunction make_linear_field_1d(double a);       // n=d=1, F(y) = a y
SmoothFunction make_rotation_field(std::size_t n, double omega);  // d=1, antisymmetric generator
/// Matrix field F[k][a](y) = amp sin(y[(k+a) mod n] + phase[k][a]),
/// phases drawn from a seeded counter generator; C^inf_b.
SmoothFunction make_sin_matrix_field(std::size_t n, std::size_t d, std::uint64_t seed,
                                     double amp = 0.5);
SmoothFunction make_tanh_matrix_field(std::size_t n, std::size_t d, std::uint64_t seed,
                                      double amp = 0.5);

SmoothFunction make_identity_vector(std::size_t n);  // f(y) = y
SmoothFunction make_square_scalar();                 // f(y) = y^2, n=k=1
SmoothFunction make_sin_vector();                    // f(y) = sin y, n=k=1
SmoothFunction make_constant_vector(const Vec& value);

/// Parses CLI field specs like "sin", "linear:a=1.0", "tanh_matrix:seed=7,amp=0.5",
/// "rotation:omega=1.0", "constant:c=0.25". n and d give the state/driver dims.
SmoothFunction parse_field_spec(const std::string& spec, std::size_t n, std::size_t d);

}  // namespace rrp
