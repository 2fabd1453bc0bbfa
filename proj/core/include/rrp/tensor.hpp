#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "rrp/errors.hpp"

namespace rrp {

/// Dense coordinate algebra used throughout the library. Everything is a
/// small row-major double array with value semantics; dimensions are grid
/// dimensions d, n of the driver space V = R^d and state space W = R^n.
///
/// Norms are Euclidean on vectors and Frobenius on matrices/3-tensors, so
/// |A x| <= |A| |x| holds for every pairing below (Cauchy-Schwarz).

class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t d, double fill = 0.0) : e_(d, fill) {}
    Vec(std::initializer_list<double> init) : e_(init) {}
    static Vec zeros(std::size_t d) { return Vec(d); }

    std::size_t dim() const { return e_.size(); }
    double operator[](std::size_t i) const { return e_[i]; }
    double& operator[](std::size_t i) { return e_[i]; }
    const std::vector<double>& entries() const { return e_; }

    double norm() const;
    bool finite() const;

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec& operator*=(double c);

private:
    std::vector<double> e_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(double c, Vec a);

/// Order-2 tensor on V (d x d), not necessarily symmetric.
class Tensor2 {
public:
    Tensor2() = default;
    explicit Tensor2(std::size_t d, double fill = 0.0) : d_(d), e_(d * d, fill) {}
    Tensor2(std::size_t d, std::vector<double> entries);

    std::size_t dim() const { return d_; }
    double at(std::size_t i, std::size_t j) const { return e_[i * d_ + j]; }
    double& at(std::size_t i, std::size_t j) { return e_[i * d_ + j]; }
    const std::vector<double>& entries() const { return e_; }

    Tensor2 transposed() const;
    double norm() const;
    bool finite() const;

    Tensor2& operator+=(const Tensor2& o);
    Tensor2& operator-=(const Tensor2& o);
    Tensor2& operator*=(double c);

private:
    std::size_t d_ = 0;
    std::vector<double> e_;
};

Tensor2 operator+(Tensor2 a, const Tensor2& b);
Tensor2 operator-(Tensor2 a, const Tensor2& b);
Tensor2 operator*(double c, Tensor2 a);

/// Element of Sym(V (x) V). Stored as the full d x d array; symmetry is
/// enforced at construction and preserved by the arithmetic below.
class SymTensor2 {
public:
    SymTensor2() = default;
    explicit SymTensor2(std::size_t d) : d_(d), e_(d * d, 0.0) {}

    /// Accepts an exactly symmetric Tensor2 (validated entrywise).
    static SymTensor2 from_symmetric(const Tensor2& t, double tol = 0.0);

    std::size_t dim() const { return d_; }
    double at(std::size_t i, std::size_t j) const { return e_[i * d_ + j]; }
    const std::vector<double>& entries() const { return e_; }
    void set(std::size_t i, std::size_t j, double v) {
        e_[i * d_ + j] = v;
        e_[j * d_ + i] = v;
    }

    Tensor2 as_tensor() const;
    double norm() const;
    bool finite() const;

    SymTensor2& operator+=(const SymTensor2& o);
    SymTensor2& operator-=(const SymTensor2& o);
    SymTensor2& operator*=(double c);

private:
    std::size_t d_ = 0;
    std::vector<double> e_;

    friend SymTensor2 symmetrize(const Tensor2& t);
};

SymTensor2 operator+(SymTensor2 a, const SymTensor2& b);
SymTensor2 operator-(SymTensor2 a, const SymTensor2& b);
SymTensor2 operator*(double c, SymTensor2 a);

/// Element of L(V, W): rows index W (dimension n), columns index V (m).
class LinMap {
public:
    LinMap() = default;
    LinMap(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), e_(rows * cols, fill) {}
    LinMap(std::size_t rows, std::size_t cols, std::vector<double> entries);
    static LinMap identity(std::size_t d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    double& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const std::vector<double>& entries() const { return e_; }

    Vec apply(const Vec& v) const;
    double norm() const;
    bool finite() const;

    LinMap& operator+=(const LinMap& o);
    LinMap& operator-=(const LinMap& o);
    LinMap& operator*=(double c);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> e_;
};

LinMap operator+(LinMap a, const LinMap& b);
LinMap operator-(LinMap a, const LinMap& b);
LinMap operator*(double c, LinMap a);

/// Element of L(V (x) V, W), stored as rows x m x m with both inner slots
/// indexing V. at(k, a, b) is the coefficient of e_a (x) e_b in component k.
/// The first inner slot (a) is the increment direction: apply(x) is the
/// partial application u -> B(x (x) u) in L(V, W).
class BilinMap {
public:
    BilinMap() = default;
    BilinMap(std::size_t rows, std::size_t m, double fill = 0.0)
        : rows_(rows), m_(m), e_(rows * m * m, fill) {}
    BilinMap(std::size_t rows, std::size_t m, std::vector<double> entries);

    std::size_t rows() const { return rows_; }
    std::size_t inner_dim() const { return m_; }
    double at(std::size_t k, std::size_t a, std::size_t b) const {
        return e_[(k * m_ + a) * m_ + b];
    }
    double& at(std::size_t k, std::size_t a, std::size_t b) {
        return e_[(k * m_ + a) * m_ + b];
    }
    const std::vector<double>& entries() const { return e_; }

    /// Partial application in the first inner slot: result[k][b] = sum_a B[k][a][b] x[a].
    LinMap apply(const Vec& x) const;

    /// Symmetrization in the two V slots.
    BilinMap inner_symmetrized() const;
    /// Frobenius norm of B - inner_symmetrized(B); zero exactly when B
    /// satisfies the symmetry hypothesis of the reduced integral.
    double inner_antisym_defect() const;

    double norm() const;
    bool finite() const;

    BilinMap& operator+=(const BilinMap& o);
    BilinMap& operator-=(const BilinMap& o);
    BilinMap& operator*=(double c);

private:
    std::size_t rows_ = 0, m_ = 0;
    std::vector<double> e_;
};

BilinMap operator+(BilinMap a, const BilinMap& b);
BilinMap operator-(BilinMap a, const BilinMap& b);
BilinMap operator*(double c, BilinMap a);

/// Sym specialized to order 2: (T + T^t) / 2.
SymTensor2 symmetrize(const Tensor2& t);

/// result[i][j] = u[i] v[j].
Tensor2 outer(const Vec& u, const Vec& v);

/// symmetrize(outer(u, v)).
SymTensor2 sym_outer(const Vec& u, const Vec& v);

/// result[k] = sum_{a,b} b[k][a][b] s[a][b]. The antisymmetric part of b
/// does not contribute (s is symmetric).
Vec pair_bilinear(const BilinMap& b, const SymTensor2& s);

/// Matrix-vector action of L(V, W).
Vec apply_linmap(const LinMap& a, const Vec& v);

}  // namespace rrp
