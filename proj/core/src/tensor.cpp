#include "rrp/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace rrp {

namespace {

double sum_of_squares(const std::vector<double>& e) {
    double s = 0.0;
    for (double x : e) s += x * x;
    return s;
}

bool all_finite(const std::vector<double>& e) {
    return std::all_of(e.begin(), e.end(), [](double x) { return std::isfinite(x); });
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw DimensionMismatch(std::string(what) + ": size mismatch");
}

}  // namespace

// ---- Vec ----

double Vec::norm() const { return std::sqrt(sum_of_squares(e_)); }
bool Vec::finite() const { return all_finite(e_); }

Vec& Vec::operator+=(const Vec& o) {
    require_same_size(e_.size(), o.e_.size(), "Vec +=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}
Vec& Vec::operator-=(const Vec& o) {
    require_same_size(e_.size(), o.e_.size(), "Vec -=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}
Vec& Vec::operator*=(double c) {
    for (double& x : e_) x *= c;
    return *this;
}

Vec operator+(Vec a, const Vec& b) { a += b; return a; }
Vec operator-(Vec a, const Vec& b) { a -= b; return a; }
Vec operator*(double c, Vec a) { a *= c; return a; }

// ---- Tensor2 ----

Tensor2::Tensor2(std::size_t d, std::vector<double> entries) : d_(d), e_(std::move(entries)) {
    if (e_.size() != d * d) throw DimensionMismatch("Tensor2: entry count != d*d");
}

Tensor2 Tensor2::transposed() const {
    Tensor2 r(d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) r.at(j, i) = at(i, j);
    return r;
}

double Tensor2::norm() const { return std::sqrt(sum_of_squares(e_)); }
bool Tensor2::finite() const { return all_finite(e_); }

Tensor2& Tensor2::operator+=(const Tensor2& o) {
    require_same_size(e_.size(), o.e_.size(), "Tensor2 +=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}
Tensor2& Tensor2::operator-=(const Tensor2& o) {
    require_same_size(e_.size(), o.e_.size(), "Tensor2 -=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}
Tensor2& Tensor2::operator*=(double c) {
    for (double& x : e_) x *= c;
    return *this;
}

Tensor2 operator+(Tensor2 a, const Tensor2& b) { a += b; return a; }
Tensor2 operator-(Tensor2 a, const Tensor2& b) { a -= b; return a; }
Tensor2 operator*(double c, Tensor2 a) { a *= c; return a; }

// ---- SymTensor2 ----

SymTensor2 SymTensor2::from_symmetric(const Tensor2& t, double tol) {
    const std::size_t d = t.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(t.at(i, j) - t.at(j, i)) > tol)
                throw DimensionMismatch("SymTensor2::from_symmetric: input is not symmetric");
    SymTensor2 r(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) r.set(i, j, t.at(i, j));
    return r;
}

Tensor2 SymTensor2::as_tensor() const {
    Tensor2 r(d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) r.at(i, j) = at(i, j);
    return r;
}

double SymTensor2::norm() const { return std::sqrt(sum_of_squares(e_)); }
bool SymTensor2::finite() const { return all_finite(e_); }

SymTensor2& SymTensor2::operator+=(const SymTensor2& o) {
    require_same_size(e_.size(), o.e_.size(), "SymTensor2 +=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}
SymTensor2& SymTensor2::operator-=(const SymTensor2& o) {
    require_same_size(e_.size(), o.e_.size(), "SymTensor2 -=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}
SymTensor2& SymTensor2::operator*=(double c) {
    for (double& x : e_) x *= c;
    return *this;
}

SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { a += b; return a; }
SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { a -= b; return a; }
SymTensor2 operator*(double c, SymTensor2 a) { a *= c; return a; }

// ---- LinMap ----

LinMap::LinMap(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows * cols) throw DimensionMismatch("LinMap: entry count != rows*cols");
}

LinMap LinMap::identity(std::size_t d) {
    LinMap r(d, d);
    for (std::size_t i = 0; i < d; ++i) r.at(i, i) = 1.0;
    return r;
}

Vec LinMap::apply(const Vec& v) const {
    if (v.dim() != cols_) throw DimensionMismatch("LinMap::apply: column/vector mismatch");
    Vec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

double LinMap::norm() const { return std::sqrt(sum_of_squares(e_)); }
bool LinMap::finite() const { return all_finite(e_); }

LinMap& LinMap::operator+=(const LinMap& o) {
    require_same_size(e_.size(), o.e_.size(), "LinMap +=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}
LinMap& LinMap::operator-=(const LinMap& o) {
    require_same_size(e_.size(), o.e_.size(), "LinMap -=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}
LinMap& LinMap::operator*=(double c) {
    for (double& x : e_) x *= c;
    return *this;
}

LinMap operator+(LinMap a, const LinMap& b) { a += b; return a; }
LinMap operator-(LinMap a, const LinMap& b) { a -= b; return a; }
LinMap operator*(double c, LinMap a) { a *= c; return a; }

// ---- BilinMap ----

BilinMap::BilinMap(std::size_t rows, std::size_t m, std::vector<double> entries)
    : rows_(rows), m_(m), e_(std::move(entries)) {
    if (e_.size() != rows * m * m) throw DimensionMismatch("BilinMap: entry count != rows*m*m");
}

LinMap BilinMap::apply(const Vec& x) const {
    if (x.dim() != m_) throw DimensionMismatch("BilinMap::apply: inner/vector mismatch");
    LinMap r(rows_, m_);
    for (std::size_t k = 0; k < rows_; ++k)
        for (std::size_t b = 0; b < m_; ++b) {
            double s = 0.0;
            for (std::size_t a = 0; a < m_; ++a) s += at(k, a, b) * x[a];
            r.at(k, b) = s;
        }
    return r;
}

BilinMap BilinMap::inner_symmetrized() const {
    BilinMap r(rows_, m_);
    for (std::size_t k = 0; k < rows_; ++k)
        for (std::size_t a = 0; a < m_; ++a)
            for (std::size_t b = 0; b < m_; ++b)
                r.at(k, a, b) = 0.5 * (at(k, a, b) + at(k, b, a));
    return r;
}

double BilinMap::inner_antisym_defect() const {
    double s = 0.0;
    for (std::size_t k = 0; k < rows_; ++k)
        for (std::size_t a = 0; a < m_; ++a)
            for (std::size_t b = 0; b < m_; ++b) {
                const double anti = 0.5 * (at(k, a, b) - at(k, b, a));
                s += anti * anti;
            }
    return std::sqrt(s);
}

double BilinMap::norm() const { return std::sqrt(sum_of_squares(e_)); }
bool BilinMap::finite() const { return all_finite(e_); }

BilinMap& BilinMap::operator+=(const BilinMap& o) {
    require_same_size(e_.size(), o.e_.size(), "BilinMap +=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}
BilinMap& BilinMap::operator-=(const BilinMap& o) {
    require_same_size(e_.size(), o.e_.size(), "BilinMap -=");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}
BilinMap& BilinMap::operator*=(double c) {
    for (double& x : e_) x *= c;
    return *this;
}

BilinMap operator+(BilinMap a, const BilinMap& b) { a += b; return a; }
BilinMap operator-(BilinMap a, const BilinMap& b) { a -= b; return a; }
BilinMap operator*(double c, BilinMap a) { a *= c; return a; }

// ---- free operations ----

SymTensor2 symmetrize(const Tensor2& t) {
    const std::size_t d = t.dim();
    SymTensor2 r(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) r.set(i, j, 0.5 * (t.at(i, j) + t.at(j, i)));
    return r;
}

Tensor2 outer(const Vec& u, const Vec& v) {
    if (u.dim() != v.dim()) throw DimensionMismatch("outer: vector dimensions differ");
    const std::size_t d = u.dim();
    Tensor2 r(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) r.at(i, j) = u[i] * v[j];
    return r;
}

SymTensor2 sym_outer(const Vec& u, const Vec& v) { return symmetrize(outer(u, v)); }

Vec pair_bilinear(const BilinMap& b, const SymTensor2& s) {
    if (b.inner_dim() != s.dim()) throw DimensionMismatch("pair_bilinear: inner/tensor mismatch");
    const std::size_t m = s.dim();
    Vec r(b.rows());
    for (std::size_t k = 0; k < b.rows(); ++k) {
        double acc = 0.0;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t c = 0; c < m; ++c) acc += b.at(k, a, c) * s.at(a, c);
        r[k] = acc;
    }
    return r;
}

Vec apply_linmap(const LinMap& a, const Vec& v) { return a.apply(v); }

}  // namespace rrp
