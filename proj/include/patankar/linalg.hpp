#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "patankar/errors.hpp"

namespace patankar {

using Vec = std::vector<double>;
using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Dense row-major matrix. Small systems only; everything in this project is
/// at most 15x15 (Lagrange cap) or N<=8 (random property suites).
template <class T>
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, T value = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    /// Row-wise brace construction: Mat<double>{{1,2},{3,4}}.
    Mat(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) fail(Errc::DimensionMismatch, "ragged matrix initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }

    Mat& operator+=(const Mat& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Mat& operator*=(T s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, T s) { return a *= s; }
    friend Mat operator*(T s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) fail(Errc::DimensionMismatch, "matrix product shape mismatch");
        Mat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    [[nodiscard]] Mat transposed() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

  private:
    void require_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            fail(Errc::DimensionMismatch, "matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using Matrix = Mat<double>;
using CMatrix = Mat<Complex>;

Vec matvec(const Matrix& m, std::span<const double> x);
CVec matvec(const Matrix& m, std::span<const Complex> x);

double inf_norm(std::span<const double> v);
double inf_norm(const CVec& v);
/// Induced infinity norm (maximum absolute row sum).
double inf_norm(const Matrix& m);

/// LU factorization with partial pivoting. A pivot smaller than
/// pivot_tol_rel * |M|_inf raises Singular.
struct LuFactors {
    Matrix lu;
    std::vector<int> pivots;
};

LuFactors lu_factor(Matrix m, double pivot_tol_rel = 1e-14);
Vec lu_solve(const LuFactors& f, std::span<const double> b);
Vec lu_solve(const Matrix& m, std::span<const double> b);
Matrix lu_solve(const LuFactors& f, const Matrix& rhs);

/// Row-echelon rank with partial pivoting; pivots below tol_rel * |M|_inf are
/// treated as zero.
int rank_estimate(Matrix m, double tol_rel = 1e-10);

/// Basis of the nullspace of M (as rows of the result), via reduced row
/// echelon form with the same pivot threshold as rank_estimate.
std::vector<Vec> nullspace(Matrix m, double tol_rel = 1e-10);

/// Real polynomial in monomial basis, coefficients ascending in degree.
class Polynomial {
  public:
    Polynomial() : coeff_(1, 0.0) {}
    explicit Polynomial(Vec coefficients);

    [[nodiscard]] int degree() const { return static_cast<int>(coeff_.size()) - 1; }
    [[nodiscard]] const Vec& coefficients() const noexcept { return coeff_; }

    [[nodiscard]] double operator()(double x) const;

    Polynomial& operator+=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }

  private:
    Vec coeff_;
};

/// r-th Lagrange basis polynomial for the given nodes, by Vandermonde solve.
/// Nodes must be strictly increasing; at most 15 of them (conditioning cap).
Polynomial lagrange_basis(std::span<const double> nodes, int r);

/// Exact antiderivative evaluation of the integral of p over [a, b].
double integrate_polynomial(const Polynomial& p, double a, double b);

/// Horner evaluation of numer(z)/denom(z); PoleAt if |denom(z)| <= 1e-30.
Complex complex_rational_eval(std::span<const double> numer, std::span<const double> denom,
                              Complex z);

}  // namespace patankar
