#include "patankar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace patankar {

Vec matvec(const Matrix& m, std::span<const double> x) {
    if (m.cols() != x.size()) fail(Errc::DimensionMismatch, "matvec shape mismatch");
    Vec y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

CVec matvec(const Matrix& m, std::span<const Complex> x) {
    if (m.cols() != x.size()) fail(Errc::DimensionMismatch, "matvec shape mismatch");
    CVec y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

double inf_norm(std::span<const double> v) {
    double n = 0.0;
    for (double x : v) n = std::max(n, std::abs(x));
    return n;
}

double inf_norm(const CVec& v) {
    double n = 0.0;
    for (const Complex& x : v) n = std::max(n, std::abs(x));
    return n;
}

double inf_norm(const Matrix& m) {
    double n = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
        n = std::max(n, row);
    }
    return n;
}

LuFactors lu_factor(Matrix m, double pivot_tol_rel) {
    if (m.rows() != m.cols()) fail(Errc::DimensionMismatch, "lu_factor needs a square matrix");
    const std::size_t n = m.rows();
    const double pivot_floor = pivot_tol_rel * inf_norm(m);
    std::vector<int> piv(n);
    std::iota(piv.begin(), piv.end(), 0);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(pr, k))) pr = i;
        if (std::abs(m(pr, k)) <= pivot_floor)
            fail(Errc::Singular, "pivot below threshold in LU factorization");
        if (pr != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pr, j));
            std::swap(piv[k], piv[pr]);
        }
        const double inv = 1.0 / m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = m(i, k) * inv;
            m(i, k) = l;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
        }
    }
    return {std::move(m), std::move(piv)};
}

Vec lu_solve(const LuFactors& f, std::span<const double> b) {
    const std::size_t n = f.lu.rows();
    if (b.size() != n) fail(Errc::DimensionMismatch, "lu_solve rhs size mismatch");
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[static_cast<std::size_t>(f.pivots[i])];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
        x[ii] /= f.lu(ii, ii);
    }
    return x;
}

Vec lu_solve(const Matrix& m, std::span<const double> b) { return lu_solve(lu_factor(m), b); }

Matrix lu_solve(const LuFactors& f, const Matrix& rhs) {
    const std::size_t n = f.lu.rows();
    if (rhs.rows() != n) fail(Errc::DimensionMismatch, "lu_solve rhs rows mismatch");
    Matrix x(n, rhs.cols());
    Vec col(n);
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, j);
        Vec s = lu_solve(f, col);
        for (std::size_t i = 0; i < n; ++i) x(i, j) = s[i];
    }
    return x;
}

int rank_estimate(Matrix m, double tol_rel) {
    const double floor = tol_rel * inf_norm(m);
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pr = rank;
        for (std::size_t i = rank + 1; i < rows; ++i)
            if (std::abs(m(i, col)) > std::abs(m(pr, col))) pr = i;
        if (std::abs(m(pr, col)) <= floor) continue;
        if (pr != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(rank, j), m(pr, j));
        const double inv = 1.0 / m(rank, col);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const double l = m(i, col) * inv;
            for (std::size_t j = col; j < cols; ++j) m(i, j) -= l * m(rank, j);
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

std::vector<Vec> nullspace(Matrix m, double tol_rel) {
    const double floor = tol_rel * inf_norm(m);
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pr = rank;
        for (std::size_t i = rank + 1; i < rows; ++i)
            if (std::abs(m(i, col)) > std::abs(m(pr, col))) pr = i;
        if (std::abs(m(pr, col)) <= floor) continue;
        if (pr != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(rank, j), m(pr, j));
        const double inv = 1.0 / m(rank, col);
        for (std::size_t j = col; j < cols; ++j) m(rank, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            const double l = m(i, col);
            if (l == 0.0) continue;
            for (std::size_t j = col; j < cols; ++j) m(i, j) -= l * m(rank, j);
        }
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    std::vector<Vec> basis;
    for (std::size_t col = 0; col < cols; ++col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(col)) !=
            pivot_col.end())
            continue;
        Vec v(cols, 0.0);
        v[col] = 1.0;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[static_cast<std::size_t>(pivot_col[r])] = -m(r, col);
        basis.push_back(std::move(v));
    }
    return basis;
}

Polynomial::Polynomial(Vec coefficients) : coeff_(std::move(coefficients)) {
    if (coeff_.empty()) coeff_.assign(1, 0.0);
    while (coeff_.size() > 1 && coeff_.back() == 0.0) coeff_.pop_back();
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (std::size_t k = coeff_.size(); k-- > 0;) acc = acc * x + coeff_[k];
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    Vec c = coeff_;
    if (o.coeff_.size() > c.size()) c.resize(o.coeff_.size(), 0.0);
    for (std::size_t k = 0; k < o.coeff_.size(); ++k) c[k] += o.coeff_[k];
    *this = Polynomial(std::move(c));
    return *this;
}

Polynomial lagrange_basis(std::span<const double> nodes, int r) {
    const std::size_t n = nodes.size();
    if (n < 2 || n > 15) fail(Errc::InvalidParams, "lagrange_basis supports 2..15 nodes");
    if (r < 0 || static_cast<std::size_t>(r) >= n)
        fail(Errc::InvalidParams, "lagrange_basis index out of range");
    for (std::size_t i = 1; i < n; ++i)
        if (!(nodes[i] > nodes[i - 1])) fail(Errc::DuplicateNodes, "nodes must strictly increase");

    // Vandermonde solve for the coefficients of phi_r: V^T c = e_r, with
    // V(i,j) = nodes[i]^j.
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            v(i, j) = p;
            p *= nodes[i];
        }
    }
    Vec e(n, 0.0);
    e[static_cast<std::size_t>(r)] = 1.0;
    return Polynomial(lu_solve(v, e));
}

double integrate_polynomial(const Polynomial& p, double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b))
        fail(Errc::InvalidParams, "integration bounds must be finite");
    const Vec& c = p.coefficients();
    double acc = 0.0;
    double pa = a, pb = b;
    for (std::size_t j = 0; j < c.size(); ++j) {
        acc += c[j] * (pb - pa) / static_cast<double>(j + 1);
        pa *= a;
        pb *= b;
    }
    return acc;
}

Complex complex_rational_eval(std::span<const double> numer, std::span<const double> denom,
                              Complex z) {
    auto horner = [&](std::span<const double> c) {
        Complex acc = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
        return acc;
    };
    const Complex den = horner(denom);
    if (std::abs(den) <= 1e-30) fail(Errc::PoleAt, "denominator vanishes at evaluation point");
    return horner(numer) / den;
}

}  // namespace patankar
