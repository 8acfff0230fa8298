#pragma once

#include <random>

#include "patankar/pds.hpp"
#include "patankar/schemes.hpp"

namespace patankar::testing {

/// Central-difference Jacobian of a one-step map.
inline Matrix fd_jacobian(const StepFn& step, const Vec& at, double dt, double h) {
    const std::size_t n = at.size();
    Matrix j(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        Vec plus = at, minus = at;
        plus[col] += h;
        minus[col] -= h;
        const Vec fp = step(plus, dt);
        const Vec fm = step(minus, dt);
        for (std::size_t row = 0; row < n; ++row) j(row, col) = (fp[row] - fm[row]) / (2.0 * h);
    }
    return j;
}

inline double dot(const Vec& a, const Vec& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double sum(const Vec& a) {
    double acc = 0.0;
    for (double v : a) acc += v;
    return acc;
}

inline Vec random_positive_state(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> mag(-3.0, 1.0);
    Vec y(n);
    for (double& v : y) v = std::pow(10.0, mag(rng));
    return y;
}

/// log-uniform dt in [1e-3, 1e3].
inline double random_dt(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> e(-3.0, 3.0);
    return std::pow(10.0, e(rng));
}

/// Eigenvalues of a 2x2 matrix by the quadratic formula.
inline std::pair<Complex, Complex> eig2(const Matrix& m) {
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const Complex disc = std::sqrt(Complex(tr * tr - 4.0 * det));
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

}  // namespace patankar::testing
