#pragma once

#include <span>

#include "patankar/pds.hpp"

namespace patankar {

/// System matrix of one Patankar-weighted stage. Solving M x = y^n gives the
/// stage (or update) value. For i != j,
///   M(i,j) = -dt * (sum_k w_k p_ij(y_k)) / sigma_j,
///   M(i,i) = 1 + dt * (sum_k w_k sum_j d_ij(y_k)) / sigma_i.
/// For nonnegative weights the result has nonpositive off-diagonals and unit
/// column sums, hence is a nonsingular M-matrix.
Matrix assemble_mp_system(const PDSRates& rates, std::span<const Vec> stage_values,
                          std::span<const double> weights, const Vec& sigma, double dt);

/// Modified Patankar-Euler: one stage, sigma = y^n.
Vec mpe_step(const PDSRates& rates, const Vec& y_n, double dt);

/// Three-solve second-order scheme with weights (1), (1/4,1/4), (1/6,1/6,2/3)
/// and sigma = y^n, y^(1), y^(1).
Vec mprk32_step(const PDSRates& rates, const Vec& y_n, double dt);

/// Two-parameter third-order family. `make` enforces the admissible
/// parameter region; the derived tableau entries and Patankar exponents are
/// stored explicitly.
struct MPRK43Params {
    double alpha, beta;
    double a21, a31, a32;
    double b1, b2, b3;
    double p, q, beta1, beta2;

    static MPRK43Params make(double alpha, double beta);
    static bool in_region(double alpha, double beta);
    /// Boundary abscissa of the parameter region, root of
    /// 18 a^3 - 27 a^2 + 12 a - 2 near 0.89255.
    static double alpha0();
};

Vec mprk43ab_step(const MPRK43Params& params, const PDSRates& rates, const Vec& y_n, double dt);

/// One-parameter third-order family with the fixed 2/3-abscissa tableau.
struct MPRK43GammaParams {
    double gamma;
    double a21, a31, a32;
    double b1, b2, b3;
    double p, q, beta1, beta2;

    static MPRK43GammaParams make(double gamma);
};

Vec mprk43g_step(const MPRK43GammaParams& params, const PDSRates& rates, const Vec& y_n,
                 double dt);

}  // namespace patankar
