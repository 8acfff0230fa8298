#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>

#include "patankar/mpdec.hpp"
#include "patankar/mprk.hpp"

namespace patankar {

/// Rational function R(z) = num(z)/den(z) with num[0] == den[0] != 0, so
/// that R(0) = 1. Coefficients ascend in degree and are kept exactly as
/// constructed (integer forms for the closed-form schemes).
class RationalStabilityFunction {
  public:
    RationalStabilityFunction(Vec num, Vec den);

    [[nodiscard]] const Vec& numerator() const noexcept { return num_; }
    [[nodiscard]] const Vec& denominator() const noexcept { return den_; }

    [[nodiscard]] Complex operator()(Complex z) const;

    /// Same function with leading coefficients scaled to num[0]=den[0]=1.
    [[nodiscard]] RationalStabilityFunction normalized() const;

    /// |num(iy)|^2 and |den(iy)|^2 as polynomials in y^2 (exact coefficient
    /// convolutions).
    [[nodiscard]] std::pair<Vec, Vec> abs_squared_on_imag_axis() const;

  private:
    Vec num_, den_;
};

/// R(z) = (z^3 + 18 z - 12) / (6 (1-z)^2 (z-2)), stored with the expanded
/// integer coefficients.
RationalStabilityFunction stability_mprk32();

/// Coefficient form of the two-parameter third-order family.
RationalStabilityFunction stability_mprk43ab(double alpha, double beta);

/// R(z) = (-5 z^4 + 7 z^3 + 23 z^2 - 42 z + 18) / (2 (2z-3)^2 (z-1)^2),
/// independent of gamma; stored with the expanded integer coefficients.
RationalStabilityFunction stability_mprk43g();

/// Unsimplified stage-recursion evaluations; independent route used to
/// cross-check the coefficient forms.
Complex mprk32_stage_recursion(Complex z);
Complex mprk43ab_stage_recursion(const MPRK43Params& params, Complex z);
Complex mprk43g_stage_recursion(const MPRK43GammaParams& params, Complex z);

/// c_0..c_7 of the sector criterion together with the pass flag for the five
/// sign conditions (c2..c6 <= 0).
struct ConditionReport {
    double alpha, beta;
    std::array<double, 8> c;
    bool pass;
    /// |c7(alpha, 1/4) - (-alpha/12 + 1/36)| computed both ways; a self-test
    /// of the coefficient plumbing.
    double c7_quarter_residual;
};

ConditionReport check_mprk43ab_conditions(double alpha, double beta);

enum class RecursionMode {
    General,  // conjugate pair (z, conj z); normal matrices with y* = 1
    Reduced,  // real spectrum form with sum |theta|
};

/// Stability value R_p(z) of an MPDeC configuration via the two-index
/// recursion over (m, k).
Complex mpdec_stability(const MPDeCConfig& config, Complex z, RecursionMode mode);

/// Jacobian of the MPDeC step map at a positive steady state, by the exact
/// matrix-valued recursion with B = diag(y*) A^T diag(y*)^{-1}.
Matrix mpdec_jacobian(const MPDeCConfig& config, const LinearPDS& pds, const Vec& y_star,
                      double dt);

struct Window {
    double re_min, re_max, im_min, im_max;
};

using StabilityEvaluator = std::function<Complex(Complex)>;

/// Cell-centered sampling of |R| over a window; |R| >= 1 and poles are
/// classified unstable.
struct StabilityRaster {
    Window window;
    int nx, ny;
    std::vector<double> abs_r;      // row-major, ny rows of nx, NaN at poles
    std::vector<std::uint8_t> stable;

    [[nodiscard]] std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) +
               static_cast<std::size_t>(ix);
    }
    [[nodiscard]] Complex cell_center(int ix, int iy) const;
    [[nodiscard]] std::size_t unstable_count() const;
};

StabilityRaster stability_region_raster(const StabilityEvaluator& r, const Window& window,
                                        int nx, int ny);

/// First |R(-r)| = 1 crossing on the negative real axis: bracketing scan with
/// step 0.01 up to r = 200, then bisection to 1e-6. Empty result means no
/// crossing on the sampled ray.
std::optional<double> find_stability_threshold(const StabilityEvaluator& r, double r_max = 200.0,
                                               double bracket_step = 0.01);

/// dt bound |z*| / |lambda| implied by a threshold.
inline double dt_bound_from_threshold(double z_star, double lambda) {
    return std::abs(z_star) / std::abs(lambda);
}

}  // namespace patankar
