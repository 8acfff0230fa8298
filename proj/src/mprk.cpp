#include "patankar/mprk.hpp"

#include <array>
#include <cmath>

namespace patankar {

namespace {

void require_positive(const Vec& v, Errc code, const char* what) {
    for (double x : v)
        if (!(x > 0.0)) fail(code, what);
}

/// sigma_j = (u_j)^e * (v_j)^(1-e), as exp-log of positive reals.
Vec fractional_blend(const Vec& u, const Vec& v, double e) {
    Vec s(u.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        s[j] = std::exp(e * std::log(u[j]) + (1.0 - e) * std::log(v[j]));
    return s;
}

Vec solve_stage(const PDSRates& rates, std::span<const Vec> stages,
                std::span<const double> weights, const Vec& sigma, const Vec& y_n, double dt) {
    const Matrix m = assemble_mp_system(rates, stages, weights, sigma, dt);
    return lu_solve(m, y_n);
}

}  // namespace

Matrix assemble_mp_system(const PDSRates& rates, std::span<const Vec> stage_values,
                          std::span<const double> weights, const Vec& sigma, double dt) {
    const std::size_t n = rates.dim();
    if (stage_values.size() != weights.size())
        fail(Errc::DimensionMismatch, "one weight per stage value required");
    for (const Vec& y : stage_values) require_positive(y, Errc::NonPositiveStage, "stage value must be positive");
    require_positive(sigma, Errc::NonPositiveSigma, "Patankar denominator must be positive");

    // Production and destruction are evaluated independently; the generic
    // rate interface does not assume d_ij = p_ji.
    Matrix m = Matrix::identity(n);
    for (std::size_t k = 0; k < stage_values.size(); ++k) {
        const double w = weights[k];
        if (w == 0.0) continue;
        const Matrix p = rates.production(stage_values[k]);
        const Matrix d = rates.destruction(stage_values[k]);
        for (std::size_t i = 0; i < n; ++i) {
            double drow = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                drow += d(i, j);
                if (i != j) m(i, j) -= dt * w * p(i, j) / sigma[j];
            }
            m(i, i) += dt * w * drow / sigma[i];
        }
    }
    return m;
}

Vec mpe_step(const PDSRates& rates, const Vec& y_n, double dt) {
    const std::array<Vec, 1> stages = {y_n};
    const std::array<double, 1> w = {1.0};
    return solve_stage(rates, stages, w, y_n, y_n, dt);
}

Vec mprk32_step(const PDSRates& rates, const Vec& y_n, double dt) {
    const Vec y1 = solve_stage(rates, std::array{y_n}, std::array{1.0}, y_n, y_n, dt);
    const Vec y2 =
        solve_stage(rates, std::array{y_n, y1}, std::array{0.25, 0.25}, y1, y_n, dt);
    return solve_stage(rates, std::array{y_n, y1, y2},
                       std::array{1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}, y1, y_n, dt);
}

double MPRK43Params::alpha0() {
    // Newton from the printed approximation; converges in a few steps.
    double a = 0.89255;
    for (int it = 0; it < 50; ++it) {
        const double f = ((18.0 * a - 27.0) * a + 12.0) * a - 2.0;
        const double df = (54.0 * a - 54.0) * a + 12.0;
        const double step = f / df;
        a -= step;
        if (std::abs(step) < 1e-15) break;
    }
    return a;
}

bool MPRK43Params::in_region(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) return false;
    const double a0 = alpha0();
    if (alpha >= 1.0 / 3.0 && alpha < 2.0 / 3.0)
        return 2.0 / 3.0 <= beta && beta <= 3.0 * alpha * (1.0 - alpha);
    if (alpha >= 2.0 / 3.0 && alpha < a0)
        return 3.0 * alpha * (1.0 - alpha) <= beta && beta <= 2.0 / 3.0;
    if (alpha >= a0)
        return (3.0 * alpha - 2.0) / (6.0 * alpha - 3.0) <= beta && beta <= 2.0 / 3.0;
    return false;
}

MPRK43Params MPRK43Params::make(double alpha, double beta) {
    if (!in_region(alpha, beta))
        fail(Errc::InvalidParams, "(alpha, beta) outside the admissible region");
    if (alpha == beta || alpha == 0.0 || alpha == 2.0 / 3.0)
        fail(Errc::DegenerateParams, "tableau degenerates at alpha = beta or alpha in {0, 2/3}");

    MPRK43Params r{};
    r.alpha = alpha;
    r.beta = beta;
    r.a21 = alpha;
    const double den3 = alpha * (2.0 - 3.0 * alpha);
    r.a31 = (3.0 * alpha * beta * (1.0 - alpha) - beta * beta) / den3;
    r.a32 = beta * (beta - alpha) / den3;
    r.b1 = 1.0 + (2.0 - 3.0 * (alpha + beta)) / (6.0 * alpha * beta);
    r.b2 = (3.0 * beta - 2.0) / (6.0 * alpha * (beta - alpha));
    r.b3 = (2.0 - 3.0 * alpha) / (6.0 * beta * (beta - alpha));
    r.p = 3.0 * r.a21 * (r.a31 + r.a32) * r.b3;
    r.q = r.a21;
    r.beta2 = 1.0 / (2.0 * r.a21);
    r.beta1 = 1.0 - r.beta2;

    if (std::abs(r.b1 + r.b2 + r.b3 - 1.0) > 1e-13)
        fail(Errc::InvalidParams, "b-row does not sum to 1");
    return r;
}

MPRK43GammaParams MPRK43GammaParams::make(double gamma) {
    if (!(gamma >= 3.0 / 8.0 && gamma <= 3.0 / 4.0))
        fail(Errc::InvalidParams, "gamma must lie in [3/8, 3/4]");
    MPRK43GammaParams r{};
    r.gamma = gamma;
    r.a21 = 2.0 / 3.0;
    r.a31 = 2.0 / 3.0 - 1.0 / (4.0 * gamma);
    r.a32 = 1.0 / (4.0 * gamma);
    r.b1 = 0.25;
    r.b2 = 0.75 - gamma;
    r.b3 = gamma;
    r.p = 4.0 * gamma / 3.0;
    r.q = 2.0 / 3.0;
    r.beta1 = 0.25;
    r.beta2 = 0.75;
    return r;
}

namespace {

template <class Params>
Vec four_stage_step(const Params& c, const PDSRates& rates, const Vec& y_n, double dt) {
    const Vec y1 = solve_stage(rates, std::array{y_n}, std::array{c.a21}, y_n, y_n, dt);
    const Vec sig2 = fractional_blend(y1, y_n, 1.0 / c.p);
    const Vec y2 = solve_stage(rates, std::array{y_n, y1}, std::array{c.a31, c.a32}, sig2, y_n, dt);
    const Vec sig3 = fractional_blend(y1, y_n, 1.0 / c.q);
    const Vec y3 =
        solve_stage(rates, std::array{y_n, y1}, std::array{c.beta1, c.beta2}, sig3, y_n, dt);
    return solve_stage(rates, std::array{y_n, y1, y2}, std::array{c.b1, c.b2, c.b3}, y3, y_n, dt);
}

}  // namespace

Vec mprk43ab_step(const MPRK43Params& params, const PDSRates& rates, const Vec& y_n, double dt) {
    return four_stage_step(params, rates, y_n, dt);
}

Vec mprk43g_step(const MPRK43GammaParams& params, const PDSRates& rates, const Vec& y_n,
                 double dt) {
    return four_stage_step(params, rates, y_n, dt);
}

}  // namespace patankar
