#include "patankar/stability.hpp"

#include <cmath>
#include <limits>

namespace patankar {

RationalStabilityFunction::RationalStabilityFunction(Vec num, Vec den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.empty() || den_.empty() || num_[0] != den_[0] || num_[0] == 0.0)
        fail(Errc::InvalidParams, "stability function requires num[0] == den[0] != 0");
}

Complex RationalStabilityFunction::operator()(Complex z) const {
    return complex_rational_eval(num_, den_, z);
}

RationalStabilityFunction RationalStabilityFunction::normalized() const {
    Vec n = num_, d = den_;
    const double s = 1.0 / num_[0];
    for (double& v : n) v *= s;
    for (double& v : d) v *= s;
    return {std::move(n), std::move(d)};
}

std::pair<Vec, Vec> RationalStabilityFunction::abs_squared_on_imag_axis() const {
    // p(iy) = (even part) + i (odd part); |p(iy)|^2 collects the products
    // c_j c_k (-1)^((j-k)/2 rounded) ... done directly as a convolution with
    // alternating signs: coefficient of y^(j+k) gets c_j c_k i^j conj(i^k).
    auto build = [](const Vec& c) {
        Vec out(2 * c.size() - 1, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j)
            for (std::size_t k = 0; k < c.size(); ++k) {
                const std::size_t s = j + k;
                if (s % 2 != 0) continue;  // odd powers cancel in |.|^2
                // i^j * conj(i)^k is real (+-1) for even j+k.
                const int diff = static_cast<int>(j) - static_cast<int>(k);
                const int phase = ((diff % 4) + 4) % 4;
                const double sign = (phase == 0) ? 1.0 : -1.0;  // phase 2 -> -1
                out[s] += sign * c[j] * c[k];
            }
        Vec even(out.size() / 2 + 1);
        for (std::size_t s = 0; s < even.size(); ++s) even[s] = out[2 * s];
        return even;
    };
    return {build(num_), build(den_)};
}

RationalStabilityFunction stability_mprk32() {
    // 6 (1-z)^2 (z-2) = 6 z^3 - 24 z^2 + 30 z - 12.
    return {{-12.0, 18.0, 0.0, 1.0}, {-12.0, 30.0, -24.0, 6.0}};
}

RationalStabilityFunction stability_mprk43ab(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha == beta || alpha == 0.0 ||
        alpha == 2.0 / 3.0)
        fail(Errc::DegenerateParams, "stability coefficients degenerate");
    const double a = alpha, b = beta;
    Vec num = {1.0, -(1.0 + a + b), a * b + a + b - 0.5, -a * b + 0.5 * (a + b) + 1.0 / 6.0,
               -(1.0 / 6.0 + (b - 0.5) * a)};
    Vec den = {1.0, -(a + b + 2.0), (b + 2.0) * a + 2.0 * b + 1.0, -(a + b + 2.0 * a * b),
               a * b};
    return {std::move(num), std::move(den)};
}

RationalStabilityFunction stability_mprk43g() {
    // 2 (2z-3)^2 (z-1)^2 = 8 z^4 - 40 z^3 + 74 z^2 - 60 z + 18.
    return {{18.0, -42.0, 23.0, 7.0, -5.0}, {18.0, -60.0, 74.0, -40.0, 8.0}};
}

Complex mprk32_stage_recursion(Complex z) {
    const Complex r1 = 1.0 / (1.0 - z);
    const Complex inner = 1.0 + z / 4.0 - (z / 4.0) * r1;
    return (1.0 + z / 6.0 - (5.0 * z / 6.0) * r1 - (2.0 * z / 3.0) / (z / 2.0 - 1.0) * inner) /
           (1.0 - z);
}

namespace {

template <class Params>
Complex four_stage_recursion(const Params& c, Complex z) {
    const double csum = c.a31 + c.a32;
    const Complex r1 = 1.0 / (1.0 - c.a21 * z);
    const Complex r2 = (1.0 + z * ((1.0 / c.p - 1.0) * csum + c.a31) +
                        z * (-csum / c.p + c.a32) * r1) /
                       (1.0 - csum * z);
    const Complex r3 =
        (1.0 + z * (1.0 / c.q - 1.0 + c.beta1) + z * (-1.0 / c.q + c.beta2) * r1) / (1.0 - z);
    return (1.0 + c.b1 * z + c.b2 * z * r1 + c.b3 * z * r2 - z * r3) / (1.0 - z);
}

}  // namespace

Complex mprk43ab_stage_recursion(const MPRK43Params& params, Complex z) {
    return four_stage_recursion(params, z);
}

Complex mprk43g_stage_recursion(const MPRK43GammaParams& params, Complex z) {
    return four_stage_recursion(params, z);
}

ConditionReport check_mprk43ab_conditions(double alpha, double beta) {
    const RationalStabilityFunction r = stability_mprk43ab(alpha, beta);
    const Vec& n = r.numerator();
    const Vec& d = r.denominator();
    ConditionReport rep{};
    rep.alpha = alpha;
    rep.beta = beta;
    rep.c[0] = d[1] - n[1];
    rep.c[1] = n[1] * n[1] - d[1] * d[1];
    rep.c[2] = -n[1] * n[2] + d[1] * d[2] + n[3] - d[3];
    rep.c[3] = n[2] * n[2] - d[2] * d[2] - 2.0 * n[4] + 2.0 * d[4];
    rep.c[4] = n[1] * n[4] - n[2] * n[3] - d[1] * d[4] + d[2] * d[3];
    rep.c[5] = n[3] * n[3] - d[3] * d[3];
    rep.c[6] = d[3] * d[4] - n[3] * n[4];
    rep.c[7] = n[4] * n[4] - d[4] * d[4];
    rep.pass = rep.c[2] <= 0.0 && rep.c[3] <= 0.0 && rep.c[4] <= 0.0 && rep.c[5] <= 0.0 &&
               rep.c[6] <= 0.0;

    // c7 at beta = 1/4 has the closed form -alpha/12 + 1/36.
    const double n4q = -(1.0 / 6.0 + (0.25 - 0.5) * alpha);
    const double d4q = alpha * 0.25;
    rep.c7_quarter_residual =
        std::abs((n4q * n4q - d4q * d4q) - (-alpha / 12.0 + 1.0 / 36.0));
    return rep;
}

namespace {

struct ThetaSums {
    double plus, minus;
};

}  // namespace

Complex mpdec_stability(const MPDeCConfig& config, Complex z, RecursionMode mode) {
    const ThetaTable& th = config.theta;
    const int m_count = config.subintervals();
    const int sweeps = config.corrections;
    const Complex zb = std::conj(z);

    auto denom_term = [&](int m) -> Complex {
        if (mode == RecursionMode::Reduced) return z * th.sum_abs(m);
        return z * th.sum_plus(m) - zb * th.sum_minus(m);
    };

    CVec prev(static_cast<std::size_t>(m_count) + 1);
    prev[0] = 1.0;
    for (int m = 1; m <= m_count; ++m) {
        Complex num;
        if (mode == RecursionMode::Reduced)
            num = 1.0 + 2.0 * z * th.sum_minus(m);
        else
            num = 1.0 + (z + zb) * th.sum_minus(m);
        const Complex den = 1.0 - denom_term(m);
        if (std::abs(den) <= 1e-30) fail(Errc::PoleAt, "stability recursion pole");
        prev[static_cast<std::size_t>(m)] = num / den;
    }
    CVec cur(prev.size());
    cur[0] = 1.0;
    for (int k = 2; k <= sweeps; ++k) {
        for (int m = 1; m <= m_count; ++m) {
            Complex acc = 1.0 + th.theta(0, m) * z;
            for (int r = 1; r <= m_count; ++r) {
                if (r == m) continue;
                acc += z * th.theta(r, m) * prev[static_cast<std::size_t>(r)];
            }
            acc -= (denom_term(m) - z * th.theta(m, m)) * prev[static_cast<std::size_t>(m)];
            const Complex den = 1.0 - denom_term(m);
            if (std::abs(den) <= 1e-30) fail(Errc::PoleAt, "stability recursion pole");
            cur[static_cast<std::size_t>(m)] = acc / den;
        }
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(m_count)];
}

Matrix mpdec_jacobian(const MPDeCConfig& config, const LinearPDS& pds, const Vec& y_star,
                      double dt) {
    const std::size_t n = pds.dim();
    if (y_star.size() != n) fail(Errc::DimensionMismatch, "steady state size mismatch");
    for (double v : y_star)
        if (!(v > 0.0)) fail(Errc::NonPositiveState, "steady state must be positive");

    const Matrix& a = pds.matrix();
    // B = diag(y*) A^T diag(y*)^{-1}
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = y_star[i] * a(j, i) / y_star[j];

    const ThetaTable& th = config.theta;
    const int m_count = config.subintervals();
    const int sweeps = config.corrections;
    const Matrix eye = Matrix::identity(n);

    std::vector<Matrix> prev(static_cast<std::size_t>(m_count) + 1);
    std::vector<Matrix> cur(prev.size());

    for (int k = 1; k <= sweeps; ++k) {
        for (int m = 1; m <= m_count; ++m) {
            // D_{m,(k)} Phi = I - sum theta_+ dt A + sum theta_- dt B.
            const Matrix lhs = eye - (th.sum_plus(m) * dt) * a + (th.sum_minus(m) * dt) * b;
            Matrix rhs(n, n);
            if (k == 1) {
                rhs = eye + (dt * th.sum_minus(m)) * (a + b);
            } else {
                rhs = eye + (th.theta(0, m) * dt) * a;
                for (int r = 1; r <= m_count; ++r) {
                    if (r == m) {
                        const Matrix dlm = (th.sum_plus(m) * dt) * a - (th.sum_minus(m) * dt) * b -
                                           (th.theta(m, m) * dt) * a;
                        rhs -= dlm * prev[static_cast<std::size_t>(r)];
                    } else {
                        rhs += (th.theta(r, m) * dt) * (a * prev[static_cast<std::size_t>(r)]);
                    }
                }
            }
            cur[static_cast<std::size_t>(m)] = lu_solve(lu_factor(lhs), rhs);
        }
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(m_count)];
}

Complex StabilityRaster::cell_center(int ix, int iy) const {
    const double dx = (window.re_max - window.re_min) / nx;
    const double dy = (window.im_max - window.im_min) / ny;
    return {window.re_min + (ix + 0.5) * dx, window.im_min + (iy + 0.5) * dy};
}

std::size_t StabilityRaster::unstable_count() const {
    std::size_t c = 0;
    for (std::uint8_t s : stable)
        if (!s) ++c;
    return c;
}

StabilityRaster stability_region_raster(const StabilityEvaluator& r, const Window& window,
                                        int nx, int ny) {
    if (nx < 1 || ny < 1 || static_cast<long long>(nx) * ny > 4096LL * 4096LL)
        fail(Errc::InvalidParams, "raster resolution out of range");
    StabilityRaster out;
    out.window = window;
    out.nx = nx;
    out.ny = ny;
    out.abs_r.resize(static_cast<std::size_t>(nx) * ny);
    out.stable.resize(out.abs_r.size());
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const std::size_t at = out.index(ix, iy);
            try {
                const double v = std::abs(r(out.cell_center(ix, iy)));
                out.abs_r[at] = v;
                out.stable[at] = v < 1.0 ? 1 : 0;
            } catch (const Error& e) {
                if (e.code() != Errc::PoleAt) throw;
                out.abs_r[at] = std::numeric_limits<double>::quiet_NaN();
                out.stable[at] = 0;
            }
        }
    return out;
}

std::optional<double> find_stability_threshold(const StabilityEvaluator& r, double r_max,
                                               double bracket_step) {
    auto excess = [&](double radius) { return std::abs(r(Complex(-radius, 0.0))) - 1.0; };
    double lo = bracket_step;
    double f_lo = excess(lo);
    if (f_lo > 0.0) {
        // Already unstable at the first sample; refine against 0.
        lo = 0.0;
        f_lo = -1.0;  // R(0) = 1 counts as the stable side
    }
    double hi = lo;
    bool found = false;
    for (double radius = lo + bracket_step; radius <= r_max + 0.5 * bracket_step;
         radius += bracket_step) {
        const double f = excess(radius);
        if (f > 0.0) {
            hi = radius;
            found = true;
            break;
        }
        lo = radius;
    }
    if (!found) return std::nullopt;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return -0.5 * (lo + hi);
}

}  // namespace patankar
