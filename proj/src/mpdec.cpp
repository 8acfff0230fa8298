#include "patankar/mpdec.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace patankar {

namespace {

constexpr int kMaxSubintervals = 14;

void check_subintervals(int m) {
    if (m < 1 || m > kMaxSubintervals)
        fail(Errc::OrderOutOfRange, "subinterval count must lie in [1, 14]");
}

/// Legendre P_M and its first two derivatives at x, by the three-term
/// recurrence.
struct LegendreEval {
    double p, dp, ddp;
};

LegendreEval legendre(int m, double x) {
    double p0 = 1.0, p1 = x;
    if (m == 0) return {1.0, 0.0, 0.0};
    for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    // (1-x^2) P' = m (P_{m-1} - x P_m); differentiate once more for P''.
    const double omx2 = 1.0 - x * x;
    const double dp = m * (p0 - x * p1) / omx2;
    const double ddp = (2.0 * x * dp - m * (m + 1.0) * p1) / omx2;
    return {p1, dp, ddp};
}

/// Gauss-Legendre rule on [-1,1] (roots of P_n with weights
/// 2 / ((1-x^2) P_n'(x)^2)), for the exact integration of the Lagrange
/// basis polynomials.
struct QuadRule {
    Vec points, weights;
};

QuadRule gauss_legendre(int n) {
    QuadRule q;
    for (int i = 1; i <= n; ++i) {
        double t = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (p0 - t * p1) / (1.0 - t * t);
            const double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (p0 - t * p1) / (1.0 - t * t);
        q.points.push_back(t);
        q.weights.push_back(2.0 / ((1.0 - t * t) * dp * dp));
    }
    return q;
}

/// Barycentric evaluation of all Lagrange basis polynomials at x.
Vec lagrange_values(const Vec& nodes, const Vec& bary_weights, double x) {
    const std::size_t n = nodes.size();
    Vec phi(n, 0.0);
    double denom = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        const double dx = x - nodes[s];
        if (dx == 0.0) {
            phi[s] = 1.0;
            return phi;
        }
        denom += bary_weights[s] / dx;
    }
    for (std::size_t s = 0; s < n; ++s)
        phi[s] = bary_weights[s] / (x - nodes[s]) / denom;
    return phi;
}

}  // namespace

NodeSet equispaced_nodes(int subintervals) {
    check_subintervals(subintervals);
    Vec nodes(static_cast<std::size_t>(subintervals) + 1);
    for (int i = 0; i <= subintervals; ++i)
        nodes[static_cast<std::size_t>(i)] = static_cast<double>(i) / subintervals;
    nodes.front() = 0.0;
    nodes.back() = 1.0;
    return NodeSet{NodeKind::Equispaced, subintervals, std::move(nodes)};
}

NodeSet gauss_lobatto_nodes(int subintervals) {
    check_subintervals(subintervals);
    const int m = subintervals;
    Vec x;  // interior roots of P'_M on (-1, 1)
    for (int i = 1; i < m; ++i) {
        // Chebyshev-like initial guess, then Newton on P'_M.
        double t = std::cos(std::numbers::pi * static_cast<double>(i) / m);
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const LegendreEval e = legendre(m, t);
            const double step = e.dp / e.ddp;
            t -= step;
            if (std::abs(step) < 1e-15) {
                converged = std::abs(legendre(m, t).dp) <= 1e-13;
                break;
            }
        }
        if (!converged) fail(Errc::NewtonDivergence, "Gauss-Lobatto Newton iteration failed");
        x.push_back(t);
    }
    std::sort(x.begin(), x.end());
    Vec nodes;
    nodes.push_back(0.0);
    for (double t : x) nodes.push_back(0.5 * (t + 1.0));
    nodes.push_back(1.0);
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1])) fail(Errc::DuplicateNodes, "Gauss-Lobatto nodes collapsed");
    return NodeSet{NodeKind::GaussLobatto, m, std::move(nodes)};
}

ThetaTable ThetaTable::build(const NodeSet& nodes) {
    const int m = nodes.subintervals;
    ThetaTable t;
    t.m_ = m;
    t.theta_.resize(static_cast<std::size_t>(m) * (m + 1));
    t.sum_plus_.assign(static_cast<std::size_t>(m), 0.0);
    t.sum_minus_.assign(static_cast<std::size_t>(m), 0.0);

    // Integrals of the Lagrange basis over [0, t^m]. Monomial-basis
    // integration loses ~1e-11 at M >= 8 (the coefficients grow to ~1e5 and
    // cancel), so the integrals are computed by a Gauss-Legendre rule that is
    // exact for degree M, with barycentric basis evaluation.
    Vec bary(static_cast<std::size_t>(m) + 1, 1.0);
    for (int r = 0; r <= m; ++r)
        for (int s = 0; s <= m; ++s)
            if (s != r)
                bary[static_cast<std::size_t>(r)] /=
                    nodes.nodes[static_cast<std::size_t>(r)] -
                    nodes.nodes[static_cast<std::size_t>(s)];
    const QuadRule rule = gauss_legendre(m / 2 + 1);
    for (int col = 1; col <= m; ++col) {
        const double upper = nodes.nodes[static_cast<std::size_t>(col)];
        Vec acc(static_cast<std::size_t>(m) + 1, 0.0);
        for (std::size_t qp = 0; qp < rule.points.size(); ++qp) {
            const double x = 0.5 * upper * (rule.points[qp] + 1.0);
            const double w = 0.5 * upper * rule.weights[qp];
            const Vec phi = lagrange_values(nodes.nodes, bary, x);
            for (int r = 0; r <= m; ++r) acc[static_cast<std::size_t>(r)] += w * phi[static_cast<std::size_t>(r)];
        }
        for (int r = 0; r <= m; ++r) t.theta_[t.idx(r, col)] = acc[static_cast<std::size_t>(r)];
    }
    for (int col = 1; col <= m; ++col) {
        for (int r = 0; r <= m; ++r) {
            const double v = t.theta(r, col);
            t.sum_plus_[static_cast<std::size_t>(col - 1)] += std::max(0.0, v);
            t.sum_minus_[static_cast<std::size_t>(col - 1)] += std::min(0.0, v);
        }
    }
    for (int r = 0; r <= m; ++r)
        if (t.theta(r, m) < 0.0) t.final_nonneg_ = false;
    return t;
}

ThetaTable theta_table(const NodeSet& nodes) { return ThetaTable::build(nodes); }

MPDeCConfig MPDeCConfig::make(int order, NodeKind kind) {
    if (order < 1 || order > 14) fail(Errc::OrderOutOfRange, "order must lie in [1, 14]");
    const int k = order;
    const int m = kind == NodeKind::Equispaced ? std::max(k - 1, 1) : (k + 1) / 2;
    MPDeCConfig c = custom(m, k, kind);
    c.order = order;
    return c;
}

MPDeCConfig MPDeCConfig::custom(int subintervals, int corrections, NodeKind kind) {
    if (corrections < 1) fail(Errc::OrderOutOfRange, "at least one correction required");
    NodeSet nodes =
        kind == NodeKind::Equispaced ? equispaced_nodes(subintervals) : gauss_lobatto_nodes(subintervals);
    ThetaTable theta = ThetaTable::build(nodes);
    return MPDeCConfig{corrections, corrections, std::move(nodes), std::move(theta)};
}

Vec mpdec_correction_solve(const PDSRates& rates, const Vec& y_n,
                           std::span<const Vec> previous_sweep, int m, const ThetaTable& theta,
                           double dt) {
    const std::size_t n = rates.dim();
    const int subint = theta.subintervals();
    if (previous_sweep.size() != static_cast<std::size_t>(subint) + 1)
        fail(Errc::DimensionMismatch, "previous sweep must hold M+1 states");
    for (const Vec& y : previous_sweep)
        for (double v : y)
            if (!(v > 0.0)) fail(Errc::NonPositiveState, "sweep state must be strictly positive");

    const Vec& denom = previous_sweep[static_cast<std::size_t>(m)];  // y^{m,(k-1)}
    Matrix sys = Matrix::identity(n);
    for (int r = 0; r <= subint; ++r) {
        const double th = theta.theta(r, m) * dt;
        if (th == 0.0) continue;
        const Vec& yr = previous_sweep[static_cast<std::size_t>(r)];
        const Matrix p = rates.production(yr);
        const Matrix d = rates.destruction(yr);
        if (th >= 0.0) {
            // gamma = j for production (off-diagonal), i for destruction
            // (diagonal): off-diagonals stay <= 0.
            for (std::size_t i = 0; i < n; ++i) {
                double drow = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    drow += d(i, j);
                    if (i != j) sys(i, j) -= th * p(i, j) / denom[j];
                }
                sys(i, i) += th * drow / denom[i];
            }
        } else {
            // Negative weight: the index function swaps the roles, so the
            // production total lands on the diagonal with positive sign.
            for (std::size_t i = 0; i < n; ++i) {
                double prow = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    prow += p(i, j);
                    if (i != j) sys(i, j) -= (-th) * d(i, j) / denom[j];
                }
                sys(i, i) += (-th) * prow / denom[i];
            }
        }
    }
#ifndef NDEBUG
    for (std::size_t i = 0; i < n; ++i) {
        assert(sys(i, i) >= 1.0);
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) assert(sys(i, j) <= 0.0);
    }
#endif
    Vec out = lu_solve(sys, y_n);
    for (double v : out)
        if (!(v > 0.0)) fail(Errc::NonPositiveState, "correction solve lost positivity");
    return out;
}

Vec mpdec_step(const MPDeCConfig& config, const PDSRates& rates, const Vec& y_n, double dt) {
    const int subint = config.subintervals();
    const int sweeps = config.corrections;
    std::vector<Vec> prev(static_cast<std::size_t>(subint) + 1, y_n);
    std::vector<Vec> cur(static_cast<std::size_t>(subint) + 1);
    cur[0] = y_n;
    for (int k = 1; k <= sweeps; ++k) {
        for (int m = 1; m <= subint; ++m)
            cur[static_cast<std::size_t>(m)] =
                mpdec_correction_solve(rates, y_n, prev, m, config.theta, dt);
        std::swap(prev, cur);
        cur[0] = y_n;
    }
    return prev[static_cast<std::size_t>(subint)];
}

}  // namespace patankar
