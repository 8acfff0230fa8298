#pragma once

#include <algorithm>
#include <span>

#include "patankar/pds.hpp"

namespace patankar {

enum class NodeKind { Equispaced, GaussLobatto };

/// Subtimenodes 0 = t^0 < ... < t^M = 1 on the reference interval.
struct NodeSet {
    NodeKind kind;
    int subintervals;  // M
    Vec nodes;         // M+1 entries
};

NodeSet equispaced_nodes(int subintervals);

/// Endpoints plus the roots of the derivative of the degree-M Legendre
/// polynomial, mapped from [-1,1] to [0,1]. Interior roots are found by
/// Newton iteration from Chebyshev initial guesses.
NodeSet gauss_lobatto_nodes(int subintervals);

/// Correction weights theta_r^m = integral of the r-th Lagrange basis
/// polynomial from 0 to t^m, with the sign-split tables used by the index
/// function.
class ThetaTable {
  public:
    static ThetaTable build(const NodeSet& nodes);

    [[nodiscard]] int subintervals() const noexcept { return m_; }
    /// r in 0..M, m in 1..M.
    [[nodiscard]] double theta(int r, int m) const { return theta_[idx(r, m)]; }
    [[nodiscard]] double theta_plus(int r, int m) const { return std::max(0.0, theta(r, m)); }
    [[nodiscard]] double theta_minus(int r, int m) const { return std::min(0.0, theta(r, m)); }
    [[nodiscard]] double sum_plus(int m) const { return sum_plus_[static_cast<std::size_t>(m - 1)]; }
    [[nodiscard]] double sum_minus(int m) const { return sum_minus_[static_cast<std::size_t>(m - 1)]; }
    [[nodiscard]] double sum_abs(int m) const { return sum_plus(m) - sum_minus(m); }
    /// All final-column weights nonnegative, the condition under which the
    /// update conserves every linear invariant.
    [[nodiscard]] bool final_column_nonnegative() const noexcept { return final_nonneg_; }

  private:
    [[nodiscard]] std::size_t idx(int r, int m) const {
        return static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(m_ + 1) +
               static_cast<std::size_t>(r);
    }

    int m_ = 0;
    Vec theta_;      // (M+1) weights per column m = 1..M
    Vec sum_plus_, sum_minus_;
    bool final_nonneg_ = true;
};

ThetaTable theta_table(const NodeSet& nodes);

/// Order-p configuration: K = p corrections; M = max(K-1, 1) subintervals for
/// equispaced nodes, M = ceil(K/2) for Gauss-Lobatto.
struct MPDeCConfig {
    int order;        // p
    int corrections;  // K
    NodeSet nodes;
    ThetaTable theta;

    [[nodiscard]] int subintervals() const noexcept { return nodes.subintervals; }
    [[nodiscard]] bool conserves_all_invariants() const noexcept {
        return theta.final_column_nonnegative();
    }

    static MPDeCConfig make(int order, NodeKind kind);
    /// Explicit (M, K) pair for experiments that vary the sweep count.
    static MPDeCConfig custom(int subintervals, int corrections, NodeKind kind);
};

/// One subtimestep solve of the correction sweep: given the previous-sweep
/// values y^{0..M,(k-1)}, assembles the Patankar system for y^{m,(k)} with
/// the sign of theta_r^m deciding whether each production/destruction term
/// lands on the diagonal or off-diagonal (the index function), and solves
/// against right side y^n.
Vec mpdec_correction_solve(const PDSRates& rates, const Vec& y_n,
                           std::span<const Vec> previous_sweep, int m, const ThetaTable& theta,
                           double dt);

/// Full step: K sweeps over M subtimesteps, sweep 0 seeded with y^n
/// everywhere; returns y^{M,(K)}.
Vec mpdec_step(const MPDeCConfig& config, const PDSRates& rates, const Vec& y_n, double dt);

}  // namespace patankar
