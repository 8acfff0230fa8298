#include "patankar/pds.hpp"

#include <cmath>
#include <utility>

namespace patankar {

LinearPDS LinearPDS::validate(Matrix a) {
    if (a.rows() != a.cols() || a.rows() < 2)
        fail(Errc::DimensionMismatch, "system matrix must be square with N >= 2");
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(a(i, j))) fail(Errc::InvalidParams, "matrix entries must be finite");

    const double scale = inf_norm(a);
    if (scale == 0.0) fail(Errc::ZeroMatrix, "zero matrix is not a proper Metzler matrix");

    bool negative_diag = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) < 0.0) negative_diag = true;
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && a(i, j) < 0.0)
                fail(Errc::NotMetzler, "negative off-diagonal entry at (" + std::to_string(i) +
                                           "," + std::to_string(j) + ")");
    }

    const double col_tol = 1e-12 * scale;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a(i, j);
        if (std::abs(s) > col_tol)
            fail(Errc::NotConservative,
                 "column " + std::to_string(j) + " sums to " + std::to_string(s));
    }
    if (!negative_diag) fail(Errc::ZeroMatrix, "no negative diagonal entry");

    LinearPDS pds(std::move(a));
    pds.invariant_count_ = static_cast<int>(n) - rank_estimate(pds.a_, 1e-10);
    pds.invariant_basis_ = nullspace(pds.a_.transposed(), 1e-10);

    const double inv_tol = 1e-13 * scale;
    const Matrix at = pds.a_.transposed();
    for (const Vec& v : pds.invariant_basis_) {
        const Vec r = matvec(at, v);
        if (inf_norm(r) > inv_tol * inf_norm(std::span<const double>(v)))
            fail(Errc::NotConservative, "invariant basis residual exceeds tolerance");
    }
    return pds;
}

void LinearPDS::attach_eigenpairs(std::vector<EigenPair> pairs) {
    const double tol = 1e-10 * inf_norm(a_);
    for (const EigenPair& p : pairs) {
        if (p.vector.size() != dim()) fail(Errc::DimensionMismatch, "eigenvector size mismatch");
        CVec r = matvec(a_, std::span<const Complex>(p.vector));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p.value * p.vector[i];
        if (inf_norm(r) > tol * inf_norm(p.vector))
            fail(Errc::InvalidParams, "eigenpair residual exceeds tolerance");
    }
    eigenpairs_ = std::move(pairs);
}

PDSRates::PDSRates(std::size_t dim, RateFn production, RateFn destruction)
    : dim_(dim), prod_(std::move(production)), destr_(std::move(destruction)) {}

PDSRates rates_from_matrix(const LinearPDS& pds) {
    const Matrix a = pds.matrix();
    const std::size_t n = pds.dim();
    auto production = [a, n](std::span<const double> y) {
        Matrix p(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) p(i, j) = a(i, j) * y[j];
        return p;
    };
    auto destruction = [a, n](std::span<const double> y) {
        Matrix d(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) d(i, j) = a(j, i) * y[i];
        return d;
    };
    return PDSRates(n, production, destruction);
}

SteadyState SteadyState::verified(const LinearPDS& pds, Vec y_star) {
    if (y_star.size() != pds.dim()) fail(Errc::DimensionMismatch, "steady state size mismatch");
    for (double v : y_star)
        if (!(v > 0.0)) fail(Errc::NonPositiveState, "steady state must be strictly positive");
    const Vec r = matvec(pds.matrix(), y_star);
    if (inf_norm(r) >
        1e-12 * inf_norm(pds.matrix()) * inf_norm(std::span<const double>(y_star)))
        fail(Errc::InvalidParams, "steady state residual exceeds tolerance");
    return SteadyState{std::move(y_star)};
}

LinearPDS random_conservative_pds(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> mag(0.0, 1.0);
    std::bernoulli_distribution sparse(0.25);
    Matrix a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            const double v = sparse(rng) ? 0.0 : mag(rng);
            a(i, j) = v;
            col += v;
        }
        a(j, j) = -col;
    }
    // Guard against an all-zero draw; one positive coupling makes it proper.
    bool nonzero = false;
    for (std::size_t j = 0; j < n && !nonzero; ++j) nonzero = a(j, j) < 0.0;
    if (!nonzero) {
        a(0, 1) = 1.0;
        a(1, 1) = -1.0;
    }
    return LinearPDS::validate(std::move(a));
}

}  // namespace patankar
