#pragma once

#include <functional>
#include <random>
#include <vector>

#include "patankar/linalg.hpp"

namespace patankar {

struct EigenPair {
    Complex value;
    CVec vector;
};

/// Linear production-destruction system y' = A y with A a proper Metzler
/// matrix whose columns sum to zero, so that 1 lies in ker(A^T).
///
/// Equality of algebraic and geometric multiplicity of the zero eigenvalue is
/// an assumption on user-supplied matrices, not something this class
/// certifies; the built-in test problems satisfy it by construction.
class LinearPDS {
  public:
    /// Validates the structural requirements and computes the number of
    /// linear invariants k = N - rank(A) together with a basis of ker(A^T).
    static LinearPDS validate(Matrix a);

    [[nodiscard]] std::size_t dim() const noexcept { return a_.rows(); }
    [[nodiscard]] const Matrix& matrix() const noexcept { return a_; }
    [[nodiscard]] int invariant_count() const noexcept { return invariant_count_; }
    [[nodiscard]] const std::vector<Vec>& invariant_basis() const noexcept {
        return invariant_basis_;
    }
    [[nodiscard]] const std::vector<EigenPair>& known_eigenpairs() const noexcept {
        return eigenpairs_;
    }

    /// Attaches externally known eigenpairs after checking the residual
    /// |A v - lambda v|_inf <= 1e-10 |A|_inf |v|_inf.
    void attach_eigenpairs(std::vector<EigenPair> pairs);

  private:
    explicit LinearPDS(Matrix a) : a_(std::move(a)) {}

    Matrix a_;
    int invariant_count_ = 0;
    std::vector<Vec> invariant_basis_;
    std::vector<EigenPair> eigenpairs_;
};

inline LinearPDS validate_linear_pds(Matrix a) { return LinearPDS::validate(std::move(a)); }

/// Production/destruction rate closures. Conservativity d_ij(y) = p_ji(y) is
/// a contract on the closures, testable on random positive states.
class PDSRates {
  public:
    using RateFn = std::function<Matrix(std::span<const double>)>;

    PDSRates(std::size_t dim, RateFn production, RateFn destruction);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] Matrix production(std::span<const double> y) const { return prod_(y); }
    [[nodiscard]] Matrix destruction(std::span<const double> y) const { return destr_(y); }

  private:
    std::size_t dim_;
    RateFn prod_, destr_;
};

/// Rates of the linear class: p_ij(y) = a_ij y_j, p_ii = d_ii = 0,
/// d_ij(y) = p_ji(y).
PDSRates rates_from_matrix(const LinearPDS& pds);

/// Positive steady state y* in ker(A).
struct SteadyState {
    Vec value;

    /// Checks positivity and |A y*|_inf <= 1e-12 |A|_inf |y*|_inf.
    static SteadyState verified(const LinearPDS& pds, Vec y_star);
};

/// Random conservative Metzler system for property suites: nonnegative
/// off-diagonal entries, diagonal set to the negated column sum.
LinearPDS random_conservative_pds(std::mt19937_64& rng, std::size_t n);

}  // namespace patankar
