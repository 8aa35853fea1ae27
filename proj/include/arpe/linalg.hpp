#ifndef ARPE_LINALG_HPP
#define ARPE_LINALG_HPP

// Dense kernels shared by the theory and fit modules. Everything here is
// templated on the scalar type and works on Eigen vectors/matrices; the
// domain modules instantiate with double.

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "arpe/errors.hpp"

namespace arpe {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;

/// Index of the first minimum; ties resolve toward the smallest index.
template <typename Derived>
Eigen::Index first_argmin(const Eigen::DenseBase<Derived>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) < v(best)) best = i;
  }
  return best;
}

/// Order-recursive solution of the Toeplitz normal equations.
///
/// `coeffs[k-1]` holds a(k) in the error-filter convention
/// x_{t} + sum_i a_i(k) x_{t-i} = e_{t,k}; `variance[k]` is the order-k
/// prediction error variance with `variance[0] = gamma_0`.
template <typename Scalar>
struct LevinsonSolution {
  std::vector<VectorX<Scalar>> coeffs;
  VectorX<Scalar> variance;
};

/// Levinson-Durbin recursion on gamma_0..gamma_K. Throws DegeneracyError if
/// a leading Toeplitz segment is not positive definite.
template <typename Scalar>
LevinsonSolution<Scalar> levinson_durbin(const VectorX<Scalar>& gamma, int max_order) {
  if (max_order < 1 || gamma.size() <= max_order) {
    throw ConfigError("levinson_durbin: autocovariance table does not cover the requested order");
  }
  LevinsonSolution<Scalar> out;
  out.coeffs.reserve(static_cast<std::size_t>(max_order));
  out.variance.resize(max_order + 1);
  out.variance(0) = gamma(0);
  if (!(gamma(0) > Scalar(0))) {
    throw DegeneracyError("levinson_durbin: gamma_0 must be positive", 0);
  }
  // phi holds the forward predictor x_t ~ sum phi_i x_{t-i}.
  VectorX<Scalar> phi = VectorX<Scalar>::Zero(max_order);
  VectorX<Scalar> prev = VectorX<Scalar>::Zero(max_order);
  for (int k = 1; k <= max_order; ++k) {
    Scalar acc = gamma(k);
    for (int i = 1; i < k; ++i) acc -= prev(i - 1) * gamma(k - i);
    const Scalar kappa = acc / out.variance(k - 1);
    for (int i = 1; i < k; ++i) phi(i - 1) = prev(i - 1) - kappa * prev(k - i - 1);
    phi(k - 1) = kappa;
    const Scalar v = out.variance(k - 1) * (Scalar(1) - kappa * kappa);
    if (!(v > Scalar(0)) || std::abs(kappa) >= Scalar(1)) {
      throw DegeneracyError("levinson_durbin: Toeplitz segment of order " + std::to_string(k) +
                                " is not positive definite",
                            k);
    }
    out.variance(k) = v;
    out.coeffs.push_back(-phi.head(k));
    prev.head(k) = phi.head(k);
  }
  return out;
}

/// sum_{i,j} d_i d_j gamma_{|i-j|} for d indexed from lag 1.
template <typename Scalar>
Scalar toeplitz_quadratic_form(const VectorX<Scalar>& d, const VectorX<Scalar>& gamma) {
  const Eigen::Index m = d.size();
  if (m == 0) return Scalar(0);
  if (gamma.size() < m) {
    throw PrecisionError("toeplitz_quadratic_form: autocovariance table shorter than the support",
                         static_cast<std::size_t>(m));
  }
  Scalar total = gamma(0) * d.squaredNorm();
  for (Eigen::Index h = 1; h < m; ++h) {
    total += Scalar(2) * gamma(h) * d.head(m - h).dot(d.tail(m - h));
  }
  return total;
}

/// Symmetric Toeplitz matrix with first column gamma_0..gamma_{k-1}.
template <typename Scalar>
MatrixX<Scalar> toeplitz(const VectorX<Scalar>& gamma, int k) {
  MatrixX<Scalar> t(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t(i, j) = gamma(std::abs(i - j));
  return t;
}

/// Cholesky factor of every leading principal block of a symmetric matrix,
/// computed in one row-oriented pass. Row k of the factor depends only on
/// the leading (k+1)x(k+1) block, so the leading k-block of `lower()` is the
/// factor of the leading k-block of the input.
template <typename Scalar>
class NestedCholesky {
 public:
  /// `pivot_floor` is an absolute lower bound on squared pivots; a smaller
  /// pivot raises DegeneracyError naming the (1-based) order.
  NestedCholesky(const MatrixX<Scalar>& gram, Scalar pivot_floor)
      : lower_(MatrixX<Scalar>::Zero(gram.rows(), gram.cols())) {
    const Eigen::Index m = gram.rows();
    for (Eigen::Index k = 0; k < m; ++k) {
      for (Eigen::Index j = 0; j < k; ++j) {
        Scalar s = gram(k, j) - lower_.row(k).head(j).dot(lower_.row(j).head(j));
        lower_(k, j) = s / lower_(j, j);
      }
      const Scalar pivot = gram(k, k) - lower_.row(k).head(k).squaredNorm();
      if (!(pivot > pivot_floor)) {
        throw DegeneracyError("Gram matrix is rank-degenerate at order " + std::to_string(k + 1),
                              static_cast<int>(k + 1));
      }
      lower_(k, k) = std::sqrt(pivot);
    }
  }

  Eigen::Index size() const { return lower_.rows(); }
  const MatrixX<Scalar>& lower() const { return lower_; }

  /// L^{-1} b; its first k entries equal L(k)^{-1} b(k) for every k.
  VectorX<Scalar> forward(const VectorX<Scalar>& b) const {
    return lower_.template triangularView<Eigen::Lower>().solve(b);
  }

  /// Solves G(k) y = rhs using the leading k-block, given z = L(k)^{-1} rhs(k).
  VectorX<Scalar> back(const VectorX<Scalar>& z, Eigen::Index k) const {
    return lower_.topLeftCorner(k, k).transpose().template triangularView<Eigen::Upper>().solve(
        z.head(k));
  }

 private:
  MatrixX<Scalar> lower_;
};

}  // namespace arpe

#endif  // ARPE_LINALG_HPP
