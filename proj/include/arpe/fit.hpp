#ifndef ARPE_FIT_HPP
#define ARPE_FIT_HPP

#include <iosfwd>
#include <vector>

#include "arpe/process.hpp"
#include "arpe/theory.hpp"

namespace arpe {

/// Sufficient statistics of the nested least-squares problem over the single
/// window j = K_n..n-1 shared by every order:
///   G  = (1/N) sum x_j(K_n) x_j(K_n)'
///   b  = (1/N) sum x_j(K_n) x_{j+1}
///   c0 = (1/N) sum x_{j+1}^2
/// The leading k-block of G is the order-k Gram matrix.
struct DesignSummary {
  Eigen::Index n = 0;
  int max_order = 0;
  Eigen::Index N = 0;
  Matrix G;
  Vector b;
  double c0 = 0.0;
};

struct FitSequence {
  DesignSummary summary;
  std::vector<Vector> a_hat;  ///< a_hat[k-1] has length k
  Vector sigma2_hat;          ///< residual mean square per order
  Vector sigma2_tilde;        ///< N/(N-k) * sigma2_hat
};

struct PseudoInnovations {
  double S2 = 0.0;  ///< mean square of eps
  Vector eps;       ///< e_{t+1,k} for t = K_n..n-1
};

DesignSummary design_summary(const SamplePath& path, int max_order);
DesignSummary design_summary(const Vector& x, int max_order);

/// Least-squares coefficients and residual variances of every order 1..K_n
/// from one Cholesky pass over G. Throws DegeneracyError naming the first
/// order whose pivot falls below 1e-12 * G(0,0).
FitSequence fit_all_orders(const DesignSummary& summary);

/// -sum_i a_hat_i x_{n+1-i}
double predict_one(const SamplePath& path, const Vector& a_hat);
double predict_one(const Vector& x, const Vector& a_hat);

/// e_{t+1,k} = x_{t+1} + x_t(k)' a(k) over the fitting window.
PseudoInnovations pseudo_innovation_stats(const SamplePath& path, const OrderKProjection& proj,
                                          int max_order);

/// ||a_hat(k) - a(k)||^2 weighted by the leading k-block of G.
double empirical_gram_distance(const FitSequence& fits, const OrderKProjection& proj);

/// Relative residual |LHS - RHS| / |LHS| of
///   S_n(k) = N L_n(k) + 2k(s2_k - sigma^2) + (k sigma^2 - N ||a_hat(k) - a(k)||^2_{G(k)})
///            + N sigma^2 + N (S_k^2 - sigma_k^2)
/// with S_n(k) = (N + 2k) s2_k. Exact algebra, so the result is at roundoff level.
double decomposition_check(const SamplePath& path, const OrderKProjection& proj,
                           const FitSequence& fits, const TheoreticalCurve& curve, int k);

/// Relative residual of s2_k = S_k^2 - ||a_hat(k) - a(k)||^2_{G(k)}.
double variance_identity_residual(const SamplePath& path, const OrderKProjection& proj,
                                  const FitSequence& fits);

/// Largest |G(k) a_hat(k) + b(k)| / ||b|| over all orders.
double normal_equation_residual(const FitSequence& fits);

/// Worst residuals of the exact identities over simulated paths.
struct IdentityReport {
  std::size_t paths = 0;
  double decomposition = 0.0;      ///< max decomposition_check over paths and orders
  double variance_identity = 0.0;  ///< max variance_identity_residual
  double normal_equations = 0.0;   ///< max normal_equation_residual
};

/// Simulates `paths` series of length n (stream {seed, 0, r}) and evaluates
/// every identity at every order 1..K_n.
IdentityReport identity_check(const ProcessSpec& spec, Eigen::Index n, int max_order,
                              std::size_t paths, std::uint64_t seed);

/// ||a_hat - a||_R^2 with a_hat zero-padded and a truncated: the excess
/// conditional MSPE of the fitted predictor on an independent realization.
double empirical_R_distance(const Vector& a_hat, const ARCoeffs& ar, const AutocovTable& gamma);

/// True when the discarded AR tail can move the R-distance by more than 1e-10.
bool r_distance_tail_warning(const ARCoeffs& ar, const AutocovTable& gamma);

/// Same quadratic form as empirical_R_distance, expanded as
/// a_hat' R(k) a_hat - 2 a_hat' (R a)_{1..k} + a' R a with the a-terms
/// precomputed once, so each evaluation costs O(k^2).
class RDistanceEvaluator {
 public:
  RDistanceEvaluator(const ARCoeffs& ar, const AutocovTable& gamma, int max_order);
  double operator()(const Vector& a_hat) const;

 private:
  Vector gamma_;   // gamma_0..gamma_{K-1}
  Vector cross_;   // (R a)_i, i = 1..K
  double aRa_ = 0.0;
};

/// Columns: k, sigma2_hat, sigma2_tilde, coefficients (quoted list).
void write_fit_csv(std::ostream& os, const FitSequence& fits);

}  // namespace arpe

#endif  // ARPE_FIT_HPP
