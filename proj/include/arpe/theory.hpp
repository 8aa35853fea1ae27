#ifndef ARPE_THEORY_HPP
#define ARPE_THEORY_HPP

#include <iosfwd>
#include <vector>

#include "arpe/process.hpp"

namespace arpe {

/// Best order-k linear predictor of x_{k+1} from x_k..x_1 in the error-filter
/// convention x_{k+1} + x_k(k)' a(k) = e_{k+1,k}.
struct OrderKProjection {
  int k = 0;
  Vector a_k;
  /// E(e_{t,k}^2) = sigma^2 + ||a - a(k)||_R^2.
  double sigma2_k = 0.0;
};

/// Population loss L_n^{(alpha)}(k) = (alpha-1) k sigma^2 / N + ||a - a(k)||_R^2
/// over k = 1..K_n. alpha = 2 gives the plain curve.
struct TheoreticalCurve {
  Eigen::Index n = 0;
  int max_order = 0;  ///< K_n
  Eigen::Index N = 0;
  double alpha = 2.0;
  double sigma2 = 1.0;
  Vector loss;      ///< entry k-1 holds L(k)
  Vector fit_norm;  ///< entry k-1 holds ||a - a(k)||_R^2
  int k_star = 1;   ///< smallest argmin of `loss`
};

struct BasinPoint {
  int k = 0;
  /// N (L(k) - L(k*)) / |k - k*|
  double ratio = 0.0;
};

OrderKProjection yule_walker(const AutocovTable& gamma, int k);

/// Projections of every order 1..max_order from one Levinson pass.
std::vector<OrderKProjection> yule_walker_all(const AutocovTable& gamma, int max_order);

/// ||a - a(k)||_R^2 as sigma2_k - sigma^2, clamped at zero against roundoff.
double fit_norm(const AutocovTable& gamma, int k);

/// sum_{i,j} d_i d_j gamma_{|i-j|}; d indexed from lag 1.
double quadratic_R_norm(const Vector& d, const AutocovTable& gamma);

TheoreticalCurve loss_curve(const AutocovTable& gamma, Eigen::Index n, int max_order,
                            double alpha = 2.0);
TheoreticalCurve loss_curve(const ProcessSpec& spec, Eigen::Index n, int max_order,
                            double alpha = 2.0);

/// Leading term (1/beta) log N of k_n* when sum_{i>=k} a_i^2 decays like e^{-beta k}.
double kstar_asymptotic_exponential(double beta, double N);

/// (N C4 beta / sigma^2)^{1/(beta+1)}, the k_n* approximation when
/// ||a - a(k)||_R^2 behaves like C4 k^{-beta}.
double kstar_asymptotic_algebraic(double sigma2, double C4, double beta, double N);

/// Brute-force k_star against an asymptotic prediction at one N.
struct AsymptoticsPoint {
  double N = 0.0;
  int max_order = 0;  ///< K_n = floor(N^0.45) used for the brute-force search
  int k_star = 0;
  double predicted = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Exponentially decaying fit norms with rate beta: compares k_star with
/// (1/beta) log N under the band 5 log log N.
std::vector<AsymptoticsPoint> exponential_asymptotics(const ProcessSpec& spec, double beta,
                                                      const std::vector<double>& Ns);

/// Algebraically decaying fit norms with exponent beta: C4 is read off as
/// fit_norm(k) k^beta at k = fit_order, and k_star is compared with
/// kstar_asymptotic_algebraic under the band max(3, 0.15 * prediction).
std::vector<AsymptoticsPoint> algebraic_asymptotics(const ProcessSpec& spec, double beta,
                                                    const std::vector<double>& Ns,
                                                    int fit_order = 200);

/// Basin ratios for every k != k_star.
std::vector<BasinPoint> basin_profile(const TheoreticalCurve& curve);

/// Maximal order floor((scale n)^{1/(2+delta)}); delta = 0, scale = 1 is
/// floor(sqrt(n)), the default K_n.
int max_order_rule(Eigen::Index n, double delta = 0.0, double scale = 1.0);

/// Columns: k, fit_norm, L_n, k_star (1 on the minimizing row).
void write_curve_csv(std::ostream& os, const TheoreticalCurve& curve);
/// Columns: k, ratio.
void write_basin_csv(std::ostream& os, const std::vector<BasinPoint>& profile);

}  // namespace arpe

#endif  // ARPE_THEORY_HPP
