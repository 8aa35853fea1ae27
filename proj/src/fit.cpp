#include "arpe/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "arpe/csv.hpp"
#include "arpe/errors.hpp"

namespace arpe {

DesignSummary design_summary(const Vector& x, int max_order) {
  const Eigen::Index n = x.size();
  const Eigen::Index K = max_order;
  if (max_order < 1 || K >= n) {
    throw ConfigError("design_summary: invalid window, need 1 <= K_n < n (n = " +
                      std::to_string(n) + ", K_n = " + std::to_string(max_order) + ")");
  }
  DesignSummary s;
  s.n = n;
  s.max_order = max_order;
  s.N = n - K;
  const double inv_n = 1.0 / static_cast<double>(s.N);

  // Window rows j = K..n-1 (1-based x_j is x(j-1)); lag i+1 regressor is x(j-1-i).
  const auto target = x.segment(K, s.N);
  s.c0 = target.squaredNorm() * inv_n;
  s.b.resize(K);
  for (Eigen::Index i = 0; i < K; ++i) s.b(i) = x.segment(K - 1 - i, s.N).dot(target) * inv_n;

  s.G.resize(K, K);
  const auto lead = x.segment(K - 1, s.N);
  for (Eigen::Index l = 0; l < K; ++l) s.G(0, l) = lead.dot(x.segment(K - 1 - l, s.N)) * inv_n;
  // Shifting both lags by one slides the window back one step.
  for (Eigen::Index i = 0; i + 1 < K; ++i) {
    for (Eigen::Index l = i; l + 1 < K; ++l) {
      s.G(i + 1, l + 1) =
          s.G(i, l) + (x(K - 2 - i) * x(K - 2 - l) - x(n - 2 - i) * x(n - 2 - l)) * inv_n;
    }
  }
  for (Eigen::Index i = 1; i < K; ++i)
    for (Eigen::Index l = 0; l < i; ++l) s.G(i, l) = s.G(l, i);
  return s;
}

DesignSummary design_summary(const SamplePath& path, int max_order) {
  return design_summary(path.x, max_order);
}

FitSequence fit_all_orders(const DesignSummary& summary) {
  const int K = summary.max_order;
  if (summary.N <= K) {
    throw ConfigError("fit_all_orders: window too short, N = n - K_n must exceed K_n");
  }
  const NestedCholesky<double> chol(summary.G, 1e-12 * summary.G(0, 0));
  const Vector z = chol.forward(summary.b);

  FitSequence f;
  f.summary = summary;
  f.a_hat.reserve(static_cast<std::size_t>(K));
  f.sigma2_hat.resize(K);
  f.sigma2_tilde.resize(K);
  double explained = 0.0;
  const double N = static_cast<double>(summary.N);
  for (int k = 1; k <= K; ++k) {
    f.a_hat.push_back(-chol.back(z, k));
    explained += z(k - 1) * z(k - 1);
    const double s2 = std::max(0.0, summary.c0 - explained);
    f.sigma2_hat(k - 1) = s2;
    f.sigma2_tilde(k - 1) = N / (N - k) * s2;
  }
  return f;
}

double predict_one(const Vector& x, const Vector& a_hat) {
  const Eigen::Index n = x.size();
  const Eigen::Index k = a_hat.size();
  if (k > n) throw ConfigError("predict_one: order exceeds sample length");
  double v = 0.0;
  for (Eigen::Index i = 1; i <= k; ++i) v -= a_hat(i - 1) * x(n - i);
  return v;
}

double predict_one(const SamplePath& path, const Vector& a_hat) {
  return predict_one(path.x, a_hat);
}

PseudoInnovations pseudo_innovation_stats(const SamplePath& path, const OrderKProjection& proj,
                                          int max_order) {
  const Vector& x = path.x;
  const Eigen::Index n = x.size();
  const Eigen::Index K = max_order;
  const Eigen::Index k = proj.a_k.size();
  if (k > K || K >= n) throw ConfigError("pseudo_innovation_stats: need k <= K_n < n");
  PseudoInnovations out;
  out.eps.resize(n - K);
  for (Eigen::Index t = K; t < n; ++t) {
    double e = x(t);
    for (Eigen::Index i = 1; i <= k; ++i) e += proj.a_k(i - 1) * x(t - i);
    out.eps(t - K) = e;
  }
  out.S2 = out.eps.squaredNorm() / static_cast<double>(n - K);
  return out;
}

double empirical_gram_distance(const FitSequence& fits, const OrderKProjection& proj) {
  const int k = proj.k;
  const Vector diff = fits.a_hat[static_cast<std::size_t>(k - 1)] - proj.a_k;
  return diff.dot(fits.summary.G.topLeftCorner(k, k).selfadjointView<Eigen::Upper>() * diff);
}

double decomposition_check(const SamplePath& path, const OrderKProjection& proj,
                           const FitSequence& fits, const TheoreticalCurve& curve, int k) {
  if (proj.k != k || k < 1 || k > fits.summary.max_order) {
    throw ConfigError("decomposition_check: projection order does not match k");
  }
  if (curve.N != fits.summary.N || curve.alpha != 2.0 || curve.max_order < k) {
    throw ConfigError("decomposition_check: curve does not match the fit window");
  }
  const double N = static_cast<double>(fits.summary.N);
  const double s2 = fits.sigma2_hat(k - 1);
  const double sigma2 = curve.sigma2;
  const double S2 = pseudo_innovation_stats(path, proj, fits.summary.max_order).S2;
  const double gram_dist = empirical_gram_distance(fits, proj);

  const double lhs = (N + 2.0 * k) * s2;
  const double rhs = N * curve.loss(k - 1) + 2.0 * k * (s2 - sigma2) +
                     (k * sigma2 - N * gram_dist) + N * sigma2 + N * (S2 - proj.sigma2_k);
  return std::abs(lhs - rhs) / std::abs(lhs);
}

double variance_identity_residual(const SamplePath& path, const OrderKProjection& proj,
                                  const FitSequence& fits) {
  const double s2 = fits.sigma2_hat(proj.k - 1);
  const double S2 = pseudo_innovation_stats(path, proj, fits.summary.max_order).S2;
  return std::abs(s2 - (S2 - empirical_gram_distance(fits, proj))) / std::abs(s2);
}

double normal_equation_residual(const FitSequence& fits) {
  const auto& s = fits.summary;
  const double scale = std::max(s.b.norm(), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (int k = 1; k <= s.max_order; ++k) {
    const Vector r = s.G.topLeftCorner(k, k) * fits.a_hat[static_cast<std::size_t>(k - 1)] +
                     s.b.head(k);
    worst = std::max(worst, r.norm() / scale);
  }
  return worst;
}

IdentityReport identity_check(const ProcessSpec& spec, Eigen::Index n, int max_order,
                              std::size_t paths, std::uint64_t seed) {
  const auto proj = yule_walker_all(autocovariances(spec, max_order), max_order);
  const TheoreticalCurve curve = loss_curve(spec, n, max_order);
  const std::size_t burnin = default_burnin(spec);
  IdentityReport report;
  report.paths = paths;
  for (std::size_t r = 0; r < paths; ++r) {
    const SamplePath path = simulate(spec, n, {seed, 0, r}, burnin);
    const FitSequence fits = fit_all_orders(design_summary(path, max_order));
    report.normal_equations = std::max(report.normal_equations, normal_equation_residual(fits));
    for (int k = 1; k <= max_order; ++k) {
      const auto& p = proj[static_cast<std::size_t>(k - 1)];
      report.decomposition =
          std::max(report.decomposition, decomposition_check(path, p, fits, curve, k));
      report.variance_identity =
          std::max(report.variance_identity, variance_identity_residual(path, p, fits));
    }
  }
  return report;
}

double empirical_R_distance(const Vector& a_hat, const ARCoeffs& ar, const AutocovTable& gamma) {
  const Eigen::Index m = std::max(a_hat.size(), ar.a.size());
  Vector d = Vector::Zero(m);
  d.head(a_hat.size()) = a_hat;
  d.head(ar.a.size()) -= ar.a;
  return quadratic_R_norm(d, gamma);
}

bool r_distance_tail_warning(const ARCoeffs& ar, const AutocovTable& gamma) {
  return ar.tail_bound * gamma.gamma(0) > 1e-10;
}

RDistanceEvaluator::RDistanceEvaluator(const ARCoeffs& ar, const AutocovTable& gamma,
                                       int max_order) {
  const Eigen::Index K = max_order;
  const Eigen::Index m = std::max(K, ar.a.size());
  if (gamma.gamma.size() < m) {
    throw PrecisionError("RDistanceEvaluator: need autocovariances up to lag " +
                             std::to_string(m - 1),
                         static_cast<std::size_t>(m));
  }
  Vector a = Vector::Zero(m);
  a.head(ar.a.size()) = ar.a;
  gamma_ = gamma.gamma.head(K);
  cross_.resize(K);
  for (Eigen::Index i = 0; i < K; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) acc += gamma.gamma(std::abs(i - j)) * a(j);
    cross_(i) = acc;
  }
  aRa_ = toeplitz_quadratic_form<double>(a, gamma.gamma);
}

double RDistanceEvaluator::operator()(const Vector& a_hat) const {
  const Eigen::Index k = a_hat.size();
  return toeplitz_quadratic_form<double>(a_hat, gamma_) - 2.0 * a_hat.dot(cross_.head(k)) + aRa_;
}

void write_fit_csv(std::ostream& os, const FitSequence& fits) {
  CsvWriter csv(os);
  csv.row({"k", "sigma2_hat", "sigma2_tilde", "coefficients"});
  for (int k = 1; k <= fits.summary.max_order; ++k) {
    const Vector& a = fits.a_hat[static_cast<std::size_t>(k - 1)];
    std::string list;
    for (Eigen::Index i = 0; i < a.size(); ++i) list += (i ? "," : "") + format_double(a(i));
    csv.row({std::to_string(k), format_double(fits.sigma2_hat(k - 1)),
             format_double(fits.sigma2_tilde(k - 1)), list});
  }
}

}  // namespace arpe
