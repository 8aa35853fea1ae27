#include "arpe/theory.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "arpe/csv.hpp"
#include "arpe/errors.hpp"

namespace arpe {
namespace {

void require_order(const AutocovTable& gamma, int k) {
  if (k < 1) throw ConfigError("order must be at least 1");
  if (gamma.max_lag() < k) {
    throw PrecisionError("autocovariance table does not reach lag " + std::to_string(k),
                         static_cast<std::size_t>(k) + 1);
  }
}

}  // namespace

std::vector<OrderKProjection> yule_walker_all(const AutocovTable& gamma, int max_order) {
  require_order(gamma, max_order);
  const auto sol = levinson_durbin<double>(gamma.gamma.head(max_order + 1), max_order);
  std::vector<OrderKProjection> out;
  out.reserve(static_cast<std::size_t>(max_order));
  for (int k = 1; k <= max_order; ++k) {
    out.push_back({k, sol.coeffs[static_cast<std::size_t>(k - 1)], sol.variance(k)});
  }
  return out;
}

OrderKProjection yule_walker(const AutocovTable& gamma, int k) {
  return yule_walker_all(gamma, k).back();
}

double fit_norm(const AutocovTable& gamma, int k) {
  return std::max(0.0, yule_walker(gamma, k).sigma2_k - gamma.sigma2);
}

double quadratic_R_norm(const Vector& d, const AutocovTable& gamma) {
  if (d.size() > gamma.gamma.size()) {
    throw PrecisionError("quadratic_R_norm: need autocovariances up to lag " +
                             std::to_string(d.size() - 1),
                         static_cast<std::size_t>(d.size()));
  }
  return toeplitz_quadratic_form<double>(d, gamma.gamma);
}

TheoreticalCurve loss_curve(const AutocovTable& gamma, Eigen::Index n, int max_order,
                            double alpha) {
  if (max_order < 1 || max_order >= n) throw ConfigError("loss_curve: need 1 <= K_n < n");
  if (!(alpha >= 1.0)) throw ConfigError("loss_curve: alpha must be at least 1");
  const auto proj = yule_walker_all(gamma, max_order);

  TheoreticalCurve c;
  c.n = n;
  c.max_order = max_order;
  c.N = n - max_order;
  c.alpha = alpha;
  c.sigma2 = gamma.sigma2;
  c.loss.resize(max_order);
  c.fit_norm.resize(max_order);
  const double slope = (alpha - 1.0) * gamma.sigma2 / static_cast<double>(c.N);
  for (int k = 1; k <= max_order; ++k) {
    const double f = std::max(0.0, proj[static_cast<std::size_t>(k - 1)].sigma2_k - gamma.sigma2);
    c.fit_norm(k - 1) = f;
    c.loss(k - 1) = slope * k + f;
  }
  c.k_star = static_cast<int>(first_argmin(c.loss)) + 1;
  return c;
}

TheoreticalCurve loss_curve(const ProcessSpec& spec, Eigen::Index n, int max_order, double alpha) {
  if (max_order < 1) throw ConfigError("loss_curve: need K_n >= 1");
  return loss_curve(autocovariances(spec, max_order), n, max_order, alpha);
}

double kstar_asymptotic_exponential(double beta, double N) {
  if (!(beta > 0.0) || !(N >= 3.0)) throw ConfigError("need beta > 0 and N >= 3");
  return std::log(N) / beta;
}

double kstar_asymptotic_algebraic(double sigma2, double C4, double beta, double N) {
  if (!(sigma2 > 0.0 && C4 > 0.0 && N > 0.0) || !(beta > 1.0)) {
    throw ConfigError("need positive sigma2, C4, N and beta > 1");
  }
  return std::pow(N * C4 * beta / sigma2, 1.0 / (beta + 1.0));
}

namespace {

AsymptoticsPoint brute_force_point(const AutocovTable& gamma, double N) {
  AsymptoticsPoint p;
  p.N = N;
  p.max_order = static_cast<int>(std::floor(std::pow(N, 0.45)));
  const auto n = static_cast<Eigen::Index>(std::llround(N)) + p.max_order;
  p.k_star = loss_curve(gamma, n, p.max_order).k_star;
  return p;
}

int largest_order(const std::vector<double>& Ns) {
  double top = 0.0;
  for (double N : Ns) {
    if (!(N >= 3.0)) throw ConfigError("asymptotics: every N must be at least 3");
    top = std::max(top, N);
  }
  return static_cast<int>(std::floor(std::pow(top, 0.45)));
}

}  // namespace

std::vector<AsymptoticsPoint> exponential_asymptotics(const ProcessSpec& spec, double beta,
                                                      const std::vector<double>& Ns) {
  const AutocovTable gamma = autocovariances(spec, largest_order(Ns));
  std::vector<AsymptoticsPoint> out;
  for (double N : Ns) {
    AsymptoticsPoint p = brute_force_point(gamma, N);
    p.predicted = kstar_asymptotic_exponential(beta, N);
    p.tolerance = 5.0 * std::log(std::log(N));
    p.pass = std::abs(p.k_star - p.predicted) <= p.tolerance;
    out.push_back(p);
  }
  return out;
}

std::vector<AsymptoticsPoint> algebraic_asymptotics(const ProcessSpec& spec, double beta,
                                                    const std::vector<double>& Ns, int fit_order) {
  if (fit_order < 1) throw ConfigError("asymptotics: fit order must be positive");
  const AutocovTable gamma = autocovariances(spec, std::max(largest_order(Ns), fit_order));
  const double C4 = fit_norm(gamma, fit_order) * std::pow(fit_order, beta);
  std::vector<AsymptoticsPoint> out;
  for (double N : Ns) {
    AsymptoticsPoint p = brute_force_point(gamma, N);
    p.predicted = kstar_asymptotic_algebraic(gamma.sigma2, C4, beta, N);
    p.tolerance = std::max(3.0, 0.15 * p.predicted);
    p.pass = std::abs(p.k_star - p.predicted) <= p.tolerance;
    out.push_back(p);
  }
  return out;
}

std::vector<BasinPoint> basin_profile(const TheoreticalCurve& curve) {
  if (curve.max_order < 2) throw ConfigError("basin_profile: need K_n >= 2");
  std::vector<BasinPoint> out;
  const double base = curve.loss(curve.k_star - 1);
  const double N = static_cast<double>(curve.N);
  for (int k = 1; k <= curve.max_order; ++k) {
    if (k == curve.k_star) continue;
    out.push_back({k, N * (curve.loss(k - 1) - base) / std::abs(k - curve.k_star)});
  }
  return out;
}

int max_order_rule(Eigen::Index n, double delta, double scale) {
  if (n < 2) throw ConfigError("max_order_rule: n must be at least 2");
  if (!(delta >= 0.0) || !(scale > 0.0)) throw ConfigError("max_order_rule: bad delta/scale");
  int k = 0;
  if (delta == 0.0 && scale == 1.0) {
    // exact integer square root
    auto r = static_cast<Eigen::Index>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    k = static_cast<int>(r);
  } else {
    k = static_cast<int>(std::floor(std::pow(scale * static_cast<double>(n), 1.0 / (2.0 + delta))));
  }
  return std::clamp<int>(k, 1, static_cast<int>(n - 1));
}

void write_curve_csv(std::ostream& os, const TheoreticalCurve& curve) {
  CsvWriter csv(os);
  csv.row({"k", "fit_norm", "L_n", "k_star"});
  for (int k = 1; k <= curve.max_order; ++k) {
    csv.row({std::to_string(k), format_double(curve.fit_norm(k - 1)),
             format_double(curve.loss(k - 1)), k == curve.k_star ? "1" : "0"});
  }
}

void write_basin_csv(std::ostream& os, const std::vector<BasinPoint>& profile) {
  CsvWriter csv(os);
  csv.row({"k", "ratio"});
  for (const auto& p : profile) csv.row({std::to_string(p.k), format_double(p.ratio)});
}

}  // namespace arpe
