#ifndef ARPE_PROCESS_HPP
#define ARPE_PROCESS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "arpe/linalg.hpp"

namespace arpe {

inline constexpr double kDefaultTruncationTol = 1e-12;
inline constexpr std::size_t kMaxCoefficients = 4096;
inline constexpr double kDefaultAutocovTol = 1e-10;

/// ARMA(p,q): x_t - sum phi_i x_{t-i} = e_t - sum theta_j e_{t-j}.
struct ArmaModel {
  std::vector<double> phi;
  std::vector<double> theta;
};

enum class ArRule { Exponential, Algebraic, List };

/// AR(infinity) model given directly by its coefficients in the
/// x_t + sum a_i x_{t-i} = e_t convention.
///   Exponential: a_i = c * rho^i
///   Algebraic:   a_i = c * i^(-gamma_exp)
///   List:        a_1..a_p as given
struct ExplicitArModel {
  ArRule rule = ArRule::List;
  double c = 0.0;
  double rho = 0.0;
  double gamma_exp = 0.0;
  std::vector<double> coeffs;
};

/// A validated data-generating process. Construct through the factories;
/// they reject non-causal, non-invertible or non-summable models.
class ProcessSpec {
 public:
  using Model = std::variant<ArmaModel, ExplicitArModel>;

  static ProcessSpec arma(std::vector<double> phi, std::vector<double> theta, double sigma2 = 1.0);
  static ProcessSpec white_noise(double sigma2 = 1.0) { return arma({}, {}, sigma2); }
  static ProcessSpec ar1(double phi, double sigma2 = 1.0) { return arma({phi}, {}, sigma2); }
  static ProcessSpec ma1(double theta, double sigma2 = 1.0) { return arma({}, {theta}, sigma2); }
  static ProcessSpec arma11(double phi, double theta, double sigma2 = 1.0) {
    return arma({phi}, {theta}, sigma2);
  }
  static ProcessSpec exponential_decay(double c, double rho, double sigma2 = 1.0);
  static ProcessSpec algebraic_decay(double c, double gamma_exp, double sigma2 = 1.0);
  static ProcessSpec explicit_ar(std::vector<double> coeffs, double sigma2 = 1.0);

  const Model& model() const { return model_; }
  double sigma2() const { return sigma2_; }
  bool is_arma() const { return std::holds_alternative<ArmaModel>(model_); }
  const ArmaModel& arma_model() const { return std::get<ArmaModel>(model_); }
  const ExplicitArModel& explicit_model() const { return std::get<ExplicitArModel>(model_); }

  /// Leading AR / MA coefficient of an ARMA spec, 0 when absent or not ARMA.
  double phi0() const;
  double theta0() const;

  /// Short human-readable identifier, e.g. "arma(0.5;0.8)".
  std::string label() const;

  bool operator==(const ProcessSpec& other) const;

 private:
  ProcessSpec(Model model, double sigma2) : model_(std::move(model)), sigma2_(sigma2) {}
  Model model_;
  double sigma2_;
};

/// a_1..a_M of x_t + sum a_i x_{t-i} = e_t.
struct ARCoeffs {
  Vector a;
  /// Bound (or geometric/algebraic estimate past the cap) on sum_{i>M} a_i^2.
  double tail_bound = 0.0;
  /// Effective truncation level: max(tol, |a_M|) unless `exact`.
  double truncation_tol = 0.0;
  /// The model has finitely many nonzero coefficients and `a` lists all of them.
  bool exact = false;
};

/// b_0..b_M of x_t = sum b_i e_{t-i}, b_0 = 1.
struct MACoeffs {
  Vector b;
  double tail_bound = 0.0;
  double truncation_tol = 0.0;
  bool exact = false;
};

struct AutocovTable {
  Vector gamma;  ///< gamma_0..gamma_M
  double sigma2 = 1.0;
  /// Upper bound on the truncation error of any stored gamma_h.
  double error_bound = 0.0;

  Eigen::Index max_lag() const { return gamma.size() - 1; }
};

/// Stream identifier for the random number generator. Distinct triples give
/// distinct, independently seeded generators.
struct StreamId {
  std::uint64_t master = 0;
  std::uint64_t cell = 0;
  std::uint64_t replication = 0;
  bool operator==(const StreamId&) const = default;
};

using Rng = std::mt19937_64;

/// Generator seeded from every 32-bit word of the stream id.
Rng make_rng(const StreamId& id);

/// Unit-variance noise sampler; the simulator scales by sqrt(sigma2).
using NoiseSampler = std::function<double(Rng&)>;
NoiseSampler gaussian_noise();

struct SamplePath {
  Vector x;            ///< x_1..x_n
  Vector innovations;  ///< e_1..e_n as drawn
  /// Observations before x_1, most recent last. Needed for the exact
  /// conditional mean when the model looks further back than the sample.
  Vector presample_x;
  /// Innovations before e_1, most recent last.
  Vector presample_e;
  StreamId seed;

  Eigen::Index size() const { return x.size(); }
  /// x_t for 1-based t, reaching into the presample for t <= 0; 0 beyond.
  double x_at(Eigen::Index t) const;
  double e_at(Eigen::Index t) const;
};

ARCoeffs ar_coefficients(const ProcessSpec& spec, double tol = kDefaultTruncationTol);
MACoeffs ma_coefficients(const ProcessSpec& spec, double tol = kDefaultTruncationTol);

/// gamma_0..gamma_max_lag. Closed forms for ARMA(1,1) and its special cases,
/// convolution of the MA coefficients otherwise. Throws PrecisionError when the
/// truncation error on any requested lag can exceed `tol * gamma_0`.
AutocovTable autocovariances(const ProcessSpec& spec, Eigen::Index max_lag,
                             double tol = kDefaultAutocovTol);

/// Convolution route sigma2 * sum_i b_i b_{i+h}, independent of the closed forms.
AutocovTable autocovariances_by_convolution(const ProcessSpec& spec, Eigen::Index max_lag,
                                            double tol = kDefaultAutocovTol);

/// Burn-in used by simulate() when none is given.
std::size_t default_burnin(const ProcessSpec& spec, double tol = kDefaultTruncationTol);

/// Seeded stationary sample of length n started from zeros after `burnin`
/// discarded steps (0 selects default_burnin()).
SamplePath simulate(const ProcessSpec& spec, Eigen::Index n, const StreamId& seed,
                    std::size_t burnin = 0, const NoiseSampler& noise = gaussian_noise());

/// E(x_{n+1} | full past) evaluated from the retained state.
double conditional_mean_next(const ProcessSpec& spec, const SamplePath& path);

/// Two-column CSV "t,x".
void write_path_csv(std::ostream& os, const SamplePath& path);

}  // namespace arpe

#endif  // ARPE_PROCESS_HPP
