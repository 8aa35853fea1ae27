#include "arpe/process.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "arpe/csv.hpp"
#include "arpe/errors.hpp"

namespace arpe {
namespace {

// Largest modulus of the reciprocal roots of 1 - c_1 z - ... - c_m z^m, i.e.
// the spectral radius of its companion matrix.
double reciprocal_root_radius(const std::vector<double>& c) {
  const auto m = static_cast<Eigen::Index>(c.size());
  if (m == 0) return 0.0;
  Matrix companion = Matrix::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) companion(0, j) = c[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Matrix> solver(companion, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Stationarity screen for A(z) = 1 + sum a_i z^i: |A| bounded away from zero
// on a grid of the unit circle plus z = 1, and zero winding number around the
// origin (so no zeros inside the disk).
void screen_unit_disk(const std::function<std::complex<double>(std::complex<double>)>& a_of_z,
                      const std::string& what) {
  constexpr int kGrid = 720;
  constexpr double kFloor = 1e-6;
  if (std::abs(a_of_z({1.0, 0.0})) < kFloor) {
    throw InvalidSpec(what + ": A(1) is numerically zero");
  }
  double winding = 0.0;
  std::complex<double> prev = a_of_z({1.0, 0.0});
  for (int j = 1; j <= kGrid; ++j) {
    const double w = 2.0 * std::numbers::pi * j / kGrid;
    const std::complex<double> cur = a_of_z(std::polar(1.0, w));
    if (std::abs(cur) < kFloor) {
      throw InvalidSpec(what + ": A(z) vanishes on the unit circle");
    }
    winding += std::arg(cur / prev);
    prev = cur;
  }
  if (std::abs(winding) > std::numbers::pi) {
    throw InvalidSpec(what + ": A(z) has zeros inside the unit disk");
  }
}

double algebraic_coefficient(const ExplicitArModel& m, std::size_t i) {
  return m.c * std::pow(static_cast<double>(i), -m.gamma_exp);
}

// Explicit coefficient rules evaluated up to `count` terms.
Vector explicit_coefficients(const ExplicitArModel& m, std::size_t count) {
  Vector a(static_cast<Eigen::Index>(count));
  for (std::size_t i = 1; i <= count; ++i) {
    double v = 0.0;
    switch (m.rule) {
      case ArRule::Exponential:
        v = m.c * std::pow(m.rho, static_cast<double>(i));
        break;
      case ArRule::Algebraic:
        v = algebraic_coefficient(m, i);
        break;
      case ArRule::List:
        v = i <= m.coeffs.size() ? m.coeffs[i - 1] : 0.0;
        break;
    }
    a(static_cast<Eigen::Index>(i - 1)) = v;
  }
  return a;
}

// Index (1-based) past which every stored term is at most tol; 0 if none exceed.
Eigen::Index last_significant(const Vector& seq, double tol) {
  for (Eigen::Index i = seq.size(); i >= 1; --i) {
    if (std::abs(seq(i - 1)) > tol) return i;
  }
  return 0;
}

// Power series of num(z)/den(z) with num = 1 - sum n_i z^i, den = 1 - sum d_j z^j,
// returned for lags 1..count.
Vector rational_series(const std::vector<double>& num, const std::vector<double>& den,
                       std::size_t count) {
  std::vector<double> s(count + 1, 0.0);
  s[0] = 1.0;
  for (std::size_t i = 1; i <= count; ++i) {
    double v = i <= num.size() ? -num[i - 1] : 0.0;
    for (std::size_t j = 1; j <= std::min(i, den.size()); ++j) v += den[j - 1] * s[i - j];
    s[i] = v;
  }
  return Eigen::Map<Vector>(s.data() + 1, static_cast<Eigen::Index>(count));
}

struct Truncated {
  Vector seq;  // terms 1..M
  double tail = 0.0;
  double effective_tol = 0.0;
};

// Truncates a generated sequence (terms 1..cap) and bounds the discarded
// squared mass. Past the cap the decay is extrapolated geometrically from
// `ratio` when ratio < 1, otherwise by a power law fitted to the last terms.
Truncated truncate(const Vector& full, double tol, double ratio) {
  Truncated out;
  const Eigen::Index cap = full.size();
  const Eigen::Index last = last_significant(full, tol);
  const Eigen::Index m = std::min(last + 1, cap);
  out.seq = full.head(m);
  out.tail = m < cap ? full.tail(cap - m).squaredNorm() : 0.0;
  if (last == cap && cap > 0) {
    const double end = full(cap - 1);
    if (ratio < 1.0) {
      out.tail += end * end * ratio * ratio / (1.0 - ratio * ratio);
    } else {
      const double lo = std::abs(full(cap / 2 - 1));
      const double hi = std::abs(end);
      const double p = lo > 0 && hi > 0 ? std::log(lo / hi) / std::log(2.0) : 1.0;
      const double denom = std::max(2.0 * p - 1.0, 1e-3);
      out.tail += end * end * static_cast<double>(cap) / denom;
    }
  }
  out.effective_tol = m > 0 ? std::max(tol, std::abs(out.seq(m - 1))) : tol;
  return out;
}

// Inverse power series of 1 + sum a_i z^i, terms 1..count.
Vector invert_series(const Vector& a, std::size_t count) {
  std::vector<double> s(count + 1, 0.0);
  s[0] = 1.0;
  const auto p = static_cast<std::size_t>(a.size());
  for (std::size_t i = 1; i <= count; ++i) {
    double v = 0.0;
    const std::size_t lim = std::min(i, p);
    for (std::size_t j = 1; j <= lim; ++j) v -= a(static_cast<Eigen::Index>(j - 1)) * s[i - j];
    s[i] = v;
  }
  return Eigen::Map<Vector>(s.data() + 1, static_cast<Eigen::Index>(count));
}

double decay_ratio_estimate(const ProcessSpec& spec, bool for_ma) {
  if (spec.is_arma()) {
    const auto& m = spec.arma_model();
    return reciprocal_root_radius(for_ma ? m.phi : m.theta);
  }
  const auto& m = spec.explicit_model();
  if (m.rule == ArRule::Algebraic) return 1.0;
  if (!for_ma && m.rule == ArRule::Exponential) return std::abs(m.rho);
  return 0.999;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

ProcessSpec ProcessSpec::arma(std::vector<double> phi, std::vector<double> theta, double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw InvalidSpec("sigma2 must be positive");
  if (!all_finite(phi) || !all_finite(theta)) throw InvalidSpec("non-finite ARMA coefficient");
  while (!phi.empty() && phi.back() == 0.0) phi.pop_back();
  while (!theta.empty() && theta.back() == 0.0) theta.pop_back();
  if (reciprocal_root_radius(phi) >= 1.0 - 1e-12) {
    throw InvalidSpec("AR polynomial has a root with |z| <= 1 (not causal)");
  }
  if (reciprocal_root_radius(theta) >= 1.0 - 1e-12) {
    throw InvalidSpec("MA polynomial has a root with |z| <= 1 (not invertible)");
  }
  return ProcessSpec(ArmaModel{std::move(phi), std::move(theta)}, sigma2);
}

ProcessSpec ProcessSpec::exponential_decay(double c, double rho, double sigma2) {
  if (!(sigma2 > 0.0)) throw InvalidSpec("sigma2 must be positive");
  if (!std::isfinite(c) || !(std::abs(rho) < 1.0)) {
    throw InvalidSpec("exponential rule needs finite c and |rho| < 1");
  }
  // A(z) = 1 + c rho z / (1 - rho z)
  screen_unit_disk([&](std::complex<double> z) { return 1.0 + c * rho * z / (1.0 - rho * z); },
                   "exponential rule");
  ExplicitArModel m;
  m.rule = ArRule::Exponential;
  m.c = c;
  m.rho = rho;
  return ProcessSpec(m, sigma2);
}

ProcessSpec ProcessSpec::algebraic_decay(double c, double gamma_exp, double sigma2) {
  if (!(sigma2 > 0.0)) throw InvalidSpec("sigma2 must be positive");
  if (!std::isfinite(c) || !(gamma_exp > 1.0)) {
    throw InvalidSpec("algebraic rule needs finite c and gamma_exp > 1 (absolute summability)");
  }
  ExplicitArModel m;
  m.rule = ArRule::Algebraic;
  m.c = c;
  m.gamma_exp = gamma_exp;
  const Vector a = explicit_coefficients(m, kMaxCoefficients);
  // Only the first kMaxCoefficients terms enter the screen; the rest is
  // bounded in modulus by |c| M^(1-gamma)/(gamma-1).
  screen_unit_disk(
      [&](std::complex<double> z) {
        std::complex<double> acc = 0.0, zp = 1.0;
        for (Eigen::Index i = 0; i < a.size(); ++i) {
          zp *= z;
          acc += a(i) * zp;
        }
        return 1.0 + acc;
      },
      "algebraic rule");
  return ProcessSpec(m, sigma2);
}

ProcessSpec ProcessSpec::explicit_ar(std::vector<double> coeffs, double sigma2) {
  if (!(sigma2 > 0.0)) throw InvalidSpec("sigma2 must be positive");
  if (!all_finite(coeffs)) throw InvalidSpec("non-finite AR coefficient");
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  // Finite list: exact root check (phi_i = -a_i) and the grid screen.
  std::vector<double> phi(coeffs.size());
  std::transform(coeffs.begin(), coeffs.end(), phi.begin(), [](double a) { return -a; });
  if (reciprocal_root_radius(phi) >= 1.0 - 1e-12) {
    throw InvalidSpec("coefficient list: A(z) has a root with |z| <= 1");
  }
  screen_unit_disk(
      [&](std::complex<double> z) {
        std::complex<double> acc = 0.0, zp = 1.0;
        for (double a : coeffs) {
          zp *= z;
          acc += a * zp;
        }
        return 1.0 + acc;
      },
      "coefficient list");
  ExplicitArModel m;
  m.rule = ArRule::List;
  m.coeffs = std::move(coeffs);
  return ProcessSpec(m, sigma2);
}

double ProcessSpec::phi0() const {
  if (!is_arma() || arma_model().phi.empty()) return 0.0;
  return arma_model().phi.front();
}

double ProcessSpec::theta0() const {
  if (!is_arma() || arma_model().theta.empty()) return 0.0;
  return arma_model().theta.front();
}

std::string ProcessSpec::label() const {
  std::ostringstream os;
  if (is_arma()) {
    const auto& m = arma_model();
    if (m.phi.empty() && m.theta.empty()) {
      os << "white_noise";
    } else {
      os << "arma(" << join(m.phi) << ";" << join(m.theta) << ")";
    }
  } else {
    const auto& m = explicit_model();
    switch (m.rule) {
      case ArRule::Exponential:
        os << "exp(c=" << m.c << ",rho=" << m.rho << ")";
        break;
      case ArRule::Algebraic:
        os << "alg(c=" << m.c << ",gamma=" << m.gamma_exp << ")";
        break;
      case ArRule::List:
        os << "ar_list(" << join(m.coeffs) << ")";
        break;
    }
  }
  if (sigma2_ != 1.0) os << "[sigma2=" << sigma2_ << "]";
  return os.str();
}

bool ProcessSpec::operator==(const ProcessSpec& other) const {
  if (sigma2_ != other.sigma2_ || model_.index() != other.model_.index()) return false;
  if (is_arma()) {
    return arma_model().phi == other.arma_model().phi &&
           arma_model().theta == other.arma_model().theta;
  }
  const auto& a = explicit_model();
  const auto& b = other.explicit_model();
  return a.rule == b.rule && a.c == b.c && a.rho == b.rho && a.gamma_exp == b.gamma_exp &&
         a.coeffs == b.coeffs;
}

Rng make_rng(const StreamId& id) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(id.master), hi(id.master), lo(id.cell), hi(id.cell),
                    lo(id.replication), hi(id.replication)};
  return Rng(seq);
}

NoiseSampler gaussian_noise() {
  return [](Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); };
}

double SamplePath::x_at(Eigen::Index t) const {
  if (t >= 1 && t <= x.size()) return x(t - 1);
  if (t <= 0) {
    const Eigen::Index idx = presample_x.size() - 1 + t;
    return idx >= 0 ? presample_x(idx) : 0.0;
  }
  return 0.0;
}

double SamplePath::e_at(Eigen::Index t) const {
  if (t >= 1 && t <= innovations.size()) return innovations(t - 1);
  if (t <= 0) {
    const Eigen::Index idx = presample_e.size() - 1 + t;
    return idx >= 0 ? presample_e(idx) : 0.0;
  }
  return 0.0;
}

ARCoeffs ar_coefficients(const ProcessSpec& spec, double tol) {
  if (!(tol > 0.0)) throw ConfigError("truncation tolerance must be positive");
  ARCoeffs out;
  if (spec.is_arma()) {
    const auto& m = spec.arma_model();
    if (m.theta.empty()) {
      out.a = Vector(static_cast<Eigen::Index>(m.phi.size()));
      for (std::size_t i = 0; i < m.phi.size(); ++i) out.a(static_cast<Eigen::Index>(i)) = -m.phi[i];
      out.exact = true;
      out.truncation_tol = tol;
      return out;
    }
    const Vector full = rational_series(m.phi, m.theta, kMaxCoefficients);
    const Truncated t = truncate(full, tol, reciprocal_root_radius(m.theta));
    out.a = t.seq;
    out.tail_bound = t.tail;
    out.truncation_tol = t.effective_tol;
    return out;
  }
  const auto& m = spec.explicit_model();
  switch (m.rule) {
    case ArRule::List:
      out.a = explicit_coefficients(m, m.coeffs.size());
      out.exact = true;
      out.truncation_tol = tol;
      return out;
    case ArRule::Exponential: {
      // |c| rho^M <= tol
      std::size_t count = 0;
      if (m.c != 0.0 && m.rho != 0.0) {
        const double need = std::log(tol / std::abs(m.c)) / std::log(std::abs(m.rho));
        count = static_cast<std::size_t>(std::clamp(std::ceil(need), 1.0,
                                                    static_cast<double>(kMaxCoefficients)));
      }
      out.a = explicit_coefficients(m, count);
      const double r2 = m.rho * m.rho;
      out.tail_bound = m.c * m.c * std::pow(r2, static_cast<double>(count + 1)) / (1.0 - r2);
      out.truncation_tol = count > 0 ? std::max(tol, std::abs(out.a(out.a.size() - 1))) : tol;
      return out;
    }
    case ArRule::Algebraic: {
      std::size_t count = 0;
      if (m.c != 0.0) {
        const double need = std::pow(std::abs(m.c) / tol, 1.0 / m.gamma_exp);
        count = static_cast<std::size_t>(
            std::clamp(std::ceil(need), 1.0, static_cast<double>(kMaxCoefficients)));
      }
      out.a = explicit_coefficients(m, count);
      const double mm = static_cast<double>(std::max<std::size_t>(count, 1));
      out.tail_bound = m.c * m.c * std::pow(mm, 1.0 - 2.0 * m.gamma_exp) / (2.0 * m.gamma_exp - 1.0);
      out.truncation_tol = count > 0 ? std::max(tol, std::abs(out.a(out.a.size() - 1))) : tol;
      return out;
    }
  }
  return out;
}

MACoeffs ma_coefficients(const ProcessSpec& spec, double tol) {
  if (!(tol > 0.0)) throw ConfigError("truncation tolerance must be positive");
  MACoeffs out;
  if (spec.is_arma()) {
    const auto& m = spec.arma_model();
    if (m.phi.empty()) {
      out.b = Vector(static_cast<Eigen::Index>(m.theta.size() + 1));
      out.b(0) = 1.0;
      for (std::size_t j = 0; j < m.theta.size(); ++j) out.b(static_cast<Eigen::Index>(j + 1)) = -m.theta[j];
      out.exact = true;
      out.truncation_tol = tol;
      return out;
    }
    const Vector full = rational_series(m.theta, m.phi, kMaxCoefficients);
    const Truncated t = truncate(full, tol, reciprocal_root_radius(m.phi));
    out.b.resize(t.seq.size() + 1);
    out.b << 1.0, t.seq;
    out.tail_bound = t.tail;
    out.truncation_tol = t.effective_tol;
    return out;
  }
  const ARCoeffs ar = ar_coefficients(spec, tol);
  const Vector full = invert_series(ar.a, kMaxCoefficients);
  const Truncated t = truncate(full, tol, decay_ratio_estimate(spec, true));
  out.b.resize(t.seq.size() + 1);
  out.b << 1.0, t.seq;
  out.tail_bound = t.tail;
  out.truncation_tol = t.effective_tol;
  return out;
}

namespace {

void check_positive_definite(const AutocovTable& table) {
  const auto order = static_cast<int>(std::min<Eigen::Index>(table.max_lag(), 256));
  if (order >= 1) {
    (void)levinson_durbin<double>(table.gamma.head(order + 1), order);
  } else if (!(table.gamma(0) > 0.0)) {
    throw DegeneracyError("gamma_0 must be positive", 0);
  }
}

}  // namespace

AutocovTable autocovariances_by_convolution(const ProcessSpec& spec, Eigen::Index max_lag,
                                            double tol) {
  if (max_lag < 0) throw ConfigError("max_lag must be nonnegative");
  // Keep every computed term (no tolerance cut) so the per-lag error bound is
  // driven only by the mass past the cap.
  const MACoeffs ma = ma_coefficients(spec, std::numeric_limits<double>::min());
  const Vector& b = ma.b;
  const Eigen::Index m = b.size() - 1;
  const double s2 = spec.sigma2();

  // suffix[i] = sum_{j >= i} b_j^2 (stored terms) + tail past the cap.
  Vector suffix(m + 2);
  suffix(m + 1) = ma.tail_bound;
  for (Eigen::Index i = m; i >= 0; --i) suffix(i) = suffix(i + 1) + b(i) * b(i);

  AutocovTable out;
  out.sigma2 = s2;
  out.gamma = Vector::Zero(max_lag + 1);
  double worst = 0.0;
  for (Eigen::Index h = 0; h <= max_lag; ++h) {
    if (h <= m) out.gamma(h) = s2 * b.head(m + 1 - h).dot(b.tail(m + 1 - h));
    // Missing products b_i b_{i+h} have i + h > m.
    const Eigen::Index first_missing = std::max<Eigen::Index>(0, m + 1 - h);
    const double partner_tail = h <= m ? ma.tail_bound : suffix(std::min(h, m + 1));
    worst = std::max(worst, s2 * std::sqrt(suffix(first_missing) * partner_tail));
  }
  out.error_bound = worst;
  if (worst > tol * out.gamma(0)) {
    throw PrecisionError("autocovariance truncation error " + std::to_string(worst) +
                             " exceeds tolerance; more than " + std::to_string(kMaxCoefficients) +
                             " MA terms required",
                         2 * kMaxCoefficients);
  }
  check_positive_definite(out);
  return out;
}

AutocovTable autocovariances(const ProcessSpec& spec, Eigen::Index max_lag, double tol) {
  if (max_lag < 0) throw ConfigError("max_lag must be nonnegative");
  if (spec.is_arma() && spec.arma_model().phi.size() <= 1 && spec.arma_model().theta.size() <= 1) {
    const double phi = spec.phi0();
    const double theta = spec.theta0();
    const double s2 = spec.sigma2();
    AutocovTable out;
    out.sigma2 = s2;
    out.gamma = Vector::Zero(max_lag + 1);
    out.gamma(0) = s2 * (1.0 - 2.0 * phi * theta + theta * theta) / (1.0 - phi * phi);
    if (max_lag >= 1) {
      out.gamma(1) = s2 * (1.0 - phi * theta) * (phi - theta) / (1.0 - phi * phi);
      for (Eigen::Index h = 2; h <= max_lag; ++h) out.gamma(h) = phi * out.gamma(h - 1);
    }
    check_positive_definite(out);
    return out;
  }
  return autocovariances_by_convolution(spec, max_lag, tol);
}

std::size_t default_burnin(const ProcessSpec& spec, double tol) {
  std::size_t memory = 0;
  if (spec.is_arma()) {
    memory = static_cast<std::size_t>(ma_coefficients(spec, tol).b.size());
  } else {
    memory = static_cast<std::size_t>(ar_coefficients(spec, tol).a.size());
  }
  return std::max<std::size_t>(1000, memory);
}

SamplePath simulate(const ProcessSpec& spec, Eigen::Index n, const StreamId& seed,
                    std::size_t burnin, const NoiseSampler& noise) {
  if (n < 1) throw ConfigError("simulate: n must be at least 1");
  if (burnin == 0) burnin = default_burnin(spec);
  const auto b = static_cast<Eigen::Index>(burnin);
  const Eigen::Index total = b + n;
  const double scale = std::sqrt(spec.sigma2());

  Rng rng = make_rng(seed);
  Vector e(total);
  for (Eigen::Index t = 0; t < total; ++t) e(t) = scale * noise(rng);

  Vector x = Vector::Zero(total);
  Eigen::Index x_memory = 0;
  Eigen::Index e_memory = 0;
  if (spec.is_arma()) {
    const auto& m = spec.arma_model();
    const auto p = static_cast<Eigen::Index>(m.phi.size());
    const auto q = static_cast<Eigen::Index>(m.theta.size());
    for (Eigen::Index t = 0; t < total; ++t) {
      double v = e(t);
      for (Eigen::Index i = 1; i <= std::min(p, t); ++i) v += m.phi[static_cast<std::size_t>(i - 1)] * x(t - i);
      for (Eigen::Index j = 1; j <= std::min(q, t); ++j) v -= m.theta[static_cast<std::size_t>(j - 1)] * e(t - j);
      x(t) = v;
    }
    x_memory = p;
    e_memory = q;
  } else {
    const Vector a = ar_coefficients(spec).a;
    const Eigen::Index p = a.size();
    for (Eigen::Index t = 0; t < total; ++t) {
      const Eigen::Index lim = std::min(p, t);
      double v = e(t);
      for (Eigen::Index i = 1; i <= lim; ++i) v -= a(i - 1) * x(t - i);
      x(t) = v;
    }
    x_memory = p;
  }

  SamplePath path;
  path.x = x.tail(n);
  path.innovations = e.tail(n);
  const Eigen::Index keep_x = std::min(x_memory, b);
  const Eigen::Index keep_e = std::min(e_memory, b);
  path.presample_x = x.segment(b - keep_x, keep_x);
  path.presample_e = e.segment(b - keep_e, keep_e);
  path.seed = seed;
  return path;
}

double conditional_mean_next(const ProcessSpec& spec, const SamplePath& path) {
  const Eigen::Index n = path.size();
  if (spec.is_arma()) {
    const auto& m = spec.arma_model();
    const auto p = static_cast<Eigen::Index>(m.phi.size());
    const auto q = static_cast<Eigen::Index>(m.theta.size());
    if (p > n + path.presample_x.size() || q > path.innovations.size() + path.presample_e.size()) {
      throw std::invalid_argument(
          "conditional_mean_next: path does not carry the state this model needs");
    }
    double v = 0.0;
    for (Eigen::Index i = 1; i <= p; ++i) v += m.phi[static_cast<std::size_t>(i - 1)] * path.x_at(n + 1 - i);
    for (Eigen::Index j = 1; j <= q; ++j) v -= m.theta[static_cast<std::size_t>(j - 1)] * path.e_at(n + 1 - j);
    return v;
  }
  // Missing history counts as the zero pre-start state of the simulator.
  const Vector a = ar_coefficients(spec).a;
  double v = 0.0;
  for (Eigen::Index i = 1; i <= a.size(); ++i) v -= a(i - 1) * path.x_at(n + 1 - i);
  return v;
}

void write_path_csv(std::ostream& os, const SamplePath& path) {
  CsvWriter csv(os);
  csv.row({"t", "x"});
  for (Eigen::Index t = 0; t < path.size(); ++t) {
    csv.row({std::to_string(t + 1), format_double(path.x(t))});
  }
}

}  // namespace arpe
