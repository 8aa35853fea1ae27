#include "arpe/criteria.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "arpe/csv.hpp"
#include "arpe/errors.hpp"

namespace arpe {
namespace {

double parse_param(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("bad criterion parameter in '" + std::string(whole) + "'");
  }
  return v;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double log_variance(double s2, int k) {
  if (!(s2 > 0.0)) {
    throw DegeneracyError("residual variance is zero at order " + std::to_string(k) +
                              "; log-based criteria are undefined",
                          k);
  }
  return std::log(s2);
}

}  // namespace

CriterionId CriterionId::aic_alpha(double alpha) {
  if (!(alpha > 1.0)) throw ConfigError("alpha must exceed 1");
  return {CriterionKind::AICAlpha, alpha};
}

CriterionId CriterionId::fpe_alpha(double alpha) {
  if (!(alpha > 1.0)) throw ConfigError("alpha must exceed 1");
  return {CriterionKind::FPEAlpha, alpha};
}

CriterionId CriterionId::sn_alpha(double alpha) {
  if (!(alpha > 1.0)) throw ConfigError("alpha must exceed 1");
  return {CriterionKind::SnAlpha, alpha};
}

CriterionId CriterionId::hq(double c) {
  if (!(c > 1.0)) throw ConfigError("HQ constant must exceed 1");
  return {CriterionKind::HQ, c};
}

CriterionId CriterionId::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const bool has_param = colon != std::string_view::npos;
  const std::string_view tail = has_param ? text.substr(colon + 1) : std::string_view{};
  auto plain = [&](CriterionId id) {
    if (has_param) throw ConfigError("criterion '" + std::string(head) + "' takes no parameter");
    return id;
  };
  auto needs = [&]() {
    if (!has_param) throw ConfigError("criterion '" + std::string(head) + "' needs :alpha");
    return parse_param(tail, text);
  };
  if (head == "aic") return plain(aic());
  if (head == "fpe") return plain(fpe());
  if (head == "sn") return plain(sn());
  if (head == "sp") return plain(sp());
  if (head == "cp") return plain(cp());
  if (head == "bic") return plain(bic());
  if (head == "hq") return has_param ? hq(parse_param(tail, text)) : hq();
  if (head == "aic_alpha") return aic_alpha(needs());
  if (head == "fpe_alpha") return fpe_alpha(needs());
  if (head == "sn_alpha") return sn_alpha(needs());
  throw ConfigError("unknown criterion '" + std::string(text) + "'");
}

std::string CriterionId::name() const {
  switch (kind) {
    case CriterionKind::AIC: return "aic";
    case CriterionKind::FPE: return "fpe";
    case CriterionKind::Sn: return "sn";
    case CriterionKind::Sp: return "sp";
    case CriterionKind::Cp: return "cp";
    case CriterionKind::AICAlpha: return "aic_alpha:" + short_number(param);
    case CriterionKind::FPEAlpha: return "fpe_alpha:" + short_number(param);
    case CriterionKind::SnAlpha: return "sn_alpha:" + short_number(param);
    case CriterionKind::BIC: return "bic";
    case CriterionKind::HQ: return param == 1.01 ? "hq" : "hq:" + short_number(param);
  }
  return "?";
}

std::vector<CriterionId> parse_criteria_list(std::string_view text) {
  std::vector<CriterionId> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (piece.empty()) throw ConfigError("empty entry in criteria list");
    out.push_back(CriterionId::parse(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<CriterionId> default_criteria() {
  return {CriterionId::aic(), CriterionId::fpe(), CriterionId::sn(), CriterionId::sp(),
          CriterionId::cp(),  CriterionId::bic(), CriterionId::hq()};
}

CriterionScores score(const CriterionId& criterion, const FitSequence& fits) {
  const int K = fits.summary.max_order;
  const double n = static_cast<double>(fits.summary.n);
  const double N = static_cast<double>(fits.summary.N);
  CriterionScores out;
  out.criterion = criterion;
  out.scores.resize(K);
  const double tilde_max = fits.sigma2_tilde(K - 1);
  for (int k = 1; k <= K; ++k) {
    const double s2 = fits.sigma2_hat(k - 1);
    const double st2 = fits.sigma2_tilde(k - 1);
    double v = 0.0;
    switch (criterion.kind) {
      // AIC and Sn share the alpha-family expressions so that alpha = 2
      // reproduces them bit for bit.
      case CriterionKind::AIC: v = log_variance(s2, k) + (2.0 * k) / n; break;
      case CriterionKind::AICAlpha: v = log_variance(s2, k) + (criterion.param * k) / n; break;
      case CriterionKind::Sn: v = (N + 2.0 * k) * s2; break;
      case CriterionKind::SnAlpha: v = (N + criterion.param * k) * s2; break;
      case CriterionKind::FPE: v = (n + k) / (n - k) * s2; break;
      case CriterionKind::FPEAlpha: v = (1.0 + criterion.param * k / n) * s2; break;
      case CriterionKind::Sp:
        if (N - k - 1.0 <= 0.0) throw ConfigError("Sp needs N - k - 1 > 0");
        v = (1.0 + k / (N - k - 1.0)) * st2;
        break;
      case CriterionKind::Cp: v = N * s2 - (N - 2.0 * k) * tilde_max; break;
      case CriterionKind::BIC: v = log_variance(s2, k) + k * std::log(n) / n; break;
      case CriterionKind::HQ:
        v = log_variance(s2, k) + 2.0 * criterion.param * k * std::log(std::log(n)) / n;
        break;
    }
    out.scores(k - 1) = v;
  }
  out.k_hat = static_cast<int>(first_argmin(out.scores)) + 1;
  return out;
}

int select(const CriterionId& criterion, const FitSequence& fits) {
  return score(criterion, fits).k_hat;
}

void write_scores_csv(std::ostream& os, const std::vector<CriterionScores>& all) {
  CsvWriter csv(os);
  csv.row({"criterion", "k", "score", "selected"});
  for (const auto& s : all) {
    for (Eigen::Index k = 1; k <= s.scores.size(); ++k) {
      csv.row({s.criterion.name(), std::to_string(k), format_double(s.scores(k - 1)),
               k == s.k_hat ? "1" : "0"});
    }
  }
}

}  // namespace arpe
