#ifndef ARPE_CRITERIA_HPP
#define ARPE_CRITERIA_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "arpe/fit.hpp"

namespace arpe {

enum class CriterionKind { AIC, FPE, Sn, Sp, Cp, AICAlpha, FPEAlpha, SnAlpha, BIC, HQ };

/// An order-selection criterion. `param` is alpha for the alpha-weighted
/// family and the constant c for HQ; unused otherwise.
struct CriterionId {
  CriterionKind kind = CriterionKind::AIC;
  double param = 0.0;

  static CriterionId aic() { return {CriterionKind::AIC, 0.0}; }
  static CriterionId fpe() { return {CriterionKind::FPE, 0.0}; }
  static CriterionId sn() { return {CriterionKind::Sn, 0.0}; }
  static CriterionId sp() { return {CriterionKind::Sp, 0.0}; }
  static CriterionId cp() { return {CriterionKind::Cp, 0.0}; }
  static CriterionId aic_alpha(double alpha);
  static CriterionId fpe_alpha(double alpha);
  static CriterionId sn_alpha(double alpha);
  static CriterionId bic() { return {CriterionKind::BIC, 0.0}; }
  static CriterionId hq(double c = 1.01);

  /// Parses "aic", "fpe", "sn", "sp", "cp", "bic", "hq[:c]",
  /// "aic_alpha:A", "fpe_alpha:A", "sn_alpha:A".
  static CriterionId parse(std::string_view text);
  std::string name() const;

  bool operator==(const CriterionId&) const = default;
};

/// Comma-separated list of criterion names.
std::vector<CriterionId> parse_criteria_list(std::string_view text);

/// The five criteria of the efficiency results plus BIC and HQ.
std::vector<CriterionId> default_criteria();

struct CriterionScores {
  CriterionId criterion;
  Vector scores;  ///< entry k-1 holds the score of order k
  int k_hat = 1;  ///< smallest argmin
};

/// Scores every order 1..K_n:
///   Sn(k)  = (N + 2k) s2_k               AIC(k) = log s2_k + 2k/n
///   FPE(k) = (n + k)/(n - k) s2_k        Sp(k)  = (1 + k/(N - k - 1)) st2_k
///   Cp(k)  = N s2_k - (N - 2k) st2_{K_n}
///   AIC_a(k) = log s2_k + a k/n   FPE_a(k) = (1 + a k/n) s2_k   Sn_a(k) = (N + a k) s2_k
///   BIC(k) = log s2_k + k log(n)/n   HQ(k) = log s2_k + 2 c k log(log n)/n
/// where s2 is the residual mean square and st2 its N/(N-k) correction.
CriterionScores score(const CriterionId& criterion, const FitSequence& fits);

int select(const CriterionId& criterion, const FitSequence& fits);

/// Columns: criterion, k, score, selected.
void write_scores_csv(std::ostream& os, const std::vector<CriterionScores>& all);

}  // namespace arpe

#endif  // ARPE_CRITERIA_HPP
