#ifndef ARPE_MC_HPP
#define ARPE_MC_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arpe/criteria.hpp"
#include "arpe/process.hpp"

namespace arpe {

enum class EstimatorMode {
  /// Squared gap between the exact conditional mean and the predictor; the
  /// future innovation is integrated out.
  Conditional,
  /// Realized squared error minus sigma^2 with x_{n+1} actually drawn.
  Raw,
};

std::string to_string(EstimatorMode mode);
EstimatorMode parse_mode(const std::string& text);

struct Cell {
  Eigen::Index n = 0;
  int max_order = 0;  ///< K_n
  bool operator==(const Cell&) const = default;
};

/// The five (n, K_n) cells with K_n = floor(sqrt(n)).
std::vector<Cell> standard_cells();

struct ExperimentConfig {
  ProcessSpec spec = ProcessSpec::white_noise();
  std::vector<Cell> cells = standard_cells();
  std::size_t reps = 1000;
  std::uint64_t master_seed = 1;
  std::vector<CriterionId> criteria = {CriterionId::aic()};
  Cell baseline_cell{60, 7};
  EstimatorMode mode = EstimatorMode::Conditional;
  unsigned jobs = 1;
  double truncation_tol = kDefaultTruncationTol;
};

/// Throws ConfigError unless every cell has 1 <= K_n < n - K_n, reps >= 1
/// and at least one criterion is given.
void validate(const ExperimentConfig& config);

/// Stream of replication `rep` in a cell. The cell key is derived from
/// (n, K_n), so a cell draws the same paths whatever its position in a grid.
StreamId seed_stream(std::uint64_t master_seed, std::uint64_t cell_key, std::uint64_t rep);
std::uint64_t cell_key(const Cell& cell);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

struct CriterionCellStats {
  CriterionId criterion;
  std::vector<std::size_t> histogram;  ///< index k holds the count of k_hat = k
  Estimate mspe_selected;              ///< mean d^2 at the selected order
  Estimate rdist_selected;             ///< mean ||a_hat(k_hat) - a||_R^2
  Estimate pe;                         ///< same-realization efficiency ratio
  Estimate pei;                        ///< independent-realization efficiency ratio
  Estimate r_star;                     ///< against the per-path oracle order
  Estimate r_star_I;
};

struct CellResult {
  std::string spec_label;
  Cell cell;
  std::size_t reps = 0;     ///< replications requested
  std::size_t dropped = 0;  ///< rank-degenerate replications skipped
  EstimatorMode mode = EstimatorMode::Conditional;
  std::vector<Estimate> mspe;        ///< m_hat(k), k = 1..K_n (entry k-1)
  std::vector<Estimate> mspe_indep;  ///< m_hat_I(k)
  int argmin_mspe = 1;
  int argmin_mspe_indep = 1;
  Estimate mean_min_mspe;   ///< mean over paths of min_k d_k^2
  Estimate mean_min_rdist;  ///< mean over paths of min_k ||a_hat(k) - a||_R^2
  std::vector<CriterionCellStats> criteria;
  double r_tail_bound = 0.0;  ///< truncated AR tail mass behind the R-distances

  double min_mspe() const { return mspe[static_cast<std::size_t>(argmin_mspe - 1)].value; }
  const CriterionCellStats& stats(const CriterionId& id) const;
};

/// Runs every replication of `config.cells[cell_index]`. Output is
/// bit-identical for any `config.jobs`.
CellResult run_cell(const ExperimentConfig& config, std::size_t cell_index);

std::vector<CellResult> run_experiment(const ExperimentConfig& config);

/// min_k m_hat(k) of each cell over min_{k <= 6} m_hat of the (60, 7)
/// baseline; a result equal to the baseline cell reports exactly 1.
std::vector<Estimate> gamma_opt(const std::vector<CellResult>& results, const CellResult& baseline);

/// One line of the long-format results table.
struct ResultRow {
  double phi0 = 0.0;
  double theta0 = 0.0;
  Eigen::Index n = 0;
  int max_order = 0;
  std::string statistic;
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Every statistic of a run (per-k MSPE curves, per-criterion ratios).
std::vector<ResultRow> experiment_rows(const ExperimentConfig& config,
                                       const std::vector<CellResult>& results);

struct TableOptions {
  std::size_t reps = 20000;
  std::uint64_t master_seed = 1;
  unsigned jobs = 1;
  EstimatorMode mode = EstimatorMode::Conditional;
  std::vector<double> phis;    ///< empty: the full grid
  std::vector<double> thetas;  ///< empty: the full grid
  std::vector<Cell> cells = standard_cells();
};

/// ARMA(1,1) grid: rows "pe_aic" and "gamma_opt" per (phi0, theta0, cell).
std::vector<ResultRow> table1(const TableOptions& options);
/// MA(1) grid: rows "r_star_aic".
std::vector<ResultRow> table2(const TableOptions& options);
/// MA(1) grid: rows "r_star_I_aic".
std::vector<ResultRow> table3(const TableOptions& options);

std::vector<double> table1_phis();
std::vector<double> table_thetas();

/// Columns: phi0, theta0, n, K_n, statistic, value, stderr.
void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);

struct ReferenceValue {
  double phi0 = 0.0;
  double theta0 = 0.0;
  Eigen::Index n = 0;
  int max_order = 0;
  std::string statistic;
  double value = 0.0;
  std::optional<double> tolerance;
};

/// Reads phi0, theta0, n, K_n, statistic, value[, tolerance].
std::vector<ReferenceValue> read_reference_csv(std::istream& is);

struct DiffLine {
  ReferenceValue reference;
  std::optional<double> ours;
  double tolerance = 0.0;
  bool pass = false;
};

/// Matches rows by (phi0, theta0, n, K_n, statistic). A reference entry
/// without its own tolerance uses `default_tolerance`; reference entries
/// absent from `rows` are skipped.
std::vector<DiffLine> diff_against_reference(const std::vector<ResultRow>& rows,
                                             const std::vector<ReferenceValue>& reference,
                                             double default_tolerance);

}  // namespace arpe

#endif  // ARPE_MC_HPP
