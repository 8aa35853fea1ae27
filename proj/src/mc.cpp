#include "arpe/mc.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <thread>

#include "arpe/csv.hpp"
#include "arpe/errors.hpp"
#include "arpe/fit.hpp"

namespace arpe {
namespace {

struct Replication {
  bool dropped = false;
  Vector d2;     // per-order second-order squared error
  Vector rdist;  // per-order ||a_hat(k) - a||_R^2
  std::vector<int> k_hat;
};

// Shared read-only state of one cell.
struct CellContext {
  const ExperimentConfig& config;
  Cell cell;
  std::uint64_t key;
  std::size_t burnin;
  RDistanceEvaluator rdist;
};

Replication replicate(const CellContext& ctx, std::size_t rep) {
  const auto& config = ctx.config;
  const Eigen::Index n = ctx.cell.n;
  const int K = ctx.cell.max_order;
  const bool raw = config.mode == EstimatorMode::Raw;

  Replication out;
  SamplePath path = simulate(config.spec, raw ? n + 1 : n,
                             seed_stream(config.master_seed, ctx.key, rep), ctx.burnin);
  double future = 0.0;
  if (raw) {
    future = path.x(n);
    path.x.conservativeResize(n);
    path.innovations.conservativeResize(n);
  }

  FitSequence fits;
  try {
    fits = fit_all_orders(design_summary(path, K));
    out.k_hat.reserve(config.criteria.size());
    for (const auto& c : config.criteria) out.k_hat.push_back(select(c, fits));
  } catch (const DegeneracyError&) {
    out.dropped = true;
    return out;
  }

  const double cond = conditional_mean_next(config.spec, path);
  const double sigma2 = config.spec.sigma2();
  out.d2.resize(K);
  out.rdist.resize(K);
  for (int k = 1; k <= K; ++k) {
    const Vector& a_hat = fits.a_hat[static_cast<std::size_t>(k - 1)];
    const double pred = predict_one(path, a_hat);
    if (raw) {
      out.d2(k - 1) = (future - pred) * (future - pred) - sigma2;
    } else {
      out.d2(k - 1) = (cond - pred) * (cond - pred);
    }
    out.rdist(k - 1) = ctx.rdist(a_hat);
  }
  return out;
}

// Mean and standard error of the mean, summed in index order.
Estimate mean_estimate(const std::vector<double>& v) {
  const auto m = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / m;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = v.size() > 1 ? ss / (m - 1.0) : 0.0;
  return {mean, std::sqrt(var / m)};
}

// Ratio of means with a delta-method standard error on paired samples.
Estimate ratio_estimate(const std::vector<double>& num, const std::vector<double>& den) {
  const Estimate a = mean_estimate(num);
  const Estimate b = mean_estimate(den);
  const double r = a.value / b.value;
  std::vector<double> resid(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) resid[i] = num[i] - r * den[i];
  const Estimate e = mean_estimate(resid);
  return {r, e.stderr_ / std::abs(b.value)};
}

std::string format_stat_k(const std::string& base, int k) { return base + "_k" + std::to_string(k); }

}  // namespace

std::string to_string(EstimatorMode mode) {
  return mode == EstimatorMode::Conditional ? "conditional" : "raw";
}

EstimatorMode parse_mode(const std::string& text) {
  if (text == "conditional") return EstimatorMode::Conditional;
  if (text == "raw") return EstimatorMode::Raw;
  throw ConfigError("unknown estimator mode '" + text + "' (expected conditional or raw)");
}

std::vector<Cell> standard_cells() { return {{60, 7}, {120, 10}, {200, 14}, {500, 22}, {1000, 31}}; }

void validate(const ExperimentConfig& config) {
  if (config.reps < 1) throw ConfigError("reps must be at least 1");
  if (config.cells.empty()) throw ConfigError("no cells configured");
  if (config.criteria.empty()) throw ConfigError("no criteria configured");
  if (config.jobs < 1) throw ConfigError("jobs must be at least 1");
  for (const auto& c : config.cells) {
    if (c.max_order < 1 || c.n - c.max_order <= c.max_order + 1) {
      throw ConfigError("cell (" + std::to_string(c.n) + ", " + std::to_string(c.max_order) +
                        ") needs 1 <= K_n and n - K_n > K_n + 1");
    }
  }
}

std::uint64_t cell_key(const Cell& cell) {
  return (static_cast<std::uint64_t>(cell.n) << 20) | static_cast<std::uint64_t>(cell.max_order);
}

StreamId seed_stream(std::uint64_t master_seed, std::uint64_t key, std::uint64_t rep) {
  return {master_seed, key, rep};
}

const CriterionCellStats& CellResult::stats(const CriterionId& id) const {
  for (const auto& s : criteria) {
    if (s.criterion == id) return s;
  }
  throw ConfigError("criterion " + id.name() + " was not part of this run");
}

CellResult run_cell(const ExperimentConfig& config, std::size_t cell_index) {
  validate(config);
  if (cell_index >= config.cells.size()) throw ConfigError("cell index out of range");
  const Cell cell = config.cells[cell_index];
  const int K = cell.max_order;

  const ARCoeffs ar = ar_coefficients(config.spec, config.truncation_tol);
  const Eigen::Index lags = std::max<Eigen::Index>(ar.a.size(), K);
  const AutocovTable gamma = autocovariances(config.spec, lags);
  CellContext ctx{config, cell, cell_key(cell), default_burnin(config.spec, config.truncation_tol),
                  RDistanceEvaluator(ar, gamma, K)};

  std::vector<Replication> reps(config.reps);
  const unsigned workers = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(config.reps)));
  if (workers == 1) {
    for (std::size_t r = 0; r < config.reps; ++r) reps[r] = replicate(ctx, r);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = w; r < config.reps; r += workers) reps[r] = replicate(ctx, r);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  CellResult res;
  res.spec_label = config.spec.label();
  res.cell = cell;
  res.reps = config.reps;
  res.mode = config.mode;
  res.r_tail_bound = ar.tail_bound;
  std::vector<const Replication*> kept;
  kept.reserve(reps.size());
  for (const auto& r : reps) {
    if (r.dropped) {
      ++res.dropped;
    } else {
      kept.push_back(&r);
    }
  }
  if (static_cast<double>(res.dropped) > 0.001 * static_cast<double>(config.reps) || kept.empty()) {
    throw DegeneracyError(std::to_string(res.dropped) + " of " + std::to_string(config.reps) +
                              " replications were rank-degenerate (limit 0.1%)",
                          0);
  }

  const std::size_t m = kept.size();
  std::vector<std::vector<double>> d2(static_cast<std::size_t>(K), std::vector<double>(m));
  std::vector<std::vector<double>> rd(static_cast<std::size_t>(K), std::vector<double>(m));
  std::vector<double> min_d2(m), min_rd(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (int k = 0; k < K; ++k) {
      d2[static_cast<std::size_t>(k)][r] = kept[r]->d2(k);
      rd[static_cast<std::size_t>(k)][r] = kept[r]->rdist(k);
    }
    min_d2[r] = kept[r]->d2.minCoeff();
    min_rd[r] = kept[r]->rdist.minCoeff();
  }
  Vector mspe_means(K), indep_means(K);
  for (int k = 0; k < K; ++k) {
    res.mspe.push_back(mean_estimate(d2[static_cast<std::size_t>(k)]));
    res.mspe_indep.push_back(mean_estimate(rd[static_cast<std::size_t>(k)]));
    mspe_means(k) = res.mspe.back().value;
    indep_means(k) = res.mspe_indep.back().value;
  }
  res.argmin_mspe = static_cast<int>(first_argmin(mspe_means)) + 1;
  res.argmin_mspe_indep = static_cast<int>(first_argmin(indep_means)) + 1;
  res.mean_min_mspe = mean_estimate(min_d2);
  res.mean_min_rdist = mean_estimate(min_rd);

  for (std::size_t c = 0; c < config.criteria.size(); ++c) {
    CriterionCellStats s;
    s.criterion = config.criteria[c];
    s.histogram.assign(static_cast<std::size_t>(K) + 1, 0);
    std::vector<double> sel_d2(m), sel_rd(m);
    for (std::size_t r = 0; r < m; ++r) {
      const int kh = kept[r]->k_hat[c];
      ++s.histogram[static_cast<std::size_t>(kh)];
      sel_d2[r] = kept[r]->d2(kh - 1);
      sel_rd[r] = kept[r]->rdist(kh - 1);
    }
    s.mspe_selected = mean_estimate(sel_d2);
    s.rdist_selected = mean_estimate(sel_rd);
    s.pe = ratio_estimate(sel_d2, d2[static_cast<std::size_t>(res.argmin_mspe - 1)]);
    s.pei = ratio_estimate(sel_rd, rd[static_cast<std::size_t>(res.argmin_mspe_indep - 1)]);
    s.r_star = ratio_estimate(sel_d2, min_d2);
    s.r_star_I = ratio_estimate(sel_rd, min_rd);
    res.criteria.push_back(std::move(s));
  }
  return res;
}

std::vector<CellResult> run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<CellResult> out;
  out.reserve(config.cells.size());
  for (std::size_t i = 0; i < config.cells.size(); ++i) out.push_back(run_cell(config, i));
  return out;
}

std::vector<Estimate> gamma_opt(const std::vector<CellResult>& results, const CellResult& baseline) {
  if (baseline.mspe.empty()) throw ConfigError("gamma_opt: empty baseline");
  const std::size_t head = std::min<std::size_t>(6, baseline.mspe.size());
  std::size_t best = 0;
  for (std::size_t k = 1; k < head; ++k) {
    if (baseline.mspe[k].value < baseline.mspe[best].value) best = k;
  }
  const Estimate den = baseline.mspe[best];
  std::vector<Estimate> out;
  for (const auto& r : results) {
    if (r.spec_label != baseline.spec_label || r.mode != baseline.mode) {
      throw ConfigError("gamma_opt: cell of " + r.spec_label + " compared with baseline of " +
                        baseline.spec_label);
    }
    if (r.cell == baseline.cell) {
      out.push_back({1.0, 0.0});
      continue;
    }
    // Cells use independent streams, so the two relative variances add.
    const Estimate num = r.mspe[static_cast<std::size_t>(r.argmin_mspe - 1)];
    const double ratio = num.value / den.value;
    const double rel = std::hypot(num.stderr_ / num.value, den.stderr_ / den.value);
    out.push_back({ratio, std::abs(ratio) * rel});
  }
  return out;
}

std::vector<ResultRow> experiment_rows(const ExperimentConfig& config,
                                       const std::vector<CellResult>& results) {
  std::vector<ResultRow> rows;
  const double phi0 = config.spec.phi0();
  const double theta0 = config.spec.theta0();
  auto push = [&](const CellResult& r, std::string stat, const Estimate& e) {
    rows.push_back({phi0, theta0, r.cell.n, r.cell.max_order, std::move(stat), e.value, e.stderr_});
  };
  std::optional<std::vector<Estimate>> gammas;
  for (const auto& r : results) {
    if (r.cell == config.baseline_cell) {
      gammas = gamma_opt(results, r);
      break;
    }
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    for (std::size_t k = 0; k < r.mspe.size(); ++k) {
      push(r, format_stat_k("m_hat", static_cast<int>(k + 1)), r.mspe[k]);
    }
    for (std::size_t k = 0; k < r.mspe_indep.size(); ++k) {
      push(r, format_stat_k("m_hat_I", static_cast<int>(k + 1)), r.mspe_indep[k]);
    }
    push(r, "min_m_hat", r.mspe[static_cast<std::size_t>(r.argmin_mspe - 1)]);
    push(r, "mean_min_d2", r.mean_min_mspe);
    push(r, "mean_min_rdist", r.mean_min_rdist);
    if (gammas) push(r, "gamma_opt", (*gammas)[i]);
    for (const auto& s : r.criteria) {
      const std::string name = s.criterion.name();
      push(r, "pe_" + name, s.pe);
      push(r, "pei_" + name, s.pei);
      push(r, "r_star_" + name, s.r_star);
      push(r, "r_star_I_" + name, s.r_star_I);
    }
    push(r, "dropped", {static_cast<double>(r.dropped), 0.0});
  }
  return rows;
}

std::vector<double> table1_phis() { return {-0.9, -0.7, -0.5, 0.5, 0.7, 0.9}; }
std::vector<double> table_thetas() { return {0.8, 0.6, -0.6, -0.8}; }

namespace {

std::vector<Cell> with_baseline(std::vector<Cell> cells) {
  const Cell base{60, 7};
  if (std::find(cells.begin(), cells.end(), base) == cells.end()) cells.insert(cells.begin(), base);
  return cells;
}

ExperimentConfig table_config(const TableOptions& o, ProcessSpec spec, std::vector<Cell> cells) {
  ExperimentConfig c;
  c.spec = std::move(spec);
  c.cells = std::move(cells);
  c.reps = o.reps;
  c.master_seed = o.master_seed;
  c.jobs = o.jobs;
  c.mode = o.mode;
  c.criteria = {CriterionId::aic()};
  return c;
}

std::vector<ResultRow> ma1_table(const TableOptions& o, bool independent) {
  std::vector<ResultRow> rows;
  const auto thetas = o.thetas.empty() ? table_thetas() : o.thetas;
  for (double theta : thetas) {
    const ExperimentConfig config = table_config(o, ProcessSpec::ma1(theta), o.cells);
    for (const auto& r : run_experiment(config)) {
      const auto& s = r.stats(CriterionId::aic());
      const Estimate& e = independent ? s.r_star_I : s.r_star;
      rows.push_back({0.0, theta, r.cell.n, r.cell.max_order,
                      independent ? "r_star_I_aic" : "r_star_aic", e.value, e.stderr_});
    }
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> table1(const TableOptions& o) {
  std::vector<ResultRow> rows;
  const auto phis = o.phis.empty() ? table1_phis() : o.phis;
  const auto thetas = o.thetas.empty() ? table_thetas() : o.thetas;
  for (double phi : phis) {
    for (double theta : thetas) {
      const ExperimentConfig config =
          table_config(o, ProcessSpec::arma11(phi, theta), with_baseline(o.cells));
      const auto results = run_experiment(config);
      const CellResult* base = nullptr;
      for (const auto& r : results) {
        if (r.cell == config.baseline_cell) base = &r;
      }
      const auto gammas = gamma_opt(results, *base);
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (std::find(o.cells.begin(), o.cells.end(), r.cell) == o.cells.end()) continue;
        const auto& pe = r.stats(CriterionId::aic()).pe;
        rows.push_back({phi, theta, r.cell.n, r.cell.max_order, "pe_aic", pe.value, pe.stderr_});
        rows.push_back({phi, theta, r.cell.n, r.cell.max_order, "gamma_opt", gammas[i].value,
                        gammas[i].stderr_});
      }
    }
  }
  return rows;
}

std::vector<ResultRow> table2(const TableOptions& o) { return ma1_table(o, false); }
std::vector<ResultRow> table3(const TableOptions& o) { return ma1_table(o, true); }

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  CsvWriter csv(os);
  csv.row({"phi0", "theta0", "n", "K_n", "statistic", "value", "stderr"});
  for (const auto& r : rows) {
    csv.row({format_double(r.phi0), format_double(r.theta0), std::to_string(r.n),
             std::to_string(r.max_order), r.statistic, format_double(r.value),
             format_double(r.stderr_)});
  }
}

std::vector<ReferenceValue> read_reference_csv(std::istream& is) {
  std::vector<ReferenceValue> out;
  std::string line;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto f = parse_csv_line(line);
    if (header) {
      header = false;
      if (f.size() < 6 || f[0] != "phi0") throw ConfigError("reference file: bad header");
      continue;
    }
    if (f.size() < 6) throw ConfigError("reference file: short row at line " + std::to_string(lineno));
    try {
      ReferenceValue v;
      v.phi0 = std::stod(f[0]);
      v.theta0 = std::stod(f[1]);
      v.n = std::stol(f[2]);
      v.max_order = std::stoi(f[3]);
      v.statistic = f[4];
      v.value = std::stod(f[5]);
      if (f.size() > 6 && !f[6].empty()) v.tolerance = std::stod(f[6]);
      out.push_back(std::move(v));
    } catch (const std::logic_error&) {
      throw ConfigError("reference file: unparsable number at line " + std::to_string(lineno));
    }
  }
  return out;
}

std::vector<DiffLine> diff_against_reference(const std::vector<ResultRow>& rows,
                                             const std::vector<ReferenceValue>& reference,
                                             double default_tolerance) {
  std::vector<DiffLine> out;
  auto close = [](double a, double b) { return std::abs(a - b) < 1e-9; };
  for (const auto& ref : reference) {
    DiffLine d;
    d.reference = ref;
    d.tolerance = ref.tolerance.value_or(default_tolerance);
    for (const auto& r : rows) {
      if (close(r.phi0, ref.phi0) && close(r.theta0, ref.theta0) && r.n == ref.n &&
          r.max_order == ref.max_order && r.statistic == ref.statistic) {
        d.ours = r.value;
        break;
      }
    }
    if (!d.ours) continue;
    d.pass = std::abs(*d.ours - ref.value) <= d.tolerance;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace arpe
