#include "arpe/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "arpe/config.hpp"
#include "arpe/criteria.hpp"
#include "arpe/csv.hpp"
#include "arpe/errors.hpp"
#include "arpe/fit.hpp"
#include "arpe/mc.hpp"
#include "arpe/theory.hpp"

namespace arpe {
namespace {

struct Options {
  std::string spec = "whitenoise";
  std::string config;
  long long n = 100;
  int kmax = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string criteria;
  std::string mode = "conditional";
  std::string out;
  std::string reference;
  double tolerance = 0.1;
  std::string input;
  std::size_t burnin = 0;
  double alpha = 2.0;
  std::size_t paths = 100;
  std::string family = "exp";
  double c = 0.5;
  double rho = 0.8;
  double gamma_exp = 2.0;
  std::string grid;
  std::string phis;
  std::string thetas;
  std::string cells;
};

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int resolved_kmax(const Options& o) {
  if (o.n < 2) throw ConfigError("--n must be at least 2");
  return o.kmax > 0 ? o.kmax : max_order_rule(o.n);
}

ProcessSpec resolved_spec(const Options& o) {
  if (!o.config.empty()) return spec_from_config(read_key_values_file(o.config));
  return parse_spec(o.spec);
}

Vector read_path_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input file '" + path + "'");
  std::vector<double> xs;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = parse_csv_line(line);
    if (header) {
      header = false;
      if (f.size() == 2 && f[0] == "t") continue;
    }
    try {
      xs.push_back(std::stod(f.back()));
    } catch (const std::logic_error&) {
      throw ConfigError("input file: cannot read '" + line + "'");
    }
  }
  return Eigen::Map<Vector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

Vector observed_series(const Options& o) {
  if (!o.input.empty()) return read_path_csv(o.input);
  return simulate(resolved_spec(o), o.n, {o.seed, 0, 0}, o.burnin).x;
}

std::vector<CriterionId> resolved_criteria(const Options& o) {
  return o.criteria.empty() ? default_criteria() : parse_criteria_list(o.criteria);
}

int finish_with_reference(const Options& o, const std::vector<ResultRow>& rows, std::ostream& err) {
  if (o.reference.empty()) return kExitOk;
  std::ifstream in(o.reference);
  if (!in) throw ConfigError("cannot open reference file '" + o.reference + "'");
  const auto diffs = diff_against_reference(rows, read_reference_csv(in), o.tolerance);
  int failures = 0;
  for (const auto& d : diffs) {
    const auto& r = d.reference;
    err << (d.pass ? "PASS " : "FAIL ") << r.statistic << " phi0=" << r.phi0
        << " theta0=" << r.theta0 << " (" << r.n << "," << r.max_order << ") ours=" << *d.ours
        << " paper=" << r.value << " tol=" << d.tolerance << '\n';
    failures += d.pass ? 0 : 1;
  }
  err << diffs.size() - static_cast<std::size_t>(failures) << "/" << diffs.size()
      << " reference values matched\n";
  return failures == 0 ? kExitOk : kExitReferenceMismatch;
}

TableOptions table_options(const Options& o) {
  TableOptions t;
  t.reps = o.reps > 0 ? o.reps : 20000;
  t.master_seed = o.seed;
  t.jobs = o.jobs;
  t.mode = parse_mode(o.mode);
  if (!o.phis.empty()) t.phis = parse_number_list(o.phis);
  if (!o.thetas.empty()) t.thetas = parse_number_list(o.thetas);
  if (!o.cells.empty()) t.cells = parse_cells(o.cells);
  return t;
}

void add_spec_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--spec", o.spec, "process shorthand, e.g. ma1:0.8 or arma11:0.5,0.6");
  cmd->add_option("--config", o.config, "key-value file with the process block");
}

void add_sample_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "sample length");
  cmd->add_option("--kmax", o.kmax, "maximal order K_n (default floor(sqrt(n)))");
}

void add_mc_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--reps", o.reps, "replications per cell");
  cmd->add_option("--jobs", o.jobs, "worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mode", o.mode, "conditional or raw");
  cmd->add_option("--reference", o.reference, "CSV of reference values to diff against");
  cmd->add_option("--tolerance", o.tolerance, "default absolute tolerance for --reference");
  cmd->add_option("--cells", o.cells, "cells such as 60/7,1000/31");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Autoregressive order selection and prediction-efficiency experiments", "arpe"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "master seed")->configurable(false);
  app.add_option("--out", o.out, "output file (default: stdout)");
  app.fallthrough();

  auto* simulate_cmd = app.add_subcommand("simulate", "write a simulated path as t,x CSV");
  add_spec_flags(simulate_cmd, o);
  simulate_cmd->add_option("--n", o.n, "sample length");
  simulate_cmd->add_option("--burnin", o.burnin, "discarded warm-up steps (0: automatic)");

  auto* fit_cmd = app.add_subcommand("fit", "least-squares fits of every order");
  auto* select_cmd = app.add_subcommand("select", "order selected by each criterion");
  for (auto* cmd : {fit_cmd, select_cmd}) {
    add_spec_flags(cmd, o);
    add_sample_flags(cmd, o);
    cmd->add_option("--input", o.input, "t,x CSV to use instead of a simulated path");
    cmd->add_option("--burnin", o.burnin, "discarded warm-up steps (0: automatic)");
  }
  select_cmd->add_option("--criteria", o.criteria, "comma list, e.g. aic,bic,aic_alpha:3");

  auto* curve_cmd = app.add_subcommand("theory-curve", "population loss curve and k_star");
  auto* basin_cmd = app.add_subcommand("basin", "basin ratios around k_star");
  for (auto* cmd : {curve_cmd, basin_cmd}) {
    add_spec_flags(cmd, o);
    add_sample_flags(cmd, o);
    cmd->add_option("--alpha", o.alpha, "complexity weight (2 for the plain curve)");
  }

  auto* identity_cmd = app.add_subcommand("identity-check", "exact finite-sample identities");
  add_spec_flags(identity_cmd, o);
  add_sample_flags(identity_cmd, o);
  identity_cmd->add_option("--paths", o.paths, "number of simulated paths");

  auto* asym_cmd = app.add_subcommand("asymptotics-check", "brute-force k_star vs asymptotics");
  asym_cmd->add_option("--family", o.family, "exp (a_i = c rho^i) or alg (a_i = c i^-gamma)")
      ->check(CLI::IsMember({"exp", "alg"}));
  asym_cmd->add_option("--c", o.c, "coefficient scale");
  asym_cmd->add_option("--rho", o.rho, "geometric rate of the exp family");
  asym_cmd->add_option("--gamma", o.gamma_exp, "decay exponent of the alg family");
  asym_cmd->add_option("--grid", o.grid, "N values (default 1e3,1e4,1e5 / 1e4,1e5)");

  auto* t1 = app.add_subcommand("table1", "ARMA(1,1) efficiency grid");
  auto* t2 = app.add_subcommand("table2", "MA(1) strong-efficiency ratios");
  auto* t3 = app.add_subcommand("table3", "MA(1) independent-realization ratios");
  for (auto* cmd : {t1, t2, t3}) {
    add_mc_flags(cmd, o);
    cmd->add_option("--theta", o.thetas, "theta0 values (comma list)");
  }
  t1->add_option("--phi", o.phis, "phi0 values (comma list)");

  auto* run_cmd = app.add_subcommand("run", "experiment described by a config file");
  run_cmd->add_option("--config", o.config, "experiment config")->required();
  add_mc_flags(run_cmd, o);
  run_cmd->add_option("--criteria", o.criteria, "override the config's criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*simulate_cmd) {
      const ProcessSpec spec = resolved_spec(o);
      Sink sink(o.out, out);
      write_path_csv(*sink, simulate(spec, o.n, {o.seed, 0, 0}, o.burnin));
      return kExitOk;
    }
    if (*fit_cmd || *select_cmd) {
      const Vector x = observed_series(o);
      const int K = o.kmax > 0 ? o.kmax : max_order_rule(x.size());
      const FitSequence fits = fit_all_orders(design_summary(x, K));
      Sink sink(o.out, out);
      if (*fit_cmd) {
        write_fit_csv(*sink, fits);
        return kExitOk;
      }
      std::vector<CriterionScores> all;
      for (const auto& c : resolved_criteria(o)) {
        all.push_back(score(c, fits));
        err << c.name() << ": k_hat = " << all.back().k_hat << '\n';
      }
      if (o.out.empty()) {
        CsvWriter csv(out);
        csv.row({"criterion", "k_hat"});
        for (const auto& s : all) csv.row({s.criterion.name(), std::to_string(s.k_hat)});
      } else {
        write_scores_csv(*sink, all);
        for (const auto& s : all) out << s.criterion.name() << ' ' << s.k_hat << '\n';
      }
      return kExitOk;
    }
    if (*curve_cmd || *basin_cmd) {
      const TheoreticalCurve curve = loss_curve(resolved_spec(o), o.n, resolved_kmax(o), o.alpha);
      err << "k_star = " << curve.k_star << " (N = " << curve.N << ")\n";
      Sink sink(o.out, out);
      if (*curve_cmd) {
        write_curve_csv(*sink, curve);
      } else {
        write_basin_csv(*sink, basin_profile(curve));
      }
      return kExitOk;
    }
    if (*identity_cmd) {
      const auto rep = identity_check(resolved_spec(o), o.n, resolved_kmax(o), o.paths, o.seed);
      Sink sink(o.out, out);
      CsvWriter csv(*sink);
      csv.row({"identity", "max_residual", "tolerance", "pass"});
      const bool ok_dec = rep.decomposition <= 1e-8;
      const bool ok_var = rep.variance_identity <= 1e-8;
      const bool ok_ne = rep.normal_equations <= 1e-10;
      csv.row({"decomposition", format_double(rep.decomposition), "1e-08", ok_dec ? "1" : "0"});
      csv.row({"variance", format_double(rep.variance_identity), "1e-08", ok_var ? "1" : "0"});
      csv.row({"normal_equations", format_double(rep.normal_equations), "1e-10", ok_ne ? "1" : "0"});
      return ok_dec && ok_var && ok_ne ? kExitOk : kExitDegenerate;
    }
    if (*asym_cmd) {
      std::vector<AsymptoticsPoint> pts;
      if (o.family == "exp") {
        const auto grid = o.grid.empty() ? std::vector<double>{1e3, 1e4, 1e5} : parse_number_list(o.grid);
        if (!(o.rho > 0.0 && o.rho < 1.0)) throw ConfigError("--rho must lie in (0, 1)");
        pts = exponential_asymptotics(ProcessSpec::exponential_decay(o.c, o.rho), -2.0 * std::log(o.rho),
                                      grid);
      } else {
        const auto grid = o.grid.empty() ? std::vector<double>{1e4, 1e5} : parse_number_list(o.grid);
        pts = algebraic_asymptotics(ProcessSpec::algebraic_decay(o.c, o.gamma_exp),
                                    2.0 * o.gamma_exp - 1.0, grid);
      }
      Sink sink(o.out, out);
      CsvWriter csv(*sink);
      csv.row({"N", "K_n", "k_star", "predicted", "tolerance", "pass"});
      bool all_pass = true;
      for (const auto& p : pts) {
        csv.row({format_double(p.N), std::to_string(p.max_order), std::to_string(p.k_star),
                 format_double(p.predicted), format_double(p.tolerance), p.pass ? "1" : "0"});
        all_pass = all_pass && p.pass;
      }
      return all_pass ? kExitOk : kExitReferenceMismatch;
    }
    if (*t1 || *t2 || *t3) {
      const TableOptions t = table_options(o);
      err << "running " << (*t1 ? "table1" : *t2 ? "table2" : "table3") << " with " << t.reps
          << " replications per cell\n";
      const auto rows = *t1 ? table1(t) : *t2 ? table2(t) : table3(t);
      {
        Sink sink(o.out, out);
        write_results_csv(*sink, rows);
      }
      return finish_with_reference(o, rows, err);
    }
    if (*run_cmd) {
      ExperimentConfig config = experiment_from_config(read_key_values_file(o.config));
      if (o.reps > 0) config.reps = o.reps;
      if (run_cmd->count("--mode") > 0) config.mode = parse_mode(o.mode);
      if (app.count("--seed") > 0) config.master_seed = o.seed;
      if (!o.cells.empty()) config.cells = parse_cells(o.cells);
      if (!o.criteria.empty()) config.criteria = parse_criteria_list(o.criteria);
      config.jobs = std::max(config.jobs, o.jobs);
      validate(config);
      const auto results = run_experiment(config);
      for (const auto& r : results) {
        if (r.dropped > 0) {
          err << "cell (" << r.cell.n << "," << r.cell.max_order << "): dropped " << r.dropped
              << " degenerate replications\n";
        }
      }
      const auto rows = experiment_rows(config, results);
      {
        Sink sink(o.out, out);
        write_results_csv(*sink, rows);
      }
      return finish_with_reference(o, rows, err);
    }
  } catch (const DegeneracyError& e) {
    err << "numerical degeneracy: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const PrecisionError& e) {
    err << "precision failure: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace arpe
