#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "arpe/cli.hpp"
#include "arpe/config.hpp"
#include "arpe/errors.hpp"

using namespace arpe;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "arpe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "arpe_test_" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("spec shorthand") {
  CHECK(parse_spec("whitenoise") == ProcessSpec::white_noise());
  CHECK(parse_spec("ma1:0.8") == ProcessSpec::ma1(0.8));
  CHECK(parse_spec("ar1:-0.5") == ProcessSpec::ar1(-0.5));
  CHECK(parse_spec("arma11:0.5,0.6") == ProcessSpec::arma11(0.5, 0.6));
  CHECK(parse_spec("arma:0.5 -0.3;0.4") == ProcessSpec::arma({0.5, -0.3}, {0.4}));
  CHECK(parse_spec("expdecay:0.5,0.8") == ProcessSpec::exponential_decay(0.5, 0.8));
  CHECK(parse_spec("algdecay:0.5,2") == ProcessSpec::algebraic_decay(0.5, 2.0));
  CHECK(parse_spec("coeffs:0.3,-0.2") == ProcessSpec::explicit_ar({0.3, -0.2}));
  CHECK(parse_spec("ma1:0.8@2").sigma2() == 2.0);
  CHECK_THROWS_AS(parse_spec("ma2:0.8"), ConfigError);
  CHECK_THROWS_AS(parse_spec("ma1:0.8,0.1"), ConfigError);
  CHECK_THROWS_AS(parse_spec("ma1:abc"), ConfigError);
  CHECK_THROWS_AS(parse_spec("ma1:1.5"), InvalidSpec);
}

TEST_CASE("key-value parsing") {
  std::istringstream in("# experiment\nkind = arma\nphi = 0.5\ntheta = 0.6   # trailing\n\nreps=10\n");
  const auto kv = parse_key_values(in);
  CHECK(kv.at("kind") == "arma");
  CHECK(kv.at("theta") == "0.6");
  CHECK(kv.at("reps") == "10");
  std::istringstream dup("a = 1\na = 2\n");
  CHECK_THROWS_AS(parse_key_values(dup), ConfigError);
  std::istringstream noeq("just words\n");
  CHECK_THROWS_AS(parse_key_values(noeq), ConfigError);
}

TEST_CASE("experiment config") {
  std::istringstream in(
      "kind = arma\nphi = 0.5\ntheta = 0.6\ncells = 60/7 200\nreps = 25\nseed = 9\n"
      "criteria = aic,bic\nmode = raw\njobs = 2\n");
  const auto c = experiment_from_config(parse_key_values(in));
  CHECK(c.spec == ProcessSpec::arma11(0.5, 0.6));
  REQUIRE(c.cells.size() == 2);
  CHECK(c.cells[1].max_order == 14);
  CHECK(c.reps == 25);
  CHECK(c.master_seed == 9);
  CHECK(c.criteria.size() == 2);
  CHECK(c.mode == EstimatorMode::Raw);
  CHECK(c.jobs == 2);

  std::istringstream unknown("spec = ma1:0.8\nrepz = 3\n");
  CHECK_THROWS_AS(experiment_from_config(parse_key_values(unknown)), ConfigError);
  std::istringstream both("spec = ma1:0.8\nkind = arma\n");
  CHECK_THROWS_AS(experiment_from_config(parse_key_values(both)), ConfigError);
  std::istringstream missing("kind = expdecay\nc = 0.5\n");
  CHECK_THROWS_AS(spec_from_config(parse_key_values(missing)), ConfigError);
  CHECK_THROWS_AS(parse_cells("60/x"), ConfigError);
}

TEST_CASE("cli: theory curve of white noise") {
  const auto r = cli({"theory-curve", "--spec", "whitenoise", "--n", "100", "--kmax", "10"});
  CHECK(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "k,fit_norm,L_n,k_star");
  for (int k = 1; k <= 10; ++k) {
    std::getline(lines, line);
    const auto f1 = line.find(','), f2 = line.find(',', f1 + 1), f3 = line.find(',', f2 + 1);
    CHECK(std::stod(line.substr(f2 + 1, f3 - f2 - 1)) == doctest::Approx(k / 90.0).epsilon(1e-15));
    CHECK(line.substr(f3 + 1) == (k == 1 ? "1" : "0"));
  }
}

TEST_CASE("cli: identity check and selection") {
  const auto r = cli({"identity-check", "--spec", "ma1:0.8", "--paths", "100"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("decomposition,") != std::string::npos);

  const auto s = cli({"select", "--spec", "ma1:0.8", "--n", "60", "--criteria", "aic,sn"});
  CHECK(s.code == kExitOk);
  CHECK(s.out.rfind("criterion,k_hat\naic,", 0) == 0);
}

TEST_CASE("cli: simulate then fit the saved path") {
  const std::string path = "arpe_test_path.csv";
  CHECK(cli({"simulate", "--spec", "arma11:0.5,0.6", "--n", "80", "--seed", "3", "--out", path}).code ==
        kExitOk);
  const auto a = cli({"fit", "--input", path, "--kmax", "5"});
  const auto b = cli({"fit", "--spec", "arma11:0.5,0.6", "--n", "80", "--seed", "3", "--kmax", "5"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  std::remove(path.c_str());
}

TEST_CASE("cli: exit codes") {
  CHECK(cli({"theory-curve", "--bogus"}).code == kExitConfig);
  CHECK(cli({"nosuchcommand"}).code == kExitConfig);
  CHECK(cli({"theory-curve", "--spec", "ma1:2.0"}).code == kExitConfig);
  CHECK(cli({"run", "--config", "does_not_exist.cfg"}).code == kExitConfig);

  const std::string zeros = temp_file("zeros.csv", "t,x\n1,0\n2,0\n3,0\n4,0\n5,0\n6,0\n7,0\n8,0\n");
  CHECK(cli({"fit", "--input", zeros, "--kmax", "2"}).code == kExitDegenerate);
  std::remove(zeros.c_str());

  const std::string ref = temp_file("ref.csv",
                                    "phi0,theta0,n,K_n,statistic,value,tolerance\n"
                                    "0,0.8,60,7,r_star_aic,1000,0.1\n");
  const auto t = cli({"table2", "--reps", "50", "--theta", "0.8", "--cells", "60/7", "--reference", ref});
  CHECK(t.code == kExitReferenceMismatch);
  CHECK(t.err.find("FAIL r_star_aic") != std::string::npos);
  std::remove(ref.c_str());
}

TEST_CASE("cli: run with a config is deterministic and jobs-invariant") {
  const std::string cfg = temp_file("exp.cfg",
                                    "spec = ma1:0.8\ncells = 60/7 120/10\nreps = 60\n"
                                    "criteria = aic,fpe\nmaster_seed = 5\n");
  const auto a = cli({"run", "--config", cfg});
  const auto b = cli({"run", "--config", cfg, "--jobs", "4"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("0,0.8,120,10,gamma_opt,") != std::string::npos);
  std::remove(cfg.c_str());
}
