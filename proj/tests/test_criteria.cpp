#include <doctest.h>

#include <cmath>
#include <sstream>

#include "arpe/criteria.hpp"
#include "arpe/errors.hpp"

using namespace arpe;

namespace {

FitSequence synthetic(Eigen::Index n, std::vector<double> s2) {
  FitSequence f;
  const int K = static_cast<int>(s2.size());
  f.summary.n = n;
  f.summary.max_order = K;
  f.summary.N = n - K;
  f.sigma2_hat = Eigen::Map<Vector>(s2.data(), K);
  f.sigma2_tilde.resize(K);
  for (int k = 1; k <= K; ++k) {
    const double N = static_cast<double>(f.summary.N);
    f.sigma2_tilde(k - 1) = N / (N - k) * s2[static_cast<std::size_t>(k - 1)];
  }
  return f;
}

std::vector<CriterionId> every_criterion() {
  auto all = default_criteria();
  for (double a : {1.5, 3.0}) {
    all.push_back(CriterionId::aic_alpha(a));
    all.push_back(CriterionId::fpe_alpha(a));
    all.push_back(CriterionId::sn_alpha(a));
  }
  return all;
}

}  // namespace

TEST_CASE("two-order hand example") {
  // N = 90 and n = 100 with K_n = 10; only the first two orders differ.
  std::vector<double> s2(10, 0.97);
  s2[0] = 1.0;
  const auto f = synthetic(100, s2);
  const auto aic = score(CriterionId::aic(), f);
  CHECK(aic.scores(0) == doctest::Approx(0.02));
  CHECK(aic.scores(1) == doctest::Approx(std::log(0.97) + 0.04));
  CHECK(aic.scores(1) == doctest::Approx(0.009541).epsilon(1e-4));
  CHECK(aic.k_hat == 2);
  const auto sn = score(CriterionId::sn(), f);
  CHECK(sn.scores(0) == doctest::Approx(92.0));
  CHECK(sn.scores(1) == doctest::Approx(94 * 0.97));
  CHECK(sn.k_hat == 2);
}

TEST_CASE("scores follow their displays") {
  const std::vector<double> s2{1.3, 1.1, 1.05, 1.04, 1.035};
  const auto f = synthetic(60, s2);
  const double n = 60, N = 55;
  for (int k = 1; k <= 5; ++k) {
    const double s = s2[static_cast<std::size_t>(k - 1)];
    const double st = N / (N - k) * s;
    const double st_max = N / (N - 5) * s2[4];
    CHECK(score(CriterionId::fpe(), f).scores(k - 1) == doctest::Approx((n + k) / (n - k) * s));
    CHECK(score(CriterionId::sp(), f).scores(k - 1) == doctest::Approx((1 + k / (N - k - 1)) * st));
    CHECK(score(CriterionId::cp(), f).scores(k - 1) == doctest::Approx(N * s - (N - 2 * k) * st_max));
    CHECK(score(CriterionId::bic(), f).scores(k - 1) == doctest::Approx(std::log(s) + k * std::log(n) / n));
    CHECK(score(CriterionId::hq(), f).scores(k - 1) ==
          doctest::Approx(std::log(s) + 2 * 1.01 * k * std::log(std::log(n)) / n));
    CHECK(score(CriterionId::fpe_alpha(3), f).scores(k - 1) == doctest::Approx((1 + 3 * k / n) * s));
    CHECK(score(CriterionId::sn_alpha(3), f).scores(k - 1) == doctest::Approx((N + 3 * k) * s));
  }
}

TEST_CASE("constant residual variance selects order 1") {
  const auto f = synthetic(100, std::vector<double>(8, 0.8));
  for (const auto& c : every_criterion()) CHECK(select(c, f) == 1);
}

TEST_CASE("ties resolve to the smallest order") {
  // Sn(k) = (N + 2k) s2_k with N = 94: orders 3 and 5 tie at 100 * 26 = 104 * 25.
  std::vector<double> s2(6, 1000.0);
  s2[2] = 26.0;
  s2[4] = 25.0;
  const auto sc = score(CriterionId::sn(), synthetic(100, s2));
  REQUIRE(sc.scores(2) == sc.scores(4));
  CHECK(sc.k_hat == 3);
}

TEST_CASE("alpha = 2 reproduces AIC and Sn bit for bit") {
  const ProcessSpec spec = ProcessSpec::ma1(0.8);
  for (std::uint64_t r = 0; r < 30; ++r) {
    const auto f = fit_all_orders(design_summary(simulate(spec, 60, {3, 0, r}), 7));
    CHECK(score(CriterionId::aic(), f).scores == score(CriterionId::aic_alpha(2.0), f).scores);
    CHECK(score(CriterionId::sn(), f).scores == score(CriterionId::sn_alpha(2.0), f).scores);
  }
}

TEST_CASE("selection is invariant to rescaling the path") {
  const ProcessSpec spec = ProcessSpec::arma11(0.5, 0.6);
  for (std::uint64_t r = 0; r < 20; ++r) {
    const Vector x = simulate(spec, 120, {4, 0, r}).x;
    const auto base = fit_all_orders(design_summary(x, 10));
    for (double c : {1e-3, 1e3}) {
      const auto scaled = fit_all_orders(design_summary(Vector(c * x), 10));
      for (const auto& crit : every_criterion()) CHECK(select(crit, scaled) == select(crit, base));
    }
  }
}

TEST_CASE("AIC_alpha selections shrink as alpha grows") {
  const ProcessSpec spec = ProcessSpec::ma1(0.8);
  for (std::uint64_t r = 0; r < 50; ++r) {
    const auto f = fit_all_orders(design_summary(simulate(spec, 200, {5, 0, r}), 14));
    int prev = 1 << 20;
    for (double a : {1.5, 2.0, 3.0, 4.0}) {
      const int k = select(CriterionId::aic_alpha(a), f);
      CHECK(k <= prev);
      prev = k;
    }
  }
}

TEST_CASE("Cp argmin ignores additive shifts") {
  const auto f = synthetic(80, {2.0, 1.5, 1.45, 1.44, 1.43, 1.42});
  const auto sc = score(CriterionId::cp(), f);
  const Vector shifted = sc.scores.array() + 17.0;
  CHECK(first_argmin(shifted) + 1 == sc.k_hat);
}

TEST_CASE("log-based criteria refuse a zero residual variance") {
  const auto f = synthetic(50, {1.0, 0.0, 0.0});
  CHECK_THROWS_AS(score(CriterionId::aic(), f), DegeneracyError);
  CHECK_THROWS_AS(score(CriterionId::bic(), f), DegeneracyError);
  CHECK(select(CriterionId::fpe(), f) == 2);
}

TEST_CASE("parsing and names") {
  CHECK(CriterionId::parse("aic") == CriterionId::aic());
  CHECK(CriterionId::parse("aic_alpha:3.0") == CriterionId::aic_alpha(3.0));
  CHECK(CriterionId::parse("hq") == CriterionId::hq(1.01));
  CHECK(CriterionId::parse("hq:2") == CriterionId::hq(2.0));
  for (const auto& c : every_criterion()) CHECK(CriterionId::parse(c.name()) == c);
  CHECK_THROWS_AS(CriterionId::parse("aicc"), ConfigError);
  CHECK_THROWS_AS(CriterionId::parse("aic_alpha"), ConfigError);
  CHECK_THROWS_AS(CriterionId::parse("aic_alpha:1"), ConfigError);
  CHECK_THROWS_AS(CriterionId::parse("aic_alpha:x"), ConfigError);
  CHECK_THROWS_AS(CriterionId::parse("aic:2"), ConfigError);
  const auto list = parse_criteria_list("aic,fpe,sn_alpha:3");
  REQUIRE(list.size() == 3);
  CHECK(list[2] == CriterionId::sn_alpha(3));
  CHECK_THROWS_AS(parse_criteria_list("aic,,fpe"), ConfigError);
}

TEST_CASE("scores CSV marks the selected order") {
  std::vector<double> s2(3, 0.97);
  s2[0] = 1.0;
  std::ostringstream os;
  write_scores_csv(os, {score(CriterionId::sn(), synthetic(100, s2))});
  const std::string out = os.str();
  CHECK(out.rfind("criterion,k,score,selected\nsn,1,99,0\nsn,2,", 0) == 0);
  CHECK(out.find(",1\nsn,3,") != std::string::npos);
}
