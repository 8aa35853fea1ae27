#include <doctest.h>

#include <sstream>

#include "arpe/errors.hpp"
#include "arpe/fit.hpp"

using namespace arpe;

namespace {

// Regressor matrix of the common window: row j - K holds x_j..x_{j-K+1}
// (1-based), the target is x_{j+1}.
Matrix design_matrix(const Vector& x, int K) {
  const Eigen::Index n = x.size();
  Matrix X(n - K, K);
  for (Eigen::Index j = K; j < n; ++j)
    for (int i = 0; i < K; ++i) X(j - K, i) = x(j - 1 - i);
  return X;
}

std::vector<ProcessSpec> families() {
  return {ProcessSpec::ma1(0.8), ProcessSpec::arma11(-0.9, 0.8), ProcessSpec::exponential_decay(0.5, 0.8)};
}

}  // namespace

TEST_CASE("design summary of a hand-computed series") {
  Vector x(6);
  x << 1, 0, 1, 0, 1, 0;
  const auto s = design_summary(x, 2);
  CHECK(s.N == 4);
  // lag-1 regressors (0,1,0,1), lag-2 (1,0,1,0), targets (1,0,1,0).
  CHECK(s.G(0, 0) == 0.5);
  CHECK(s.G(1, 1) == 0.5);
  CHECK(s.G(0, 1) == 0.0);
  CHECK(s.G(1, 0) == 0.0);
  CHECK(s.b(0) == 0.0);
  CHECK(s.b(1) == 0.5);
  CHECK(s.c0 == 0.5);
  const auto f = fit_all_orders(s);
  CHECK(f.a_hat[0](0) == 0.0);
  CHECK(f.sigma2_hat(0) == 0.5);
  CHECK(f.a_hat[1](1) == doctest::Approx(-1.0));
  CHECK(f.sigma2_hat(1) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("design summary equals explicit cross products") {
  const auto p = simulate(ProcessSpec::arma11(0.5, 0.6), 150, {2, 0, 0});
  const int K = 12;
  const auto s = design_summary(p, K);
  const Matrix X = design_matrix(p.x, K);
  const Vector y = p.x.tail(150 - K);
  const double N = 150 - K;
  CHECK((s.G - X.transpose() * X / N).norm() < 1e-12 * s.G.norm());
  CHECK((s.b - X.transpose() * y / N).norm() < 1e-12 * s.b.norm());
  CHECK(s.c0 == doctest::Approx(y.squaredNorm() / N).epsilon(1e-13));
}

TEST_CASE("nested fits equal separate least-squares solves") {
  const auto p = simulate(ProcessSpec::ma1(0.8), 200, {4, 0, 0});
  const int K = 14;
  const auto f = fit_all_orders(design_summary(p, K));
  const Matrix X = design_matrix(p.x, K);
  const Vector y = p.x.tail(200 - K);
  for (int k = 1; k <= K; ++k) {
    const Matrix Xk = X.leftCols(k);
    const Vector sol = Xk.colPivHouseholderQr().solve(y);
    const Vector& a = f.a_hat[static_cast<std::size_t>(k - 1)];
    CHECK((a + sol).norm() <= 1e-10 * sol.norm());
    const double rss = (y - Xk * sol).squaredNorm() / (200 - K);
    CHECK(f.sigma2_hat(k - 1) == doctest::Approx(rss).epsilon(1e-10));
    CHECK(f.sigma2_tilde(k - 1) == doctest::Approx(rss * (200 - K) / (200 - K - k)).epsilon(1e-10));
    if (k > 1) CHECK(f.sigma2_hat(k - 1) <= f.sigma2_hat(k - 2));
  }
  CHECK(normal_equation_residual(f) <= 1e-10);
}

TEST_CASE("degenerate and invalid windows") {
  CHECK_THROWS_AS(fit_all_orders(design_summary(Vector::Zero(40), 3)), DegeneracyError);
  Vector alt(40);
  for (Eigen::Index i = 0; i < 40; ++i) alt(i) = i % 2 ? 1.0 : -1.0;
  try {
    fit_all_orders(design_summary(alt, 3));
    FAIL("expected a degeneracy");
  } catch (const DegeneracyError& e) {
    CHECK(e.order() == 2);
  }
  CHECK_THROWS_AS(design_summary(Vector::Ones(5), 5), ConfigError);
  CHECK_THROWS_AS(fit_all_orders(design_summary(Vector::Random(10), 5)), ConfigError);
}

TEST_CASE("one-step predictor") {
  Vector x(4);
  x << 1, 2, 3, 4;
  Vector a(2);
  a << 0.5, -0.25;
  CHECK(predict_one(x, a) == doctest::Approx(-(0.5 * 4 - 0.25 * 3)));
  CHECK_THROWS_AS(predict_one(x, Vector::Ones(5)), ConfigError);
}

TEST_CASE("exact identities hold on every family") {
  for (const auto& spec : families()) {
    const auto rep = identity_check(spec, 120, 10, 20, 9);
    CHECK(rep.decomposition <= 1e-8);
    CHECK(rep.variance_identity <= 1e-8);
    CHECK(rep.normal_equations <= 1e-10);
  }
}

TEST_CASE("pseudo-innovations are computed over the common window") {
  const auto spec = ProcessSpec::ma1(0.8);
  const auto p = simulate(spec, 80, {6, 0, 0});
  const auto proj = yule_walker(autocovariances(spec, 3), 3);
  const auto pi = pseudo_innovation_stats(p, proj, 8);
  REQUIRE(pi.eps.size() == 72);
  const double first = p.x(8) + proj.a_k(0) * p.x(7) + proj.a_k(1) * p.x(6) + proj.a_k(2) * p.x(5);
  CHECK(pi.eps(0) == doctest::Approx(first));
  CHECK(pi.S2 == doctest::Approx(pi.eps.squaredNorm() / 72));
}

TEST_CASE("R-distance: direct form, expanded evaluator and projection route agree") {
  for (const auto& spec : families()) {
    const auto ar = ar_coefficients(spec);
    const int K = 10;
    const auto g = autocovariances(spec, std::max<Eigen::Index>(ar.a.size(), K));
    const RDistanceEvaluator eval(ar, g, K);
    const auto proj = yule_walker_all(g, K);
    const auto f = fit_all_orders(design_summary(simulate(spec, 100, {8, 0, 0}), K));
    for (int k = 1; k <= K; ++k) {
      const Vector& a_hat = f.a_hat[static_cast<std::size_t>(k - 1)];
      const double direct = empirical_R_distance(a_hat, ar, g);
      const Vector d = a_hat - proj[static_cast<std::size_t>(k - 1)].a_k;
      const double route = toeplitz_quadratic_form<double>(d, g.gamma) + fit_norm(g, k);
      CHECK(eval(a_hat) == doctest::Approx(direct).epsilon(1e-9));
      CHECK(route == doctest::Approx(direct).epsilon(1e-8));
    }
    CHECK_FALSE(r_distance_tail_warning(ar, g));
  }
}

TEST_CASE("fit CSV quotes the coefficient list") {
  Vector x(6);
  x << 1, 0, 1, 0, 1, 0;
  std::ostringstream os;
  write_fit_csv(os, fit_all_orders(design_summary(x, 2)));
  const std::string out = os.str();
  CHECK(out.rfind("k,sigma2_hat,sigma2_tilde,coefficients\n1,0.5,", 0) == 0);
  CHECK(out.find("\"") != std::string::npos);
}
