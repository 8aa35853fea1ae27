#include <doctest.h>

#include <cmath>
#include <sstream>

#include "arpe/errors.hpp"
#include "arpe/process.hpp"

using namespace arpe;

namespace {

// Power series of P(z)/Q(z) by schoolbook long division, coefficients 0..m.
std::vector<double> long_division(const std::vector<double>& p, const std::vector<double>& q,
                                  std::size_t m) {
  std::vector<double> out(m + 1, 0.0);
  for (std::size_t i = 0; i <= m; ++i) {
    double v = i < p.size() ? p[i] : 0.0;
    for (std::size_t j = 1; j < q.size() && j <= i; ++j) v -= q[j] * out[i - j];
    out[i] = v / q[0];
  }
  return out;
}

double sample_variance(const Vector& x) {
  const double mean = x.mean();
  return (x.array() - mean).square().sum() / static_cast<double>(x.size() - 1);
}

}  // namespace

TEST_CASE("MA(1) AR coefficients are powers of theta") {
  const auto ar = ar_coefficients(ProcessSpec::ma1(0.8));
  REQUIRE(ar.a.size() > 50);
  for (Eigen::Index i = 0; i < 50; ++i) {
    CHECK(ar.a(i) == doctest::Approx(std::pow(0.8, static_cast<double>(i + 1))).epsilon(1e-12));
  }
  CHECK_FALSE(ar.exact);
  CHECK(ar.tail_bound < 1e-20);
}

TEST_CASE("ARMA(1,1) AR coefficients match long division of (1 - phi z)/(1 - theta z)") {
  const double phi = -0.7, theta = 0.6;
  const auto ar = ar_coefficients(ProcessSpec::arma11(phi, theta));
  const auto oracle = long_division({1.0, -phi}, {1.0, -theta}, 40);
  for (std::size_t i = 1; i <= 40; ++i) {
    CHECK(ar.a(static_cast<Eigen::Index>(i - 1)) == doctest::Approx(oracle[i]).epsilon(1e-12));
    CHECK(ar.a(static_cast<Eigen::Index>(i - 1)) ==
          doctest::Approx(-(phi - theta) * std::pow(theta, static_cast<double>(i - 1))));
  }
}

TEST_CASE("ARMA(2,1) coefficients in both directions") {
  const std::vector<double> phi{0.5, -0.3};
  const std::vector<double> theta{0.4};
  const ProcessSpec spec = ProcessSpec::arma(phi, theta);
  const auto ar = ar_coefficients(spec);
  const auto ma = ma_coefficients(spec);
  const auto ar_oracle = long_division({1.0, -phi[0], -phi[1]}, {1.0, -theta[0]}, 30);
  const auto ma_oracle = long_division({1.0, -theta[0]}, {1.0, -phi[0], -phi[1]}, 30);
  CHECK(ma.b(0) == 1.0);
  for (std::size_t i = 1; i <= 30; ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    CHECK(ar.a(idx - 1) == doctest::Approx(ar_oracle[i]).scale(1.0).epsilon(1e-12));
    CHECK(ma.b(idx) == doctest::Approx(ma_oracle[i]).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("finite AR models are exact") {
  const auto ar = ar_coefficients(ProcessSpec::ar1(0.5));
  REQUIRE(ar.a.size() == 1);
  CHECK(ar.a(0) == -0.5);
  CHECK(ar.exact);
  CHECK(ar.tail_bound == 0.0);

  const auto listed = ar_coefficients(ProcessSpec::explicit_ar({0.3, -0.2, 0.1}));
  REQUIRE(listed.a.size() == 3);
  CHECK(listed.a(2) == 0.1);
  CHECK(listed.exact);

  const auto wn = ar_coefficients(ProcessSpec::white_noise());
  CHECK(wn.a.size() == 0);
}

TEST_CASE("explicit decay rules generate their coefficients") {
  const auto e = ar_coefficients(ProcessSpec::exponential_decay(0.5, 0.8));
  for (Eigen::Index i = 0; i < 20; ++i) {
    CHECK(e.a(i) == doctest::Approx(0.5 * std::pow(0.8, static_cast<double>(i + 1))));
  }
  const auto g = ar_coefficients(ProcessSpec::algebraic_decay(0.5, 2.0));
  for (Eigen::Index i = 0; i < 20; ++i) {
    CHECK(g.a(i) == doctest::Approx(0.5 / std::pow(static_cast<double>(i + 1), 2.0)));
  }
  CHECK(g.tail_bound > 0.0);
}

TEST_CASE("invalid processes are rejected") {
  CHECK_THROWS_AS(ProcessSpec::ar1(1.0), InvalidSpec);
  CHECK_THROWS_AS(ProcessSpec::ar1(-1.2), InvalidSpec);
  CHECK_THROWS_AS(ProcessSpec::ma1(1.0), InvalidSpec);
  CHECK_THROWS_AS(ProcessSpec::arma({1.2, -0.2}, {}), InvalidSpec);  // unit root at z = 1
  CHECK_THROWS_AS(ProcessSpec::white_noise(0.0), InvalidSpec);
  CHECK_THROWS_AS(ProcessSpec::exponential_decay(0.5, 1.0), InvalidSpec);
  CHECK_THROWS_AS(ProcessSpec::algebraic_decay(0.5, 1.0), InvalidSpec);
  CHECK_THROWS_AS(ProcessSpec::explicit_ar({-2.5, 1.5}), InvalidSpec);
  // c rho / (1 - rho) = -1 puts a zero of A(z) at z = 1.
  CHECK_THROWS_AS(ProcessSpec::exponential_decay(-0.25, 0.8), InvalidSpec);
  CHECK_NOTHROW(ProcessSpec::arma({0.5, 0.3}, {-0.4}));
}

TEST_CASE("ARMA(1,1) autocovariances: closed form, convolution and formula agree") {
  const double phi = 0.5, theta = 0.8, s2 = 2.0;
  const ProcessSpec spec = ProcessSpec::arma11(phi, theta, s2);
  const auto closed = autocovariances(spec, 20);
  const auto conv = autocovariances_by_convolution(spec, 20);
  const double g0 = s2 * (1 - 2 * phi * theta + theta * theta) / (1 - phi * phi);
  const double g1 = s2 * (1 - phi * theta) * (phi - theta) / (1 - phi * phi);
  CHECK(closed.gamma(0) == doctest::Approx(g0).epsilon(1e-14));
  CHECK(closed.gamma(1) == doctest::Approx(g1).epsilon(1e-14));
  for (Eigen::Index h = 0; h <= 20; ++h) {
    CHECK(conv.gamma(h) == doctest::Approx(closed.gamma(h)).scale(g0).epsilon(1e-10));
  }
  CHECK(closed.sigma2 == s2);
}

TEST_CASE("AR(2) autocovariances satisfy the Yule-Walker recursion") {
  const double p1 = 0.5, p2 = -0.3;
  const auto g = autocovariances(ProcessSpec::arma({p1, p2}, {}), 15);
  const double rho1 = p1 / (1 - p2);
  const double g0 = 1.0 / (1 - p1 * rho1 - p2 * (p1 * rho1 + p2));
  CHECK(g.gamma(0) == doctest::Approx(g0).epsilon(1e-10));
  CHECK(g.gamma(1) == doctest::Approx(rho1 * g0).epsilon(1e-10));
  for (Eigen::Index h = 2; h <= 15; ++h) {
    CHECK(g.gamma(h) == doctest::Approx(p1 * g.gamma(h - 1) + p2 * g.gamma(h - 2)).scale(g0));
  }
}

TEST_CASE("MA(1) autocovariances vanish past lag 1") {
  const auto g = autocovariances(ProcessSpec::ma1(0.8), 5);
  CHECK(g.gamma(0) == doctest::Approx(1.64));
  CHECK(g.gamma(1) == doctest::Approx(-0.8));
  for (Eigen::Index h = 2; h <= 5; ++h) CHECK(g.gamma(h) == 0.0);
}

TEST_CASE("make_rng is a pure function of the stream id") {
  Rng a = make_rng({1, 2, 3});
  Rng b = make_rng({1, 2, 3});
  Rng c = make_rng({1, 2, 4});
  Rng d = make_rng({2, 2, 3});
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("simulate is deterministic per seed") {
  const ProcessSpec spec = ProcessSpec::arma11(0.5, 0.6);
  const auto p1 = simulate(spec, 200, {7, 1, 1});
  const auto p2 = simulate(spec, 200, {7, 1, 1});
  const auto p3 = simulate(spec, 200, {7, 1, 2});
  CHECK(p1.x == p2.x);
  CHECK(p1.x != p3.x);
  CHECK(p1.size() == 200);
  CHECK(p1.innovations.size() == 200);
}

TEST_CASE("simulated paths reproduce the recursion") {
  const ProcessSpec spec = ProcessSpec::arma11(-0.7, 0.6, 1.5);
  const auto p = simulate(spec, 100, {3, 0, 0});
  for (Eigen::Index t = 1; t <= 100; ++t) {
    const double rhs = -0.7 * p.x_at(t - 1) + p.e_at(t) - 0.6 * p.e_at(t - 1);
    CHECK(p.x_at(t) == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("long simulations match the stationary variance") {
  for (const auto& spec : {ProcessSpec::ma1(0.8), ProcessSpec::ar1(0.7), ProcessSpec::arma11(0.5, -0.6)}) {
    const auto g = autocovariances(spec, 1);
    const auto p = simulate(spec, 200000, {11, 0, 0});
    // Loose band: the sample variance of a short-memory series has relative
    // standard deviation of order sqrt(2 * sum rho_h^2 / n) < 0.01 here.
    CHECK(sample_variance(p.x) == doctest::Approx(g.gamma(0)).epsilon(0.03));
  }
}

TEST_CASE("conditional mean of the next value") {
  const auto ma = ProcessSpec::ma1(0.8);
  const auto p = simulate(ma, 50, {5, 0, 0});
  CHECK(conditional_mean_next(ma, p) == doctest::Approx(-0.8 * p.innovations(49)));

  const auto ar = ProcessSpec::ar1(0.5);
  const auto q = simulate(ar, 50, {5, 0, 1});
  CHECK(conditional_mean_next(ar, q) == doctest::Approx(0.5 * q.x(49)));

  // Explicit AR: -sum a_i x_{n+1-i} over the available history.
  const auto list = ProcessSpec::explicit_ar({0.3, -0.2});
  const auto r = simulate(list, 20, {5, 0, 2});
  CHECK(conditional_mean_next(list, r) == doctest::Approx(-0.3 * r.x(19) + 0.2 * r.x(18)));
}

TEST_CASE("path CSV layout") {
  SamplePath p;
  p.x = Vector::LinSpaced(3, 0.5, 1.5);
  std::ostringstream os;
  write_path_csv(os, p);
  CHECK(os.str() == "t,x\n1,0.5\n2,1\n3,1.5\n");
}
