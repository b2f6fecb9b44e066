#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tue/stats.hpp"

using namespace tue;

TEST_CASE("Kolmogorov tail") {
  CHECK(kolmogorov_tail(0.0) == 1.0);
  CHECK(kolmogorov_tail(1.3580986) == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(kolmogorov_tail(1.6276236) == doctest::Approx(0.01).epsilon(1e-4));
  CHECK(kolmogorov_tail(5.0) < 1e-20);
}

TEST_CASE("two-sample KS") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  CHECK(ks_two_sample(a, a).D == 0.0);
  CHECK(ks_two_sample(a, a).p_value == 1.0);
  const std::vector<double> b{6, 7, 8};
  CHECK(ks_two_sample(a, b).D == 1.0);
  // ties across samples: both step at once
  const std::vector<double> c{1, 1, 2, 2};
  const std::vector<double> d{1, 2, 2, 2};
  CHECK(ks_two_sample(c, d).D == doctest::Approx(0.25));

  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  std::vector<double> x(4000);
  std::vector<double> y(4000);
  for (double& v : x) v = gauss(rng);
  for (double& v : y) v = gauss(rng);
  CHECK(ks_two_sample(x, y).p_value > 0.001);
  for (double& v : y) v += 0.3;
  CHECK(ks_two_sample(x, y).p_value < 1e-6);
}

TEST_CASE("KS against the standard normal") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss;
  std::vector<double> x(20000);
  for (double& v : x) v = gauss(rng);
  const KsResult r = ks_normal(x);
  CHECK(r.D < 0.015);
  CHECK(r.p_value > 0.001);
  // a point mass at 0 sits at distance 1/2 from Φ
  const std::vector<double> zeros(100, 0.0);
  CHECK(ks_normal(zeros).D == doctest::Approx(0.5));
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
}

TEST_CASE("correlation and log-log slope") {
  Eigen::MatrixXd s(5, 2);
  s << 1, 2, 2, 4, 3, 6, 4, 8, 5, 10.5;
  const Eigen::MatrixXd c = correlation(s);
  CHECK(c(0, 0) == 1.0);
  CHECK(c(0, 1) == c(1, 0));
  CHECK(c(0, 1) > 0.99);
  const std::vector<double> n{100, 200, 400, 800};
  std::vector<double> e;
  for (double v : n) e.push_back(3.0 * std::pow(v, -0.75));
  CHECK(fit_loglog_slope(n, e) == doctest::Approx(-0.75).epsilon(1e-12));
}
