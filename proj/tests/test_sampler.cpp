#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tue/error.hpp"
#include "tue/exact_mgf.hpp"
#include "tue/sampler.hpp"
#include "tue/stats.hpp"

using namespace tue;

TEST_CASE("source names") {
  CHECK(to_string(SampleSource::HaarTruncation) == "haar");
  CHECK(to_string(SampleSource::KostlanModuli) == "kostlan");
  CHECK(parse_sample_source("haar") == SampleSource::HaarTruncation);
  CHECK(parse_sample_source("kostlan") == SampleSource::KostlanModuli);
  CHECK_THROWS_AS(parse_sample_source("ginibre"), ValidationError);
}

TEST_CASE("streams are reproducible and distinct") {
  const SampleCloud a = sample_kostlan_moduli(50, 1.5, 11, 3);
  const SampleCloud b = sample_kostlan_moduli(50, 1.5, 11, 3);
  const SampleCloud c = sample_kostlan_moduli(50, 1.5, 11, 4);
  const SampleCloud d = sample_kostlan_moduli(50, 1.5, 12, 3);
  CHECK(a.moduli == b.moduli);
  CHECK(a.moduli != c.moduli);
  CHECK(a.moduli != d.moduli);
  CHECK(std::is_sorted(a.moduli.begin(), a.moduli.end()));
  CHECK_FALSE(a.points);

  const SampleCloud h1 = sample_haar_truncation(20, 2.0, 11, 0);
  const SampleCloud h2 = sample_haar_truncation(20, 2.0, 11, 0);
  CHECK(h1.moduli == h2.moduli);
  REQUIRE(h1.points);
  CHECK(h1.points->size() == 20u);
}

TEST_CASE("Haar truncation eigenvalues") {
  CHECK_THROWS_AS(sample_haar_truncation(10, 1.5, 1), DomainError);
  CHECK_THROWS_AS(sample_haar_truncation(10, 0.0, 1), ValidationError);

  const SampleCloud c = sample_haar_truncation(200, 3.0, 7);
  REQUIRE(c.points);
  std::vector<double> from_points;
  for (const auto& z : *c.points) from_points.push_back(std::abs(z));
  std::sort(from_points.begin(), from_points.end());
  CHECK(from_points == c.moduli);
  CHECK(c.moduli.back() < 1.0);
  CHECK(c.moduli.front() >= 0.0);

  // n = 1, α = 1: |z|² is uniform on [0,1]
  const int draws = 4000;
  double sum = 0.0;
  for (int s = 0; s < draws; ++s) {
    const double r = sample_haar_truncation(1, 1.0, 99, s).moduli[0];
    sum += r * r;
  }
  const double se = std::sqrt(1.0 / 12.0 / draws);
  CHECK(std::abs(sum / draws - 0.5) < 3.0 * se);
}

TEST_CASE("Kostlan moduli for n = 1 follow Beta(1, α)") {
  const double alpha = 2.0;
  const int draws = 20000;
  int inside = 0;
  for (int s = 0; s < draws; ++s) {
    if (sample_kostlan_moduli(1, alpha, 5, s).moduli[0] < 0.8) ++inside;
  }
  const double p = 1.0 - std::pow(1.0 - 0.64, alpha);
  const double se = std::sqrt(p * (1.0 - p) / draws);
  CHECK(std::abs(static_cast<double>(inside) / draws - p) < 4.0 * se);
}

TEST_CASE("counts") {
  const ParameterSet p = make_params(5, 1.0, {2.5, 0.5, 0.0}, {0.0, 0.0, 0.0});
  // r ≈ 0.707, 0.949, 1
  const std::vector<double> moduli{0.1, 0.7, 0.75, 0.95, 0.99};
  CHECK(count_inside(moduli, p) == std::vector<int>{2, 3, 5});

  const ParameterSet q = make_params(300, 1.0, {8.0, 3.0, 1.0}, {0.0, 0.0, 0.0});
  const Eigen::MatrixXi counts = sample_counts(q, 200, 3, SampleSource::KostlanModuli);
  CHECK(counts.rows() == 200);
  for (int i = 0; i < counts.rows(); ++i) {
    CHECK(counts(i, 0) <= counts(i, 1));
    CHECK(counts(i, 1) <= counts(i, 2));
    CHECK(counts(i, 2) <= 300);
  }
}

TEST_CASE("moment accumulator merge") {
  MomentAccumulator all(2);
  MomentAccumulator left(2);
  MomentAccumulator right(2);
  for (int i = 0; i < 37; ++i) {
    const std::vector<int> c{i * i % 11, (3 * i + 1) % 7};
    all.add(c);
    (i < 15 ? left : right).add(c);
  }
  left.merge(right);
  CHECK(left.count() == 37);
  CHECK((left.mean() - all.mean()).norm() < 1e-12);
  CHECK((left.covariance() - all.covariance()).norm() < 1e-12);
  CHECK(all.covariance()(0, 1) == all.covariance()(1, 0));
}

TEST_CASE("empirical moments match exact mean and variance") {
  const int n = 200;
  const double alpha = 1.0;
  const ParameterSet p = make_params(n, alpha, {3.0, 1.0}, {0.0, 0.0});
  const long long samples = 4000;
  const EmpiricalMoments m = empirical_moments(p, samples, 2024, SampleSource::KostlanModuli);
  for (int l = 0; l < 2; ++l) {
    const double v = 1.0 - p.t()[l] / n;
    double var = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double i = inc_beta_dispatch(v, j, alpha, n).value;
      var += i * (1.0 - i);
    }
    const double mean = mean_count_exact(n, alpha, std::sqrt(v));
    CAPTURE(l);
    CHECK(std::abs(m.mean(l) - mean) < 4.0 * m.std_error(l));
    CHECK(std::abs(m.var(l) - var) < 5.0 * var * std::sqrt(2.0 / (samples - 1)));
  }
}

TEST_CASE("moments do not depend on the thread count") {
  const ParameterSet p = make_params(100, 2.0, {2.0, 0.5}, {0.0, 0.0});
  const EmpiricalMoments a = empirical_moments(p, 700, 8, SampleSource::KostlanModuli, 1);
  const EmpiricalMoments b = empirical_moments(p, 700, 8, SampleSource::KostlanModuli, 3);
  CHECK(a.mean == b.mean);
  CHECK(a.cov == b.cov);
  CHECK_THROWS_AS(empirical_moments(p, 1, 8, SampleSource::KostlanModuli), ValidationError);
}

TEST_CASE("t_m = 0 gives N = n with zero variance") {
  const ParameterSet p = make_params(60, 1.0, {2.0, 0.0}, {0.0, 0.0});
  const EmpiricalMoments m = empirical_moments(p, 300, 1, SampleSource::KostlanModuli);
  CHECK(m.mean(1) == 60.0);
  CHECK(m.var(1) == 0.0);
  CHECK_THROWS_AS(clt_normalized_counts(p, 100, 1), ValidationError);
}

TEST_CASE("Haar and Kostlan routes give the same count law") {
  const ParameterSet p = make_params(30, 2.0, {4.0, 1.0}, {0.0, 0.0});
  const int draws = 1500;
  const Eigen::MatrixXi haar = sample_counts(p, draws, 17, SampleSource::HaarTruncation);
  const Eigen::MatrixXi kostlan = sample_counts(p, draws, 17, SampleSource::KostlanModuli);
  for (int l = 0; l < 2; ++l) {
    std::vector<double> a(draws);
    std::vector<double> b(draws);
    for (int i = 0; i < draws; ++i) {
      a[i] = haar(i, l);
      b[i] = kostlan(i, l);
    }
    CAPTURE(l);
    // Bonferroni over the two components
    CHECK(ks_two_sample(a, b).p_value > 0.001 / 2);
  }
}
