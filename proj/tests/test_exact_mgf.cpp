#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/special_functions/beta.hpp>

#include "oracles.hpp"
#include "tue/error.hpp"
#include "tue/exact_mgf.hpp"

using namespace tue;

namespace {

// Σ_j ln(1 + Σ_ℓ ω_ℓ I) straight from Boost's ibeta, no telescoping.
double log_mgf_reference(const ParameterSet& p) {
  const OmegaWeights w = omega_weights(p.u());
  double sum = 0.0;
  for (int j = 1; j <= p.n(); ++j) {
    double arg = 1.0;
    for (int l = 0; l < p.m(); ++l) {
      const double v = 1.0 - p.t()[l] / p.n();
      arg += w.omega[l] * boost::math::ibeta(static_cast<double>(j), p.alpha(), v);
    }
    sum += std::log(arg);
  }
  return sum;
}

}  // namespace

TEST_CASE("u = 0 gives exactly zero") {
  const ParameterSet p = make_params(300, 1.3, {5.0, 2.0, 0.0}, {0.0, 0.0, 0.0});
  CHECK(log_mgf_exact(p).log_mgf == 0.0);
}

TEST_CASE("agrees with the untelescoped sum over Boost ibeta") {
  const struct {
    int n;
    double alpha;
    std::vector<double> t;
    std::vector<double> u;
  } cases[] = {
      {50, 1.0, {1.0}, {0.5}},
      {200, 0.5, {3.0, 1.0}, {0.4, -0.3}},
      {400, 2.5, {10.0, 4.0, 0.5}, {-0.2, 0.7, 0.1}},
      {1000, 7.0, {2.0}, {-1.5}},
      {3000, 0.3, {25.0, 1.0}, {0.3, 0.3}},
  };
  for (const auto& c : cases) {
    const ParameterSet p = make_params(c.n, c.alpha, c.t, c.u);
    const double want = log_mgf_reference(p);
    CAPTURE(c.n);
    CAPTURE(c.alpha);
    CHECK(log_mgf_exact(p).log_mgf == doctest::Approx(want).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("Auto dispatch matches the continued fraction everywhere") {
  for (double alpha : {0.4, 1.0, 3.0}) {
    const ParameterSet p = make_params(6000, alpha, {4.0, 1.0}, {0.6, -0.9});
    ExactMgfOptions force;
    force.policy = StrategyPolicy::ForceContinuedFraction;
    const ExactMgfResult a = log_mgf_exact(p);
    const ExactMgfResult b = log_mgf_exact(p, force);
    CAPTURE(alpha);
    CHECK(a.strategy_counts.at(IncBetaStrategy::ExactSum) > 0);
    CHECK(a.strategy_counts.at(IncBetaStrategy::TemmeExpansion) > 0);
    CHECK(b.strategy_counts.size() == 1);
    CHECK(b.strategy_counts.at(IncBetaStrategy::ContinuedFraction) == 2 * 6000);
    CHECK(std::abs(a.log_mgf - b.log_mgf) < 1e-10);
  }
}

TEST_CASE("thread count does not change the result") {
  const ParameterSet p = make_params(5000, 1.5, {3.0, 0.7}, {0.5, 0.25});
  ExactMgfOptions one;
  ExactMgfOptions many;
  many.threads = 4;
  CHECK(log_mgf_exact(p, one).log_mgf == log_mgf_exact(p, many).log_mgf);
}

TEST_CASE("per-term output sums to the total") {
  const ParameterSet p = make_params(120, 2.0, {3.0, 0.0}, {0.4, 0.1});
  ExactMgfOptions opts;
  opts.keep_per_term = true;
  const ExactMgfResult r = log_mgf_exact(p, opts);
  REQUIRE(r.per_term);
  CHECK(r.per_term->size() == 120u);
  double sum = 0.0;
  for (double x : *r.per_term) sum += x;
  CHECK(sum == doctest::Approx(r.log_mgf).epsilon(1e-13));
}

TEST_CASE("t_m = 0 contributes exactly n u_m") {
  for (double u : {-2.0, 0.37, 5.0}) {
    const ParameterSet only = make_params(777, 1.2, {0.0}, {u});
    CHECK(log_mgf_exact(only).log_mgf == 777 * u);
  }
  const ParameterSet with = make_params(500, 1.2, {2.0, 0.0}, {0.3, 0.8});
  const ParameterSet without = make_params(500, 1.2, {2.0}, {0.3});
  CHECK(log_mgf_exact(with).log_mgf ==
        doctest::Approx(log_mgf_exact(without).log_mgf + 500 * 0.8).epsilon(1e-15));
}

TEST_CASE("n = 1 closed form") {
  // |z|² ~ Beta(1, α): P(|z|² < v) = 1 − (1 − v)^α
  for (double alpha : {0.5, 1.0, 4.0}) {
    for (double u : {-1.0, 0.6}) {
      const double t = 0.3;
      const double p_in = 1.0 - std::pow(t, alpha);
      const double want = std::log(1.0 + std::expm1(u) * p_in);
      CHECK(log_mgf_exact(make_params(1, alpha, {t}, {u})).log_mgf ==
            doctest::Approx(want).epsilon(1e-14));
    }
  }
}

TEST_CASE("convex and increasing in u") {
  const double h = 0.05;
  for (double u0 : {-1.0, 0.0, 0.8}) {
    auto f = [&](double du) {
      return log_mgf_exact(make_params(400, 0.8, {6.0, 1.5}, {u0 + du, 0.3})).log_mgf;
    };
    CHECK(f(h) > f(0.0));
    CHECK(f(h) - 2 * f(0.0) + f(-h) > 0.0);
  }
}

TEST_CASE("mean count") {
  // derivative of the log-MGF at u = 0
  for (double alpha : {0.5, 2.0}) {
    const int n = 300;
    const double t = 2.0;
    auto f = [&](double u) { return log_mgf_exact(make_params(n, alpha, {t}, {u})).log_mgf; };
    const double fd = oracle::central_first(f, 1e-3);
    const double mean = mean_count_exact(n, alpha, std::sqrt(1.0 - t / n));
    CHECK(mean == doctest::Approx(fd).epsilon(1e-9));
    double direct = 0.0;
    for (int j = 1; j <= n; ++j) direct += boost::math::ibeta(double(j), alpha, 1.0 - t / n);
    CHECK(mean == doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK(mean_count_exact(90, 1.0, 1.0) == 90.0);
  CHECK_THROWS_AS(mean_count_exact(90, 1.0, 0.0), DomainError);
}

TEST_CASE("log partition function") {
  for (int n : {1, 7, 100}) {
    for (double alpha : {0.5, 3.0}) {
      oracle::mp50 want = n * log(boost::math::constants::pi<oracle::mp50>());
      for (int j = 1; j <= n; ++j) {
        want += boost::math::lgamma(oracle::mp50(j)) + boost::math::lgamma(oracle::mp50(alpha)) -
                boost::math::lgamma(oracle::mp50(j + alpha));
      }
      CHECK(log_partition_exact(n, alpha) ==
            doctest::Approx(static_cast<double>(want)).epsilon(1e-13));
    }
  }
  // the large-n expansion tracks the exact value with an O(1/n) error
  for (double alpha : {0.5, 1.0, 2.5}) {
    const double e1 = std::abs(log_partition_exact(1000, alpha) - log_partition_asymptotic(1000, alpha));
    const double e2 = std::abs(log_partition_exact(4000, alpha) - log_partition_asymptotic(4000, alpha));
    CAPTURE(alpha);
    CHECK(e1 < 1e-2);
    CHECK(e2 < e1 / 3.0);
  }
}
