#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "oracles.hpp"
#include "tue/asymptotics.hpp"
#include "tue/error.hpp"
#include "tue/exact_mgf.hpp"

using namespace tue;

namespace {

QuadOptions tight() {
  QuadOptions q;
  q.abs_tol = 1e-13;
  return q;
}

// Second derivative along direction e of f(u0 + s e), fourth order.
double directional_second(const std::function<double(std::vector<double>)>& f,
                          const std::vector<double>& e, double h) {
  return oracle::central_second(
      [&](double s) {
        std::vector<double> u(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) u[i] = s * e[i];
        return f(u);
      },
      h);
}

// ∂²f/∂u_a∂u_b at 0 by polarization of directional second derivatives.
double hessian_entry(const std::function<double(std::vector<double>)>& f, std::size_t m,
                     std::size_t a, std::size_t b, double h) {
  std::vector<double> ea(m, 0.0);
  std::vector<double> eb(m, 0.0);
  ea[a] = 1.0;
  eb[b] = 1.0;
  if (a == b) return directional_second(f, ea, h);
  std::vector<double> both(m, 0.0);
  both[a] = 1.0;
  both[b] = 1.0;
  return 0.5 * (directional_second(f, both, h) - directional_second(f, ea, h) -
                directional_second(f, eb, h));
}

}  // namespace

TEST_CASE("error exponent") {
  CHECK(error_exponent(1.0) == doctest::Approx(1.0));
  CHECK(error_exponent(2.0) == doctest::Approx(1.0));
  CHECK(error_exponent(0.5) == doctest::Approx(0.6));
  CHECK(error_exponent(0.25) == doctest::Approx(0.75 / 2.25));
  CHECK(error_exponent(4.0) == doctest::Approx(1.0));
}

TEST_CASE("C1 and C2 vanish at u = 0") {
  const ParameterSet p = make_params(100, 0.7, {3.0, 1.0}, {0.0, 0.0});
  CHECK(compute_c1(p) == 0.0);
  CHECK(compute_c2(p) == 0.0);
}

TEST_CASE("t_m = 0 adds u_m to C1 and nothing to C2") {
  for (double alpha : {0.6, 2.0}) {
    const ParameterSet with = make_params(100, alpha, {2.0, 0.0}, {0.4, -0.7});
    const ParameterSet without = make_params(100, alpha, {2.0}, {0.4});
    CHECK(compute_c1(with, tight()) == doctest::Approx(compute_c1(without, tight()) - 0.7).epsilon(1e-12));
    CHECK(compute_c2(with, tight()) == doctest::Approx(compute_c2(without, tight())).epsilon(1e-10));
  }
}

TEST_CASE("b1 closed form against quadrature") {
  for (double alpha : {0.1, 0.34, 1.0, 2.24, 5.24, 30.0}) {
    for (double t : {1e-6, 0.01, 0.5, 1.0, 3.0, 20.0, 200.0}) {
      CAPTURE(alpha);
      CAPTURE(t);
      CHECK(b1_closed_form(alpha, t) == doctest::Approx(b1_integral(alpha, t, tight())).epsilon(1e-11));
    }
  }
  CHECK(b1_closed_form(1.5, 0.0) == 1.0);
  CHECK(b1_closed_form(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("c1 against its closed form") {
  // c1 = −(α/2)(P(α,t) + P(α+1,t))
  for (double alpha : {0.2, 0.5, 1.0, 2.5, 9.0}) {
    for (double t : {0.05, 1.0, 4.0, 25.0}) {
      const double want = -0.5 * alpha *
                          (boost::math::gamma_p(alpha, t) + boost::math::gamma_p(alpha + 1.0, t));
      CAPTURE(alpha);
      CAPTURE(t);
      CHECK(c1_coeff(alpha, t, tight()) == doctest::Approx(want).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("first derivatives of C1 and C2 at u = 0") {
  for (double alpha : {0.4, 1.0, 3.0}) {
    const std::vector<double> t{3.0, 0.8};
    for (std::size_t l = 0; l < t.size(); ++l) {
      auto c = [&](bool second, double s) {
        std::vector<double> u(t.size(), 0.0);
        u[l] = s;
        const ParameterSet p = make_params(100, alpha, t, u);
        return second ? compute_c2(p, tight()) : compute_c1(p, tight());
      };
      CAPTURE(alpha);
      CAPTURE(l);
      CHECK(oracle::central_first([&](double s) { return c(false, s); }, 0.01) ==
            doctest::Approx(b1_closed_form(alpha, t[l])).epsilon(1e-7));
      CHECK(oracle::central_first([&](double s) { return c(true, s); }, 0.01) ==
            doctest::Approx(c1_coeff(alpha, t[l], tight())).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("second-order coefficients are Hessians of C1 and C2") {
  for (double alpha : {0.4, 1.0, 3.0}) {
    const std::vector<double> t{3.0, 0.8};
    auto c1 = [&](std::vector<double> u) { return compute_c1(make_params(100, alpha, t, u), tight()); };
    auto c2 = [&](std::vector<double> u) { return compute_c2(make_params(100, alpha, t, u), tight()); };
    for (std::size_t l = 0; l < 2; ++l) {
      for (std::size_t k = l; k < 2; ++k) {
        CAPTURE(alpha);
        CAPTURE(l);
        CAPTURE(k);
        CHECK(hessian_entry(c1, 2, l, k, 0.02) ==
              doctest::Approx(b11_coeff(alpha, t[l], t[k], tight())).epsilon(1e-6).scale(1.0));
        CHECK(hessian_entry(c2, 2, l, k, 0.02) ==
              doctest::Approx(c11_coeff(alpha, t[l], t[k], tight())).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("pair coefficients need t_l >= t_k") {
  CHECK_THROWS_AS(b11_coeff(1.0, 0.5, 2.0), ValidationError);
  CHECK_THROWS_AS(c11_coeff(1.0, 0.5, 2.0), ValidationError);
  CHECK(b11_coeff(1.0, 1.0, 0.0) == 0.0);
}

TEST_CASE("cumulant report") {
  const std::vector<double> t{4.0, 1.0};
  const CumulantReport r = cumulant_coeffs(1.5, t, 500);
  CHECK(r.b11(0, 1) == r.b11(1, 0));
  CHECK(r.c11(0, 1) == r.c11(1, 0));
  REQUIRE(r.Sigma);
  CHECK((*r.Sigma)(0, 0) == 1.0);
  CHECK((*r.Sigma)(0, 1) == doctest::Approx(r.b11(0, 1) / std::sqrt(r.b11(0, 0) * r.b11(1, 1))));
  CHECK((*r.Sigma)(0, 1) > 0.0);
  CHECK((*r.Sigma)(0, 1) < 1.0);
  REQUIRE(r.n);
  CHECK(r.predicted_mean(0) == doctest::Approx(r.b1(0) * 500 + r.c1(0)));
  CHECK(r.predicted_var(1) == doctest::Approx(r.b11(1, 1) * 500 + r.c11(1, 1)));

  const std::vector<double> degenerate{2.0, 0.0};
  const CumulantReport d = cumulant_coeffs(1.5, degenerate);
  CHECK_FALSE(d.Sigma);
  CHECK_FALSE(d.n);
  CHECK(d.b1(1) == 1.0);
  CHECK(d.b11(1, 1) == 0.0);
}

TEST_CASE("predicted moments track the exact mean and variance") {
  // Var N(r) = Σ_j I(1 − I) for a determinantal process with radial kernel
  for (double alpha : {0.5, 2.0}) {
    const double t = 1.5;
    double prev = INFINITY;
    for (int n : {250, 1000, 4000}) {
      const double v = 1.0 - t / n;
      double var = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double i = inc_beta_dispatch(v, j, alpha, n).value;
        var += i * (1.0 - i);
      }
      const double mean = mean_count_exact(n, alpha, std::sqrt(v));
      const std::vector<double> tv{t};
      const CumulantReport r = cumulant_coeffs(alpha, tv, n, tight());
      const double err = std::abs(mean - r.predicted_mean(0)) + std::abs(var - r.predicted_var(0));
      CAPTURE(alpha);
      CAPTURE(n);
      CHECK(err < 0.05);
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("C1 n + C2 tracks the exact log-MGF") {
  const ParameterSet p = make_params(100, 1.0, {2.0, 0.5}, {0.6, -0.4});
  const AsymptoticConstants c = asymptotic_constants(p, tight());
  double prev = INFINITY;
  for (int n : {200, 800, 3200}) {
    const double err = std::abs(log_mgf_exact(p.with_n(n)).log_mgf - (c.C1 * n + c.C2));
    CHECK(err < prev / 3.0);
    prev = err;
  }
  CHECK(predict_log_mgf(p, tight()) == doctest::Approx(c.C1 * 100 + c.C2));
}
