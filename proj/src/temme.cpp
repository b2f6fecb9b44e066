#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "tue/error.hpp"
#include "tue/specfun.hpp"

namespace tue {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Power-series coefficients c_n of ln((1 − e^{−t})/t) = Σ_{n≥1} c_n t^n.
// c_1 = −1/2, c_{2k} = B_{2k} / (2k (2k)!), odd n > 1 vanish.
constexpr int kSeriesTerms = 41;

std::array<double, kSeriesTerms> log_kernel_series() {
  // Bernoulli numbers B_2 … B_40.
  static constexpr std::array<double, 20> bernoulli = {
      1.0 / 6.0,
      -1.0 / 30.0,
      1.0 / 42.0,
      -1.0 / 30.0,
      5.0 / 66.0,
      -691.0 / 2730.0,
      7.0 / 6.0,
      -3617.0 / 510.0,
      43867.0 / 798.0,
      -174611.0 / 330.0,
      854513.0 / 138.0,
      -236364091.0 / 2730.0,
      8553103.0 / 6.0,
      -23749461029.0 / 870.0,
      8615841276005.0 / 14322.0,
      -7709321041217.0 / 510.0,
      2577687858367.0 / 6.0,
      -26315271553053477373.0 / 1919190.0,
      2929993913841559.0 / 6.0,
      -261082718496449122051.0 / 13530.0};
  std::array<double, kSeriesTerms> c{};
  c[1] = -0.5;
  double factorial = 1.0;  // (2k)!
  for (int k = 1; k <= 20; ++k) {
    factorial *= (2.0 * k - 1.0) * (2.0 * k);
    c[2 * k] = bernoulli[k - 1] / (2.0 * k * factorial);
  }
  return c;
}

// Taylor coefficients of h(t) = ln((1 − e^{−t})/t) about t0.
std::vector<double> log_kernel_taylor(double t0, int count) {
  std::vector<double> h(count, 0.0);
  if (t0 < 1.0) {
    static const std::array<double, kSeriesTerms> c = log_kernel_series();
    // re-expand Σ c_n (t0 + s)^n in powers of s
    for (int k = 0; k < count; ++k) {
      double acc = 0.0;
      for (int n = kSeriesTerms - 1; n >= std::max(k, 1); --n) {
        double binom = 1.0;
        for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
        acc += c[n] * binom * std::pow(t0, n - k);
      }
      h[k] = acc;
    }
    return h;
  }

  // ln(1 − e^{−t0} e^{−s}) via the series logarithm, minus ln(t0 + s).
  const double e = std::exp(-t0);
  std::vector<double> q(count, 0.0);
  q[0] = -std::expm1(-t0);
  double fact = 1.0;
  for (int k = 1; k < count; ++k) {
    fact *= k;
    q[k] = ((k % 2 == 0) ? -e : e) / fact;
  }
  std::vector<double> log_q(count, 0.0);
  log_q[0] = std::log(q[0]);
  for (int k = 1; k < count; ++k) {
    double acc = k * q[k];
    for (int i = 1; i < k; ++i) acc -= i * log_q[i] * q[k - i];
    log_q[k] = acc / (k * q[0]);
  }
  h[0] = log_q[0] - std::log(t0);
  double inv_pow = 1.0;
  for (int k = 1; k < count; ++k) {
    inv_pow /= t0;
    const double log_t_coeff = ((k % 2 == 1) ? 1.0 : -1.0) * inv_pow / k;
    h[k] = log_q[k] - log_t_coeff;
  }
  return h;
}

void validate_temme(double v, int j, double alpha, int order, const char* fn) {
  if (!(v > 0.0 && v <= 1.0)) {
    throw DomainError(std::string(fn) + ": v must lie in (0,1], got " + std::to_string(v));
  }
  if (j < 1) throw DomainError(std::string(fn) + ": j must be a positive integer");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError(std::string(fn) + ": alpha must be positive");
  }
  if (order < 1 || order > kTemmeMaxOrder) {
    throw DomainError(std::string(fn) + ": order must be in [1, " +
                      std::to_string(kTemmeMaxOrder) + "]");
  }
}

// F_k scaled by j^α, so that F̃_0 = Q(α, jλ) stays O(1).
std::vector<double> scaled_f(double v, int j, double alpha, int order) {
  const double lambda = -std::log(v);
  const double jd = static_cast<double>(j);
  const double eta = jd * lambda;
  std::vector<double> f(order, 0.0);
  f[0] = reg_inc_gamma_q(alpha, eta);
  if (order > 1) {
    const double boundary =
        eta > 0.0 ? std::exp(alpha * std::log(eta) - eta - std::lgamma(alpha)) : 0.0;
    f[1] = ((alpha - eta) * f[0] + boundary) / jd;
  }
  for (int k = 2; k < order; ++k) {
    f[k] = ((k - 1 + alpha - eta) / jd) * f[k - 1] + ((k - 1) * lambda / jd) * f[k - 2];
  }
  return f;
}

}  // namespace

std::vector<double> temme_generating_taylor(double t0, double alpha, int count) {
  if (!(t0 >= 0.0) || !std::isfinite(t0)) {
    throw DomainError("temme_generating_taylor: t0 must be nonnegative");
  }
  if (count < 1) return {};
  const std::vector<double> h = log_kernel_taylor(t0, count);
  // exp((α − 1) h) by the series exponential recurrence
  std::vector<double> d(count, 0.0);
  d[0] = std::exp((alpha - 1.0) * h[0]);
  for (int k = 1; k < count; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= k; ++i) acc += i * (alpha - 1.0) * h[i] * d[k - i];
    d[k] = acc / k;
  }
  return d;
}

TemmeCoeffs temme_coeffs(double v, int j, double alpha, int order) {
  validate_temme(v, j, alpha, order, "temme_coeffs");
  TemmeCoeffs out;
  out.N = order;
  out.v = v;
  out.j = j;
  out.alpha = alpha;
  out.d = temme_generating_taylor(-std::log(v), alpha, order);
  out.F = scaled_f(v, j, alpha, order);
  const double unscale = std::exp(-alpha * std::log(static_cast<double>(j)));
  for (double& f : out.F) f *= unscale;
  return out;
}

IncBetaEval inc_beta_temme(double v, int j, double alpha, int order) {
  validate_temme(v, j, alpha, order, "inc_beta_temme");
  if (j < temme_min_j(order)) {
    throw ThresholdError("inc_beta_temme: j = " + std::to_string(j) + " below " +
                         std::to_string(temme_min_j(order)) + " for order " +
                         std::to_string(order));
  }
  if (v < kTemmeMinV) {
    throw ThresholdError("inc_beta_temme: v below " + std::to_string(kTemmeMinV));
  }
  if (v == 1.0) return {1.0, IncBetaStrategy::TemmeExpansion, 0.0};

  const double jd = static_cast<double>(j);
  // two extra terms, used only for the error estimate: a single omitted
  // coefficient can vanish by accident
  const std::vector<double> d = temme_generating_taylor(-std::log(v), alpha, order + 2);
  const std::vector<double> f = scaled_f(v, j, alpha, order + 2);
  const double prefactor = std::exp(log_gamma_ratio_scaled(jd, alpha));

  double sum = 0.0;
  double abs_sum = 0.0;
  for (int k = order - 1; k >= 0; --k) {
    sum += d[k] * f[k];
    abs_sum += std::abs(d[k] * f[k]);
  }
  const double value = prefactor * sum;
  const double omitted =
      prefactor * (std::abs(d[order] * f[order]) + std::abs(d[order + 1] * f[order + 1]));
  const double err = 10.0 * omitted + 16.0 * kEps * prefactor * abs_sum + 2.0 * kEps;
  return {std::clamp(value, 0.0, 1.0), IncBetaStrategy::TemmeExpansion, err};
}

}  // namespace tue
