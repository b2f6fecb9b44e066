#include "tue/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tue/error.hpp"
#include "tue/specfun.hpp"

namespace tue {

namespace {

// ∫₀¹ x^{α−1} φ(x) dx with φ regular at 0. For α < 1 the substitution
// x = s^{1/α} turns it into (1/α) ∫₀¹ φ(s^{1/α}) ds.
template <class F>
QuadResult integrate_with_power_weight(double alpha, const F& phi, const QuadOptions& opts) {
  if (alpha < 1.0) {
    const double inv = 1.0 / alpha;
    QuadResult r = integrate([&](double s) { return phi(std::pow(s, inv)); }, 0.0, 1.0, opts);
    r.value *= inv;
    r.err_estimate *= inv;
    return r;
  }
  return integrate([&](double x) { return std::pow(x, alpha - 1.0) * phi(x); }, 0.0, 1.0, opts);
}

// ∫₀¹ φ(x) dx where φ has an x^α cusp at 0; for α < 1 integrated in s = x^α.
template <class F>
QuadResult integrate_cusp(double alpha, const F& phi, const QuadOptions& opts) {
  if (alpha < 1.0) {
    const double inv = 1.0 / alpha;
    QuadResult r = integrate(
        [&](double s) { return s == 0.0 ? 0.0 : std::pow(s, inv - 1.0) * phi(std::pow(s, inv)); },
        0.0, 1.0, opts);
    r.value *= inv;
    r.err_estimate *= inv;
    return r;
  }
  return integrate(phi, 0.0, 1.0, opts);
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be positive");
}

void require_pair(double t_l, double t_k) {
  if (!(t_l >= t_k) || t_k < 0.0) {
    throw ValidationError("cumulant pair needs t_l >= t_k >= 0");
  }
}

}  // namespace

double error_exponent(double alpha) {
  require_alpha(alpha);
  const double hat = std::min(alpha, 1.0);
  return (2.0 * hat + alpha) / (2.0 + alpha);
}

QuadResult c1_integral(const ParameterSet& params, const QuadOptions& opts) {
  const LimitingFunctions fns(params);
  return integrate_cusp(params.alpha(), [&](double x) { return std::log(fns.h(x)); }, opts);
}

double compute_c1(const ParameterSet& params, const QuadOptions& opts) {
  return c1_integral(params, opts).value;
}

QuadResult g_integral(const ParameterSet& params, const QuadOptions& opts) {
  const LimitingFunctions fns(params);
  return integrate_with_power_weight(
      params.alpha(), [&](double x) { return fns.g_regular(x); }, opts);
}

double compute_c2(const ParameterSet& params, const QuadOptions& opts) {
  const LimitingFunctions fns(params);
  const double u_sum = std::accumulate(params.u().begin(), params.u().end(), 0.0);
  return g_integral(params, opts).value + 0.5 * (std::log(fns.h(1.0)) - u_sum);
}

AsymptoticConstants asymptotic_constants(const ParameterSet& params, const QuadOptions& opts) {
  const LimitingFunctions fns(params);
  const QuadResult c1 = c1_integral(params, opts);
  const QuadResult g = g_integral(params, opts);
  const double u_sum = std::accumulate(params.u().begin(), params.u().end(), 0.0);
  AsymptoticConstants out;
  out.C1 = c1.value;
  out.C2 = g.value + 0.5 * (std::log(fns.h(1.0)) - u_sum);
  out.error_exponent = error_exponent(params.alpha());
  out.quadrature_err = c1.err_estimate + g.err_estimate;
  return out;
}

double predict_log_mgf(const ParameterSet& params, const QuadOptions& opts) {
  const AsymptoticConstants c = asymptotic_constants(params, opts);
  return c.C1 * params.n() + c.C2;
}

double b1_closed_form(double alpha, double t) {
  require_alpha(alpha);
  if (t < 0.0) throw ValidationError("t must be nonnegative");
  if (t == 0.0) return 1.0;
  return reg_inc_gamma_q(alpha, t) + alpha * reg_inc_gamma_p(alpha + 1.0, t) / t;
}

double b1_integral(double alpha, double t, const QuadOptions& opts) {
  require_alpha(alpha);
  if (t < 0.0) throw ValidationError("t must be nonnegative");
  return integrate_cusp(alpha, [&](double x) { return reg_inc_gamma_q(alpha, t * x); }, opts).value;
}

double c1_coeff(double alpha, double t, const QuadOptions& opts) {
  require_alpha(alpha);
  if (t < 0.0) throw ValidationError("t must be nonnegative");
  if (t == 0.0) return 0.0;
  const double scale = std::exp(alpha * std::log(t) - std::lgamma(alpha));
  const QuadResult r = integrate_with_power_weight(
      alpha, [&](double x) { return std::exp(-t * x) * (1.0 - alpha - t * x) * 0.5; }, opts);
  return scale * r.value + 0.5 * (reg_inc_gamma_q(alpha, t) - 1.0);
}

double b11_coeff(double alpha, double t_l, double t_k, const QuadOptions& opts) {
  require_alpha(alpha);
  require_pair(t_l, t_k);
  if (t_k == 0.0) return 0.0;
  return integrate_cusp(
             alpha,
             [&](double x) {
               return reg_inc_gamma_q(alpha, t_l * x) * reg_inc_gamma_p(alpha, t_k * x);
             },
             opts)
      .value;
}

double c11_coeff(double alpha, double t_l, double t_k, const QuadOptions& opts) {
  require_alpha(alpha);
  require_pair(t_l, t_k);
  if (t_k == 0.0) return 0.0;
  const double lg = std::lgamma(alpha);
  const double scale_l = std::exp(alpha * std::log(t_l) - lg);
  const double scale_k = std::exp(alpha * std::log(t_k) - lg);
  const QuadResult r = integrate_with_power_weight(
      alpha,
      [&](double x) {
        const double a = (alpha - 1.0 + t_k * x) * scale_k * std::exp(-t_k * x) *
                         reg_inc_gamma_q(alpha, t_l * x);
        const double b = (alpha - 1.0 + t_l * x) * scale_l * std::exp(-t_l * x) *
                         reg_inc_gamma_p(alpha, t_k * x);
        return 0.5 * (a - b);
      },
      opts);
  return r.value + 0.5 * reg_inc_gamma_q(alpha, t_l) * reg_inc_gamma_p(alpha, t_k);
}

CumulantReport cumulant_coeffs(double alpha, std::span<const double> t, std::optional<int> n,
                               const QuadOptions& opts) {
  require_alpha(alpha);
  const int m = static_cast<int>(t.size());
  if (m < 1) throw ValidationError("m must be at least 1");
  for (int l = 1; l < m; ++l) {
    if (!(t[l] < t[l - 1])) throw ValidationError("t not strictly decreasing");
  }
  if (t[m - 1] < 0.0) throw ValidationError("t_m must be nonnegative");

  CumulantReport out;
  out.b1.resize(m);
  out.c1.resize(m);
  out.b11.resize(m, m);
  out.c11.resize(m, m);
  for (int l = 0; l < m; ++l) {
    out.b1(l) = b1_closed_form(alpha, t[l]);
    out.c1(l) = c1_coeff(alpha, t[l], opts);
    for (int k = l; k < m; ++k) {
      out.b11(l, k) = out.b11(k, l) = b11_coeff(alpha, t[l], t[k], opts);
      out.c11(l, k) = out.c11(k, l) = c11_coeff(alpha, t[l], t[k], opts);
    }
  }

  if ((out.b11.diagonal().array() > 0.0).all()) {
    Eigen::MatrixXd sigma(m, m);
    for (int l = 0; l < m; ++l) {
      for (int k = 0; k < m; ++k) {
        sigma(l, k) = out.b11(l, k) / std::sqrt(out.b11(l, l) * out.b11(k, k));
      }
      sigma(l, l) = 1.0;
    }
    out.Sigma = std::move(sigma);
  }

  if (n) {
    const double nd = static_cast<double>(*n);
    out.n = n;
    out.predicted_mean = out.b1 * nd + out.c1;
    out.predicted_cov = out.b11 * nd + out.c11;
    out.predicted_var = out.predicted_cov.diagonal();
  }
  return out;
}

}  // namespace tue
