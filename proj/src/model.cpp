#include "tue/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tue/error.hpp"
#include "tue/specfun.hpp"

namespace tue {

ParameterSet make_params(int n, double alpha, int m, std::vector<double> t, std::vector<double> u) {
  if (n < 1) throw ValidationError("n must be a positive integer");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be positive");
  if (m < 1) throw ValidationError("m must be at least 1");
  if (static_cast<int>(t.size()) != m || static_cast<int>(u.size()) != m) {
    throw ValidationError("length mismatch: m = " + std::to_string(m) + ", |t| = " +
                          std::to_string(t.size()) + ", |u| = " + std::to_string(u.size()));
  }
  for (int l = 0; l < m; ++l) {
    if (!std::isfinite(t[l])) throw ValidationError("t must be finite");
    if (!std::isfinite(u[l])) throw ValidationError("u must be finite");
  }
  for (int l = 1; l < m; ++l) {
    if (!(t[l] < t[l - 1])) throw ValidationError("t not strictly decreasing");
  }
  if (t[m - 1] < 0.0) throw ValidationError("t_m must be nonnegative");
  if (!(t[0] < n)) throw ValidationError("t_1 must be smaller than n");

  ParameterSet p;
  p.n_ = n;
  p.alpha_ = alpha;
  p.t_ = std::move(t);
  p.u_ = std::move(u);
  return p;
}

ParameterSet make_params(int n, double alpha, std::vector<double> t, std::vector<double> u) {
  const int m = static_cast<int>(t.size());
  return make_params(n, alpha, m, std::move(t), std::move(u));
}

ParameterSet ParameterSet::with_n(int n) const { return make_params(n, alpha_, m(), t_, u_); }

ParameterSet ParameterSet::with_u(std::vector<double> u) const {
  return make_params(n_, alpha_, m(), t_, std::move(u));
}

RadiiSchedule radii(const ParameterSet& params) {
  RadiiSchedule out;
  for (double tl : params.t()) {
    const double v = 1.0 - tl / params.n();
    out.r_squared.push_back(v);
    out.r.push_back(std::sqrt(v));
  }
  return out;
}

std::vector<double> partial_exponentials(std::span<const double> u) {
  const std::size_t m = u.size();
  std::vector<double> e(m + 1, 1.0);
  double suffix = 0.0;
  for (std::size_t l = m; l-- > 0;) {
    suffix += u[l];
    e[l] = std::exp(suffix);
  }
  return e;
}

OmegaWeights omega_weights(std::span<const double> u) {
  const std::size_t m = u.size();
  OmegaWeights out;
  out.omega.assign(m + 1, 1.0);
  // ω_ℓ = e^{u_{ℓ+1}+…+u_m} (e^{u_ℓ} − 1)
  double suffix = 0.0;
  for (std::size_t l = m; l-- > 0;) {
    out.omega[l] = std::exp(suffix) * std::expm1(u[l]);
    suffix += u[l];
  }
  out.Omega = std::exp(suffix);
  return out;
}

double telescoped_combination(std::span<const double> partial_exp, std::span<const double> x) {
  const std::size_t m = x.size();
  if (std::all_of(partial_exp.begin(), partial_exp.end(), [](double e) { return e == 1.0; })) {
    return 1.0;
  }
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    sum += partial_exp[l] * (x[l] - prev);
    prev = x[l];
  }
  sum += partial_exp[m] * (1.0 - prev);
  return sum;
}

LimitingFunctions::LimitingFunctions(const ParameterSet& params)
    : alpha_(params.alpha()),
      log_gamma_alpha_(std::lgamma(params.alpha())),
      t_(params.t()),
      omega_(omega_weights(params.u()).omega),
      partial_exp_(partial_exponentials(params.u())) {}

double LimitingFunctions::h(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("h_alpha: x must lie in [0,1]");
  std::vector<double> q(t_.size());
  for (std::size_t l = 0; l < t_.size(); ++l) q[l] = reg_inc_gamma_q(alpha_, t_[l] * x);
  // t decreasing makes Q(α, t_ℓ x) nondecreasing in ℓ
  return telescoped_combination(partial_exp_, q);
}

double LimitingFunctions::g_regular(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("g_alpha: x must lie in [0,1]");
  double sum = 0.0;
  for (std::size_t l = 0; l < t_.size(); ++l) {
    const double tl = t_[l];
    if (omega_[l] == 0.0 || tl == 0.0) continue;
    const double tx = tl * x;
    sum += omega_[l] * std::exp(alpha_ * std::log(tl) - tx - log_gamma_alpha_) *
           (1.0 - alpha_ - tx) * 0.5;
  }
  if (sum == 0.0) return 0.0;
  return sum / h(x);
}

double LimitingFunctions::g(double x) const {
  if (x == 0.0 && alpha_ < 1.0) {
    throw DomainError("g_alpha: undefined at x = 0 for alpha < 1");
  }
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("g_alpha: x must lie in (0,1]");
  const double reg = g_regular(x);
  if (reg == 0.0) return 0.0;
  return std::pow(x, alpha_ - 1.0) * reg;
}

double h_alpha(double x, const ParameterSet& params) { return LimitingFunctions(params).h(x); }

double g_alpha(double x, const ParameterSet& params) { return LimitingFunctions(params).g(x); }

PositivityCheck check_h_positive(const ParameterSet& params, int grid_size) {
  const LimitingFunctions fns(params);
  PositivityCheck out;
  out.min_value = fns.h(1.0);
  for (int i = 1; i <= grid_size; ++i) {
    out.min_value = std::min(out.min_value, fns.h(static_cast<double>(i) / grid_size));
  }
  out.positive = out.min_value > 0.0;
  return out;
}

}  // namespace tue
