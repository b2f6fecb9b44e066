#pragma once

#include <span>
#include <vector>

namespace tue {

/// One experiment: matrix size n, truncation α, hard-edge scales t (strictly
/// decreasing, t_m ≥ 0, t_1 < n) and real MGF arguments u. Immutable once
/// built; construct through make_params.
class ParameterSet {
 public:
  int n() const { return n_; }
  double alpha() const { return alpha_; }
  int m() const { return static_cast<int>(t_.size()); }
  const std::vector<double>& t() const { return t_; }
  const std::vector<double>& u() const { return u_; }

  /// Same ensemble with a different matrix size; revalidates t_1 < n.
  ParameterSet with_n(int n) const;
  /// Same radii with different MGF arguments.
  ParameterSet with_u(std::vector<double> u) const;

  friend ParameterSet make_params(int n, double alpha, int m, std::vector<double> t,
                                  std::vector<double> u);

  bool operator==(const ParameterSet&) const = default;

 private:
  ParameterSet() = default;
  int n_ = 1;
  double alpha_ = 1.0;
  std::vector<double> t_;
  std::vector<double> u_;
};

/// Validates and builds a ParameterSet. Throws ValidationError naming the
/// violated invariant.
ParameterSet make_params(int n, double alpha, int m, std::vector<double> t, std::vector<double> u);

/// Convenience overload with m = t.size().
ParameterSet make_params(int n, double alpha, std::vector<double> t, std::vector<double> u);

struct RadiiSchedule {
  std::vector<double> r;        ///< r_ℓ = (1 − t_ℓ/n)^{1/2}
  std::vector<double> r_squared;  ///< 1 − t_ℓ/n, computed directly
};

RadiiSchedule radii(const ParameterSet& params);

struct OmegaWeights {
  std::vector<double> omega;  ///< ω_1 … ω_{m+1}, ω_{m+1} = 1
  double Omega = 1.0;         ///< e^{u_1 + … + u_m}
};

OmegaWeights omega_weights(std::span<const double> u);

/// Partial exponentials E_ℓ = e^{u_ℓ + … + u_m}, ℓ = 1 … m, followed by E_{m+1} = 1.
std::vector<double> partial_exponentials(std::span<const double> u);

/// 1 + Σ ω_ℓ X_ℓ written as the convex combination Σ E_ℓ (X_ℓ − X_{ℓ−1}) with
/// X_0 = 0, X_{m+1} = 1. X must be nondecreasing in ℓ with values in [0,1];
/// the result then lies between min E and max E. Exactly 1 when every E is 1.
double telescoped_combination(std::span<const double> partial_exp, std::span<const double> x);

/// Evaluator for the limiting functions 𝓗_α and 𝓖_α of one ParameterSet, with
/// the ω weights and ln Γ(α) cached.
class LimitingFunctions {
 public:
  explicit LimitingFunctions(const ParameterSet& params);

  double alpha() const { return alpha_; }

  /// 𝓗_α(x; t, u) for x ∈ [0,1]; strictly positive for real u.
  double h(double x) const;

  /// 𝓖_α(x; t, u) for x ∈ (0,1]; x = 0 allowed only when α ≥ 1.
  double g(double x) const;

  /// x^{1−α} 𝓖_α(x): the part of 𝓖_α left after removing the x^{α−1}
  /// factor. Finite on [0,1] for every α > 0.
  double g_regular(double x) const;

 private:
  double alpha_;
  double log_gamma_alpha_;
  std::vector<double> t_;
  std::vector<double> omega_;
  std::vector<double> partial_exp_;
};

double h_alpha(double x, const ParameterSet& params);
double g_alpha(double x, const ParameterSet& params);

struct PositivityCheck {
  bool positive = true;
  double min_value = 0.0;
};

/// Minimum of 𝓗_α over the grid x_i = i / grid_size, i = 1 … grid_size.
PositivityCheck check_h_positive(const ParameterSet& params, int grid_size);

}  // namespace tue
