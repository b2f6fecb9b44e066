#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tue/model.hpp"
#include "tue/specfun.hpp"

namespace tue {

enum class StrategyPolicy {
  Auto,                    ///< ExactSum, Temme or continued fraction per j
  ForceContinuedFraction,  ///< continued fraction for every j
};

struct ExactMgfOptions {
  StrategyPolicy policy = StrategyPolicy::Auto;
  bool keep_per_term = false;
  int threads = 1;
};

struct ExactMgfResult {
  double log_mgf = 0.0;
  std::optional<std::vector<double>> per_term;  ///< j-th summand, j = 1 … n
  std::map<IncBetaStrategy, int> strategy_counts;
};

/// Error bound below which the Auto policy accepts a non-arbiter strategy.
inline constexpr double kDispatchTolerance = 1e-13;
/// Temme order used by the Auto policy.
inline constexpr int kDispatchTemmeOrder = 8;

/// I(v, j, α) by the strategy the Auto policy picks for matrix size n:
/// ExactSum for j ≤ 40, Temme for j ≥ max(j_min, n/50), continued fraction
/// otherwise and whenever the preferred strategy's error bound is too large.
IncBetaEval inc_beta_dispatch(double v, int j, double alpha, int n,
                              StrategyPolicy policy = StrategyPolicy::Auto);

/// ln E[∏ e^{u_ℓ N(r_ℓ)}] = Σ_j ln(1 + Σ_ℓ ω_ℓ I(r_ℓ², j, α)).
ExactMgfResult log_mgf_exact(const ParameterSet& params, const ExactMgfOptions& opts = {});

/// E[N(r)] = Σ_j I(r², j, α).
double mean_count_exact(int n, double alpha, double r);

/// ln Z_n = n ln π + Σ_j ln B(j, α).
double log_partition_exact(int n, double alpha);

/// −αn ln n + (α + ln(πΓ(α)))n − (α²/2) ln n + ln G(1+α) − (α/2) ln 2π.
double log_partition_asymptotic(int n, double alpha);

}  // namespace tue
