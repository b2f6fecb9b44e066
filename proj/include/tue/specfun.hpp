#pragma once

#include <string_view>
#include <vector>

namespace tue {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
/// ζ'(−1) = 1/12 − ln A (Glaisher–Kinkelin constant A).
inline constexpr double kZetaPrimeMinusOne = -0.1654211437004509292139196602427806;

enum class IncBetaStrategy { ExactSum, ContinuedFraction, TemmeExpansion };

std::string_view to_string(IncBetaStrategy s);

/// Value of I(v, j, α) together with the strategy that produced it and the
/// absolute error bound claimed by that strategy.
struct IncBetaEval {
  double value = 0.0;
  IncBetaStrategy strategy = IncBetaStrategy::ContinuedFraction;
  double err_estimate = 0.0;
};

/// Largest j accepted by the alternating-sum strategy.
inline constexpr int kExactSumMaxJ = 40;
/// Highest Temme order supported.
inline constexpr int kTemmeMaxOrder = 8;
/// Smallest v accepted by the Temme strategy.
inline constexpr double kTemmeMinV = 0.05;
/// Iteration budget of every continued fraction in this module.
inline constexpr int kMaxContinuedFractionTerms = 10000;

/// Smallest j for which an order-N Temme expansion is trusted: max(10, 4N).
constexpr int temme_min_j(int order) { return order * 4 > 10 ? order * 4 : 10; }

/// ln Γ(z + a) − ln Γ(z) for z > 0, a ≥ 0, accurate to a few ulps of the
/// result even when both log-Gammas are large.
double log_gamma_ratio(double z, double a);

/// ln Γ(z + a) − ln Γ(z) − a ln z, without the cancellation of the two
/// large terms when z ≫ 1.
double log_gamma_ratio_scaled(double z, double a);

/// ln B(a, b).
double log_beta(double a, double b);

/// Regularized upper incomplete Gamma Q(a, x) = Γ(a, x) / Γ(a).
double reg_inc_gamma_q(double a, double x);

/// Regularized lower incomplete Gamma P(a, x) = 1 − Q(a, x), computed without
/// cancellation when it is small.
double reg_inc_gamma_p(double a, double x);

/// B(j, α) = Γ(j)Γ(α)/Γ(j+α), via log-Gamma differences.
double beta_fn(double j, double alpha);

/// Finite alternating sum in 1 − v, accumulated in double-double.
/// Throws ThresholdError for j > kExactSumMaxJ.
IncBetaEval inc_beta_exact_sum(double v, int j, double alpha);

/// Continued fraction with the symmetry reduction I_v(j,α) = 1 − I_{1−v}(α,j)
/// above (j+1)/(j+α+2); near that point the better conditioned side is kept.
IncBetaEval inc_beta_cf(double v, double j, double alpha);

/// Coefficients of the uniform large-j expansion of I(v, j, α).
struct TemmeCoeffs {
  std::vector<double> F;  ///< F_0 … F_{N−1}
  std::vector<double> d;  ///< d_0 … d_{N−1}
  int N = 0;
  double v = 1.0;
  int j = 1;
  double alpha = 1.0;
};

TemmeCoeffs temme_coeffs(double v, int j, double alpha, int order);

/// Taylor coefficients of ((1 − e^{−t})/t)^{α−1} about t0 ≥ 0, orders 0…count−1.
std::vector<double> temme_generating_taylor(double t0, double alpha, int count);

/// Uniform expansion of I(v, j, α) truncated after `order` terms.
/// Throws ThresholdError for j < temme_min_j(order) or v < kTemmeMinV.
IncBetaEval inc_beta_temme(double v, int j, double alpha, int order);

/// ln G(z + 1) for the Barnes G-function, z ≥ 0.
double log_barnes_g(double z);

}  // namespace tue
