#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tue/model.hpp"
#include "tue/quadrature.hpp"

namespace tue {

struct AsymptoticConstants {
  double C1 = 0.0;
  double C2 = 0.0;
  double error_exponent = 1.0;  ///< (2 min(α,1) + α)/(2 + α)
  double quadrature_err = 0.0;
};

/// Decay exponent of |ln 𝓔_n − (C₁n + C₂)|.
double error_exponent(double alpha);

/// C₁ = ∫₀¹ ln 𝓗_α dx, value and quadrature error.
QuadResult c1_integral(const ParameterSet& params, const QuadOptions& opts = {});
double compute_c1(const ParameterSet& params, const QuadOptions& opts = {});

/// ∫₀¹ 𝓖_α dx. For α < 1 integrated in s = x^α to remove the x^{α−1} singularity.
QuadResult g_integral(const ParameterSet& params, const QuadOptions& opts = {});
/// C₂ = ∫₀¹ 𝓖_α dx + (ln 𝓗_α(1) − Σ u)/2.
double compute_c2(const ParameterSet& params, const QuadOptions& opts = {});

AsymptoticConstants asymptotic_constants(const ParameterSet& params, const QuadOptions& opts = {});

/// C₁ n + C₂.
double predict_log_mgf(const ParameterSet& params, const QuadOptions& opts = {});

// Cumulant coefficients. Pairs take t_ℓ ≥ t_k (ℓ ≤ k in radius order).

/// Q(α,t) + α(1 − Q(α+1,t))/t, with the limit 1 at t = 0.
double b1_closed_form(double alpha, double t);
/// ∫₀¹ Q(α, t x) dx by quadrature.
double b1_integral(double alpha, double t, const QuadOptions& opts = {});
double c1_coeff(double alpha, double t, const QuadOptions& opts = {});
double b11_coeff(double alpha, double t_l, double t_k, const QuadOptions& opts = {});
double c11_coeff(double alpha, double t_l, double t_k, const QuadOptions& opts = {});

struct CumulantReport {
  Eigen::VectorXd b1;
  Eigen::VectorXd c1;
  Eigen::MatrixXd b11;  ///< symmetric
  Eigen::MatrixXd c11;  ///< displayed value at (ℓ,k), ℓ ≤ k, mirrored
  /// Limiting correlation of the normalized counts; absent when some
  /// b₍₁,₁₎(t_ℓ,t_ℓ) vanishes (t_m = 0).
  std::optional<Eigen::MatrixXd> Sigma;
  /// b·n + c, filled when a matrix size is supplied.
  std::optional<int> n;
  Eigen::VectorXd predicted_mean;
  Eigen::VectorXd predicted_var;
  Eigen::MatrixXd predicted_cov;
};

CumulantReport cumulant_coeffs(double alpha, std::span<const double> t,
                               std::optional<int> n = std::nullopt,
                               const QuadOptions& opts = {});

}  // namespace tue
