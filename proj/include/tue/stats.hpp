#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tue {

struct KsResult {
  double D = 0.0;
  double p_value = 1.0;
};

/// Kolmogorov limiting tail Q_KS(λ) = 2 Σ (−1)^{k−1} e^{−2k²λ²}.
double kolmogorov_tail(double lambda);

/// Two-sample Kolmogorov–Smirnov statistic; ties handled by stepping over
/// equal values in both samples at once.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample KS distance to the standard normal. Exact for discrete data:
/// both one-sided limits of the empirical CDF are compared at every jump.
KsResult ks_normal(std::span<const double> sample);

double normal_cdf(double x);

/// Sample correlation matrix of the columns of `samples` (rows = draws).
Eigen::MatrixXd correlation(const Eigen::MatrixXd& samples);

/// Least-squares slope of ln y against ln x.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace tue
