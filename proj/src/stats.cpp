#include "tue/stats.hpp"

#include <algorithm>
#include <cmath>

#include "tue/error.hpp"

namespace tue {

double kolmogorov_tail(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double p_from_d(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_tail((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ValidationError("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t k = 0;
  double d = 0.0;
  while (i < x.size() && k < y.size()) {
    const double v = std::min(x[i], y[k]);
    while (i < x.size() && x[i] == v) ++i;
    while (k < y.size() && y[k] == v) ++k;
    d = std::max(d, std::abs(i / na - k / nb));
  }
  return {d, p_from_d(d, na * nb / (na + nb))};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

KsResult ks_normal(std::span<const double> sample) {
  if (sample.empty()) throw ValidationError("ks_normal: empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    const double v = x[i];
    const double below = i / n;
    while (i < x.size() && x[i] == v) ++i;
    const double phi = normal_cdf(v);
    d = std::max({d, std::abs(phi - below), std::abs(i / n - phi)});
  }
  return {d, p_from_d(d, n)};
}

Eigen::MatrixXd correlation(const Eigen::MatrixXd& samples) {
  if (samples.rows() < 2) throw ValidationError("correlation: need at least two rows");
  const Eigen::MatrixXd centered = samples.rowwise() - samples.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / (samples.rows() - 1.0);
  const Eigen::VectorXd inv_sd = cov.diagonal().array().sqrt().inverse();
  Eigen::MatrixXd corr = inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
  corr = (0.5 * (corr + corr.transpose())).eval();
  corr.diagonal().setOnes();
  return corr;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("fit_loglog_slope: need two or more paired points");
  }
  const std::size_t n = x.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace tue
