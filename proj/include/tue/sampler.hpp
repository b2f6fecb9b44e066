#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tue/model.hpp"

namespace tue {

enum class SampleSource { HaarTruncation, KostlanModuli };

std::string to_string(SampleSource source);
SampleSource parse_sample_source(const std::string& name);

struct SampleCloud {
  std::vector<double> moduli;  ///< ascending
  std::optional<std::vector<std::complex<double>>> points;
  std::vector<int> counts;  ///< N(r_ℓ), ℓ = 1 … m; empty without a radii schedule
  SampleSource source = SampleSource::KostlanModuli;
};

/// Generator for draw `stream` of a run seeded with `seed`. Streams are
/// independent and reproducible in any order.
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream);

/// Eigenvalues of the upper-left n×n block of an (n+α)×(n+α) Haar unitary.
/// α must be a positive integer.
SampleCloud sample_haar_truncation(int n, double alpha, std::uint64_t seed,
                                   std::uint64_t stream = 0);
/// Same draw with counts against the radii of `params`.
SampleCloud sample_haar_truncation(const ParameterSet& params, std::uint64_t seed,
                                   std::uint64_t stream = 0);

/// Moduli √Y_j with independent Y_j ~ Beta(j, α), j = 1 … n. No points.
SampleCloud sample_kostlan_moduli(int n, double alpha, std::uint64_t seed,
                                  std::uint64_t stream = 0);
SampleCloud sample_kostlan_moduli(const ParameterSet& params, std::uint64_t seed,
                                  std::uint64_t stream = 0);

SampleCloud sample_cloud(const ParameterSet& params, SampleSource source, std::uint64_t seed,
                         std::uint64_t stream);

/// N(r_ℓ) = #{moduli < r_ℓ}; the r = 1 component is n by definition.
std::vector<int> count_inside(std::span<const double> sorted_moduli, const ParameterSet& params);

/// Pairwise-mergeable streaming mean and co-moment of count vectors.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(int m);
  void add(std::span<const int> counts);
  void merge(const MomentAccumulator& other);
  long long count() const { return n_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  /// Unbiased covariance.
  Eigen::MatrixXd covariance() const;

 private:
  long long n_ = 0;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd comoment_;
};

struct EmpiricalMoments {
  Eigen::VectorXd mean;
  Eigen::VectorXd var;
  Eigen::MatrixXd cov;
  long long n_samples = 0;
  Eigen::VectorXd std_error;  ///< √(var / n_samples)
};

/// Samples are generated in fixed blocks of consecutive streams and merged
/// in order, so the result does not depend on `threads`.
EmpiricalMoments empirical_moments(const ParameterSet& params, long long n_samples,
                                   std::uint64_t seed, SampleSource source, int threads = 1);

/// All count vectors, one row per sample.
Eigen::MatrixXi sample_counts(const ParameterSet& params, long long n_samples,
                              std::uint64_t seed, SampleSource source, int threads = 1);

/// 𝓝_ℓ = (N(r_ℓ) − b₁(t_ℓ)n) / √(b₍₁,₁₎(t_ℓ,t_ℓ)n), one row per sample.
/// Requires t_m > 0.
Eigen::MatrixXd clt_normalized_counts(const ParameterSet& params, long long n_samples,
                                      std::uint64_t seed,
                                      SampleSource source = SampleSource::KostlanModuli,
                                      int threads = 1);

}  // namespace tue
