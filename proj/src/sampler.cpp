#include "tue/sampler.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "tue/asymptotics.hpp"
#include "tue/error.hpp"
#include "tue/parallel.hpp"

namespace tue {

namespace {

constexpr long long kBlock = 256;

void require_size(int n, double alpha) {
  if (n < 1) throw ValidationError("n must be a positive integer");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be positive");
}

}  // namespace

std::string to_string(SampleSource source) {
  return source == SampleSource::HaarTruncation ? "haar" : "kostlan";
}

SampleSource parse_sample_source(const std::string& name) {
  if (name == "haar") return SampleSource::HaarTruncation;
  if (name == "kostlan") return SampleSource::KostlanModuli;
  throw ValidationError("unknown sample source '" + name + "' (expected haar or kostlan)");
}

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

SampleCloud sample_haar_truncation(int n, double alpha, std::uint64_t seed, std::uint64_t stream) {
  require_size(n, alpha);
  if (alpha != std::floor(alpha)) {
    throw DomainError("sample_haar_truncation: alpha must be a positive integer");
  }
  const int size = n + static_cast<int>(alpha);
  std::mt19937_64 engine = stream_engine(seed, stream);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd z(size, size);
  for (int c = 0; c < size; ++c) {
    for (int r = 0; r < size; ++r) {
      const double re = gauss(engine);
      const double im = gauss(engine);
      z(r, c) = {re, im};
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& packed = qr.matrixQR();
  // Q · diag(R_kk / |R_kk|) is Haar distributed.
  for (int k = 0; k < size; ++k) {
    const std::complex<double> rkk = packed(k, k);
    const double mag = std::abs(rkk);
    if (mag > 0.0) q.col(k) *= rkk / mag;
  }
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(q.topLeftCorner(n, n), false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("sample_haar_truncation: eigenvalue solver did not converge");
  }
  SampleCloud cloud;
  cloud.source = SampleSource::HaarTruncation;
  std::vector<std::complex<double>> points(solver.eigenvalues().begin(),
                                           solver.eigenvalues().end());
  cloud.moduli.reserve(points.size());
  for (const auto& p : points) cloud.moduli.push_back(std::abs(p));
  std::sort(cloud.moduli.begin(), cloud.moduli.end());
  cloud.points = std::move(points);
  return cloud;
}

SampleCloud sample_kostlan_moduli(int n, double alpha, std::uint64_t seed, std::uint64_t stream) {
  require_size(n, alpha);
  std::mt19937_64 engine = stream_engine(seed, stream);
  std::gamma_distribution<double> tail(alpha, 1.0);
  SampleCloud cloud;
  cloud.source = SampleSource::KostlanModuli;
  cloud.moduli.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    std::gamma_distribution<double> head(static_cast<double>(j), 1.0);
    const double g1 = head(engine);
    const double g2 = tail(engine);
    cloud.moduli.push_back(std::sqrt(g1 / (g1 + g2)));
  }
  std::sort(cloud.moduli.begin(), cloud.moduli.end());
  return cloud;
}

std::vector<int> count_inside(std::span<const double> sorted_moduli, const ParameterSet& params) {
  const RadiiSchedule sched = radii(params);
  std::vector<int> counts;
  counts.reserve(sched.r.size());
  for (double r : sched.r) {
    if (r == 1.0) {
      counts.push_back(params.n());
      continue;
    }
    counts.push_back(static_cast<int>(
        std::lower_bound(sorted_moduli.begin(), sorted_moduli.end(), r) - sorted_moduli.begin()));
  }
  return counts;
}

SampleCloud sample_haar_truncation(const ParameterSet& params, std::uint64_t seed,
                                   std::uint64_t stream) {
  SampleCloud cloud = sample_haar_truncation(params.n(), params.alpha(), seed, stream);
  cloud.counts = count_inside(cloud.moduli, params);
  return cloud;
}

SampleCloud sample_kostlan_moduli(const ParameterSet& params, std::uint64_t seed,
                                  std::uint64_t stream) {
  SampleCloud cloud = sample_kostlan_moduli(params.n(), params.alpha(), seed, stream);
  cloud.counts = count_inside(cloud.moduli, params);
  return cloud;
}

SampleCloud sample_cloud(const ParameterSet& params, SampleSource source, std::uint64_t seed,
                         std::uint64_t stream) {
  return source == SampleSource::HaarTruncation ? sample_haar_truncation(params, seed, stream)
                                                : sample_kostlan_moduli(params, seed, stream);
}

MomentAccumulator::MomentAccumulator(int m)
    : mean_(Eigen::VectorXd::Zero(m)), comoment_(Eigen::MatrixXd::Zero(m, m)) {}

void MomentAccumulator::add(std::span<const int> counts) {
  Eigen::VectorXd x(mean_.size());
  for (Eigen::Index l = 0; l < x.size(); ++l) x(l) = counts[static_cast<std::size_t>(l)];
  ++n_;
  const Eigen::VectorXd before = x - mean_;
  mean_ += before / static_cast<double>(n_);
  comoment_ += before * (x - mean_).transpose();
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double total = na + nb;
  const Eigen::VectorXd delta = other.mean_ - mean_;
  mean_ += delta * (nb / total);
  comoment_ += other.comoment_ + delta * delta.transpose() * (na * nb / total);
  n_ += other.n_;
}

Eigen::MatrixXd MomentAccumulator::covariance() const {
  if (n_ < 2) throw ValidationError("covariance needs at least two samples");
  Eigen::MatrixXd cov = comoment_ / static_cast<double>(n_ - 1);
  return (cov + cov.transpose()) * 0.5;
}

EmpiricalMoments empirical_moments(const ParameterSet& params, long long n_samples,
                                   std::uint64_t seed, SampleSource source, int threads) {
  if (n_samples < 2) throw ValidationError("n_samples must be at least 2");
  const long long blocks = (n_samples + kBlock - 1) / kBlock;
  std::vector<MomentAccumulator> parts(static_cast<std::size_t>(blocks),
                                       MomentAccumulator(params.m()));
  parallel_for(parts.size(), threads, [&](std::size_t b) {
    const long long begin = static_cast<long long>(b) * kBlock;
    const long long end = std::min(n_samples, begin + kBlock);
    for (long long s = begin; s < end; ++s) {
      parts[b].add(sample_cloud(params, source, seed, static_cast<std::uint64_t>(s)).counts);
    }
  });
  MomentAccumulator total(params.m());
  for (const MomentAccumulator& part : parts) total.merge(part);

  EmpiricalMoments out;
  out.n_samples = total.count();
  out.mean = total.mean();
  out.cov = total.covariance();
  out.var = out.cov.diagonal();
  out.std_error = (out.var / static_cast<double>(out.n_samples)).array().sqrt();
  return out;
}

Eigen::MatrixXi sample_counts(const ParameterSet& params, long long n_samples, std::uint64_t seed,
                              SampleSource source, int threads) {
  if (n_samples < 1) throw ValidationError("n_samples must be positive");
  Eigen::MatrixXi out(n_samples, params.m());
  parallel_for(static_cast<std::size_t>(n_samples), threads, [&](std::size_t s) {
    const SampleCloud cloud = sample_cloud(params, source, seed, s);
    for (int l = 0; l < params.m(); ++l) out(static_cast<Eigen::Index>(s), l) = cloud.counts[l];
  });
  return out;
}

Eigen::MatrixXd clt_normalized_counts(const ParameterSet& params, long long n_samples,
                                      std::uint64_t seed, SampleSource source, int threads) {
  if (!(params.t().back() > 0.0)) {
    throw ValidationError("t_m must be positive for the CLT: N(r_m) = n when t_m = 0");
  }
  const Eigen::MatrixXi counts = sample_counts(params, n_samples, seed, source, threads);
  const double n = static_cast<double>(params.n());
  Eigen::MatrixXd out(counts.rows(), counts.cols());
  for (int l = 0; l < params.m(); ++l) {
    const double tl = params.t()[l];
    const double centre = b1_closed_form(params.alpha(), tl) * n;
    const double scale = std::sqrt(b11_coeff(params.alpha(), tl, tl) * n);
    out.col(l) = (counts.col(l).cast<double>().array() - centre) / scale;
  }
  return out;
}

}  // namespace tue
