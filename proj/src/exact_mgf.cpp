#include "tue/exact_mgf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tue/error.hpp"
#include "tue/parallel.hpp"

namespace tue {

namespace {

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

constexpr int kChunk = 1024;

struct ChunkResult {
  KahanSum sum;
  std::map<IncBetaStrategy, int> counts;
};

ExactMgfResult log_mgf_nondegenerate(int n, double alpha, const std::vector<double>& t,
                                     const std::vector<double>& u, const ExactMgfOptions& opts) {
  const std::size_t m = t.size();
  ExactMgfResult out;
  if (opts.keep_per_term) out.per_term.emplace(static_cast<std::size_t>(n), 0.0);
  if (m == 0) return out;

  const std::vector<double> partial_exp = partial_exponentials(u);
  std::vector<double> v(m);
  for (std::size_t l = 0; l < m; ++l) v[l] = 1.0 - t[l] / n;

  const int chunks = (n + kChunk - 1) / kChunk;
  std::vector<ChunkResult> parts(static_cast<std::size_t>(chunks));
  parallel_for(parts.size(), opts.threads, [&](std::size_t c) {
    ChunkResult& part = parts[c];
    std::vector<double> x(m);
    const int j_begin = static_cast<int>(c) * kChunk + 1;
    const int j_end = std::min(n, j_begin + kChunk - 1);
    for (int j = j_begin; j <= j_end; ++j) {
      for (std::size_t l = 0; l < m; ++l) {
        const IncBetaEval e = inc_beta_dispatch(v[l], j, alpha, n, opts.policy);
        x[l] = e.value;
        ++part.counts[e.strategy];
      }
      const double arg = telescoped_combination(partial_exp, x);
      if (!(arg > 0.0)) {
        throw NumericalError("log_mgf_exact: nonpositive product factor at j = " +
                             std::to_string(j));
      }
      const double term = std::log(arg);
      part.sum.add(term);
      if (out.per_term) (*out.per_term)[static_cast<std::size_t>(j - 1)] = term;
    }
  });

  KahanSum total;
  for (const ChunkResult& part : parts) {
    total.add(part.sum.sum);
    total.add(-part.sum.comp);
    for (const auto& [s, count] : part.counts) out.strategy_counts[s] += count;
  }
  out.log_mgf = total.sum;
  return out;
}

}  // namespace

IncBetaEval inc_beta_dispatch(double v, int j, double alpha, int n, StrategyPolicy policy) {
  if (policy == StrategyPolicy::Auto) {
    if (j <= kExactSumMaxJ) {
      const IncBetaEval e = inc_beta_exact_sum(v, j, alpha);
      if (e.err_estimate <= kDispatchTolerance) return e;
    }
    const int temme_from = std::max(temme_min_j(kDispatchTemmeOrder), (n + 49) / 50);
    if (j >= temme_from && v >= kTemmeMinV) {
      const IncBetaEval e = inc_beta_temme(v, j, alpha, kDispatchTemmeOrder);
      if (e.err_estimate <= kDispatchTolerance) return e;
    }
  }
  return inc_beta_cf(v, static_cast<double>(j), alpha);
}

ExactMgfResult log_mgf_exact(const ParameterSet& params, const ExactMgfOptions& opts) {
  std::vector<double> t = params.t();
  std::vector<double> u = params.u();
  // N(1) = n almost surely: a trailing t_m = 0 contributes exactly n u_m.
  const bool degenerate = t.back() == 0.0;
  double shift = 0.0;
  if (degenerate) {
    shift = params.n() * u.back();
    t.pop_back();
    u.pop_back();
  }
  ExactMgfResult out = log_mgf_nondegenerate(params.n(), params.alpha(), t, u, opts);
  if (degenerate) {
    out.log_mgf = shift + out.log_mgf;
    if (out.per_term) {
      for (double& term : *out.per_term) term += params.u().back();
    }
  }
  return out;
}

double mean_count_exact(int n, double alpha, double r) {
  if (n < 1) throw ValidationError("n must be a positive integer");
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("mean_count_exact: r must lie in (0,1]");
  if (r == 1.0) return static_cast<double>(n);
  const double v = r * r;
  KahanSum sum;
  for (int j = 1; j <= n; ++j) sum.add(inc_beta_dispatch(v, j, alpha, n).value);
  return sum.sum;
}

double log_partition_exact(int n, double alpha) {
  if (n < 1) throw ValidationError("n must be a positive integer");
  if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
  KahanSum sum;
  sum.add(n * std::log(kPi));
  for (int j = 1; j <= n; ++j) sum.add(log_beta(static_cast<double>(j), alpha));
  return sum.sum;
}

double log_partition_asymptotic(int n, double alpha) {
  if (n < 2) throw ValidationError("log_partition_asymptotic needs n >= 2");
  if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
  const double nd = static_cast<double>(n);
  const double ln_n = std::log(nd);
  return -alpha * nd * ln_n + (alpha + std::log(kPi) + std::lgamma(alpha)) * nd -
         0.5 * alpha * alpha * ln_n + log_barnes_g(alpha) - 0.5 * alpha * std::log(2.0 * kPi);
}

}  // namespace tue
