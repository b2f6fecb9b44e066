#include "tue/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "tue/error.hpp"
#include "tue/json_io.hpp"
#include "tue/stats.hpp"

namespace tue {

namespace {

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

nlohmann::json matrix_json(const Eigen::MatrixXd& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const Eigen::VectorXd row = a.row(r).transpose();
    rows.push_back(vector_json(row));
  }
  return rows;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::filesystem::filesystem_error("cannot open for writing", path,
                                                   std::make_error_code(std::errc::io_error));
  return os;
}

std::string alpha_label(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<int> geometric_grid(int n_min, int n_max, double factor) {
  if (n_min < 50) throw ValidationError("n_min must be at least 50");
  if (!(factor >= std::sqrt(2.0))) throw ValidationError("factor must be at least sqrt(2)");
  if (n_max < n_min) throw ValidationError("n_max must not be below n_min");
  std::vector<int> grid;
  for (int k = 0;; ++k) {
    const double n = std::round(n_min * std::pow(factor, k));
    if (n > n_max) break;
    grid.push_back(static_cast<int>(n));
  }
  return grid;
}

ConvergenceStudy run_convergence(const ParameterSet& base, int n_min, int n_max, double factor,
                                 int threads) {
  ConvergenceStudy study;
  study.n_grid = geometric_grid(n_min, n_max, factor);
  const AsymptoticConstants c = asymptotic_constants(base);
  study.predicted_slope = -c.error_exponent;
  ExactMgfOptions opts;
  opts.threads = threads;
  std::vector<double> n_above;
  std::vector<double> err_above;
  for (int n : study.n_grid) {
    const double exact = log_mgf_exact(base.with_n(n), opts).log_mgf;
    const double predicted = c.C1 * n + c.C2;
    const double err = std::abs(exact - predicted);
    study.exact.push_back(exact);
    study.predicted.push_back(predicted);
    study.errors.push_back(err);
    if (err > kNoiseFloor) {
      n_above.push_back(n);
      err_above.push_back(err);
    }
  }
  if (n_above.size() >= 2) {
    study.fitted_slope = fit_loglog_slope(n_above, err_above);
  } else {
    study.noise_floor = true;
  }
  return study;
}

void write_convergence_csv(std::ostream& os, const ConvergenceStudy& study) {
  os << "n,exact,predicted,abs_error\n";
  for (std::size_t i = 0; i < study.n_grid.size(); ++i) {
    os << study.n_grid[i] << ',' << format_double(study.exact[i]) << ','
       << format_double(study.predicted[i]) << ',' << format_double(study.errors[i]) << '\n';
  }
  os << "# fitted_slope="
     << (study.fitted_slope ? format_double(*study.fitted_slope) : std::string("noise floor"))
     << ",predicted_slope=" << format_double(study.predicted_slope) << '\n';
}

nlohmann::json exact_json(const ParameterSet& params, const ExactMgfResult& result) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [strategy, count] : result.strategy_counts) counts[std::string(to_string(strategy))] = count;
  nlohmann::json j = {{"params", params_to_json(params)},
                      {"log_mgf", result.log_mgf},
                      {"strategy_counts", counts}};
  if (result.per_term) j["per_term"] = *result.per_term;
  return j;
}

nlohmann::json asymptotic_json(const ParameterSet& params, const AsymptoticConstants& c) {
  return {{"params", params_to_json(params)},
          {"C1", c.C1},
          {"C2", c.C2},
          {"predicted_log_mgf", c.C1 * params.n() + c.C2},
          {"error_exponent", c.error_exponent},
          {"quadrature_err", c.quadrature_err}};
}

nlohmann::json cumulants_json(double alpha, const std::vector<double>& t,
                              const CumulantReport& report) {
  nlohmann::json j = {{"alpha", alpha},
                      {"t", t},
                      {"b1", vector_json(report.b1)},
                      {"c1", vector_json(report.c1)},
                      {"b11", matrix_json(report.b11)},
                      {"c11", matrix_json(report.c11)}};
  j["Sigma"] = report.Sigma ? matrix_json(*report.Sigma) : nlohmann::json(nullptr);
  if (report.n) {
    j["n"] = *report.n;
    j["predicted_mean"] = vector_json(report.predicted_mean);
    j["predicted_var"] = vector_json(report.predicted_var);
    j["predicted_cov"] = matrix_json(report.predicted_cov);
  }
  return j;
}

nlohmann::json moments_json(const ParameterSet& params, SampleSource source, std::uint64_t seed,
                            const EmpiricalMoments& moments) {
  return {{"params", params_to_json(params)},
          {"source", to_string(source)},
          {"seed", seed},
          {"n_samples", moments.n_samples},
          {"mean", vector_json(moments.mean)},
          {"var", vector_json(moments.var)},
          {"cov", matrix_json(moments.cov)},
          {"std_error", vector_json(moments.std_error)}};
}

CltReport run_clt(const ParameterSet& params, long long n_samples, std::uint64_t seed,
                  SampleSource source, int threads) {
  const Eigen::MatrixXd z = clt_normalized_counts(params, n_samples, seed, source, threads);
  const CumulantReport coeffs = cumulant_coeffs(params.alpha(), params.t());
  CltReport out;
  out.sigma = *coeffs.Sigma;
  out.empirical_correlation = correlation(z);
  out.max_correlation_gap = (out.empirical_correlation - out.sigma).cwiseAbs().maxCoeff();
  out.ks_pass = true;
  out.variance_pass = true;
  for (Eigen::Index l = 0; l < z.cols(); ++l) {
    const Eigen::VectorXd col = z.col(l);
    const KsResult ks = ks_normal(std::vector<double>(col.data(), col.data() + col.size()));
    out.ks_distance.push_back(ks.D);
    out.ks_p_value.push_back(ks.p_value);
    const double var = (col.array() - col.mean()).square().sum() / (col.size() - 1.0);
    out.variance.push_back(var);
    out.ks_pass = out.ks_pass && ks.D < kCltMaxKs;
    out.variance_pass = out.variance_pass && std::abs(var - 1.0) <= kCltMaxVarianceGap;
  }
  out.correlation_pass = out.max_correlation_gap <= kCltMaxCorrelationGap;
  return out;
}

nlohmann::json clt_json(const ParameterSet& params, long long n_samples, std::uint64_t seed,
                        const CltReport& report) {
  return {{"params", params_to_json(params)},
          {"n_samples", n_samples},
          {"seed", seed},
          {"empirical_correlation", matrix_json(report.empirical_correlation)},
          {"Sigma", matrix_json(report.sigma)},
          {"max_correlation_gap", report.max_correlation_gap},
          {"ks_distance", report.ks_distance},
          {"ks_p_value", report.ks_p_value},
          {"variance", report.variance},
          {"thresholds",
           {{"ks", kCltMaxKs},
            {"correlation", kCltMaxCorrelationGap},
            {"variance", kCltMaxVarianceGap}}},
          {"ks_pass", report.ks_pass},
          {"correlation_pass", report.correlation_pass},
          {"variance_pass", report.variance_pass},
          {"pass", report.pass()}};
}

void write_points_csv(std::ostream& os, const std::vector<std::complex<double>>& points) {
  os << "re,im\n";
  for (const auto& p : points) os << format_double(p.real()) << ',' << format_double(p.imag()) << '\n';
}

FigureKind parse_figure_kind(const std::string& name) {
  if (name == "fig1") return FigureKind::Fig1;
  if (name == "fig3") return FigureKind::Fig3;
  if (name == "convergence") return FigureKind::Convergence;
  throw ValidationError("unknown figure '" + name + "' (expected fig1, fig3 or convergence)");
}

std::vector<std::filesystem::path> write_figures(FigureKind kind, const std::filesystem::path& dir,
                                                 std::uint64_t seed, int threads) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  switch (kind) {
    case FigureKind::Fig1: {
      for (int alpha : {2, 5, 10}) {
        const SampleCloud cloud = sample_haar_truncation(500, alpha, seed, 0);
        const auto path = dir / ("fig1_alpha" + std::to_string(alpha) + ".csv");
        std::ofstream os = open_output(path);
        write_points_csv(os, *cloud.points);
        written.push_back(path);
      }
      break;
    }
    case FigureKind::Fig3: {
      std::vector<double> grid(kFig3Points);
      const double ratio = std::log(kFig3TMax / kFig3TMin) / (kFig3Points - 1);
      for (int i = 0; i < kFig3Points; ++i) grid[i] = kFig3TMin * std::exp(ratio * i);
      grid.front() = kFig3TMin;
      grid.back() = kFig3TMax;
      std::string header = "t";
      for (double alpha : kFig3Alphas) header += ",alpha_" + alpha_label(alpha);
      const auto b1_path = dir / "fig3_b1.csv";
      const auto b11_path = dir / "fig3_b11.csv";
      std::ofstream b1_os = open_output(b1_path);
      std::ofstream b11_os = open_output(b11_path);
      b1_os << header << '\n';
      b11_os << header << '\n';
      for (double t : grid) {
        b1_os << format_double(t);
        b11_os << format_double(t);
        for (double alpha : kFig3Alphas) {
          b1_os << ',' << format_double(b1_closed_form(alpha, t));
          b11_os << ',' << format_double(b11_coeff(alpha, t, t));
        }
        b1_os << '\n';
        b11_os << '\n';
      }
      written.push_back(b1_path);
      written.push_back(b11_path);
      break;
    }
    case FigureKind::Convergence: {
      for (double alpha : {0.5, 1.0, 2.0}) {
        const ParameterSet base = make_params(100, alpha, {1.0}, {0.5});
        const ConvergenceStudy study = run_convergence(base, 100, 3200, 2.0, threads);
        const auto path = dir / ("convergence_alpha" + alpha_label(alpha) + ".csv");
        std::ofstream os = open_output(path);
        write_convergence_csv(os, study);
        written.push_back(path);
      }
      break;
    }
  }
  return written;
}

}  // namespace tue
