#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tue/asymptotics.hpp"
#include "tue/exact_mgf.hpp"
#include "tue/model.hpp"
#include "tue/sampler.hpp"

namespace tue {

/// Errors at or below this are treated as round-off.
inline constexpr double kNoiseFloor = 1e-10;

struct ConvergenceStudy {
  std::vector<int> n_grid;
  std::vector<double> exact;
  std::vector<double> predicted;
  std::vector<double> errors;
  std::optional<double> fitted_slope;  ///< absent at the noise floor
  double predicted_slope = -1.0;
  bool noise_floor = false;
};

/// Geometric grid n_min, n_min·f, … (rounded, ≤ n_max), strictly increasing.
std::vector<int> geometric_grid(int n_min, int n_max, double factor);

/// |ln 𝓔_n − (C₁n + C₂)| over the grid. The slope is fitted over the
/// points above the noise floor; fewer than two such points flag the study.
ConvergenceStudy run_convergence(const ParameterSet& base, int n_min, int n_max, double factor,
                                 int threads = 1);

/// %.17g
std::string format_double(double x);

void write_convergence_csv(std::ostream& os, const ConvergenceStudy& study);

nlohmann::json exact_json(const ParameterSet& params, const ExactMgfResult& result);
nlohmann::json asymptotic_json(const ParameterSet& params, const AsymptoticConstants& c);
nlohmann::json cumulants_json(double alpha, const std::vector<double>& t,
                              const CumulantReport& report);
nlohmann::json moments_json(const ParameterSet& params, SampleSource source, std::uint64_t seed,
                            const EmpiricalMoments& moments);

inline constexpr double kCltMaxKs = 0.02;
inline constexpr double kCltMaxCorrelationGap = 0.05;
inline constexpr double kCltMaxVarianceGap = 0.05;

struct CltReport {
  Eigen::MatrixXd empirical_correlation;
  Eigen::MatrixXd sigma;
  std::vector<double> ks_distance;
  std::vector<double> ks_p_value;
  std::vector<double> variance;
  double max_correlation_gap = 0.0;
  bool ks_pass = false;
  bool correlation_pass = false;
  bool variance_pass = false;
  bool pass() const { return ks_pass && correlation_pass && variance_pass; }
};

/// Normalized counts compared with the limiting Gaussian. Requires t_m > 0.
CltReport run_clt(const ParameterSet& params, long long n_samples, std::uint64_t seed,
                  SampleSource source = SampleSource::KostlanModuli, int threads = 1);

nlohmann::json clt_json(const ParameterSet& params, long long n_samples, std::uint64_t seed,
                        const CltReport& report);

/// (re, im) rows with a header.
void write_points_csv(std::ostream& os, const std::vector<std::complex<double>>& points);

enum class FigureKind { Fig1, Fig3, Convergence };

FigureKind parse_figure_kind(const std::string& name);

/// Figure data file names:
///   fig1:        fig1_alpha2.csv, fig1_alpha5.csv, fig1_alpha10.csv
///   fig3:        fig3_b1.csv, fig3_b11.csv
///   convergence: convergence_alpha0.5.csv, convergence_alpha1.csv, convergence_alpha2.csv
/// Returns the paths written.
std::vector<std::filesystem::path> write_figures(FigureKind kind, const std::filesystem::path& dir,
                                                 std::uint64_t seed, int threads = 1);

inline constexpr double kFig3Alphas[] = {0.34, 1.24, 2.24, 5.24};
inline constexpr int kFig3Points = 400;
inline constexpr double kFig3TMin = 0.01;
inline constexpr double kFig3TMax = 20.0;

}  // namespace tue
