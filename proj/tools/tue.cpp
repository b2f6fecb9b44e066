#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tue/asymptotics.hpp"
#include "tue/error.hpp"
#include "tue/exact_mgf.hpp"
#include "tue/harness.hpp"
#include "tue/json_io.hpp"
#include "tue/parallel.hpp"
#include "tue/sampler.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::optional<int> n;
  std::optional<double> alpha;
  std::vector<double> t;
  std::vector<double> u;
  std::uint64_t seed = 20240501;
  int threads = 0;
  long long samples = 10000;
  std::string source = "kostlan";
  int n_min = 100;
  int n_max = 3200;
  double factor = 2.0;
  std::string which = "all";
  std::string out;
  std::string points_dir;
  int points = 1;
  bool per_term = false;
};

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw tue::ValidationError(std::string("config file: ") + e.what());
  }
}

template <class T>
T read_key(const nlohmann::json& block, const char* key) {
  try {
    return block.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw tue::ValidationError(std::string("config key '") + key + "': " + e.what());
  }
}

// Flag value when the flag was given, else the config value, else the default.
template <class T>
T pick(const nlohmann::json& block, const char* key, bool flag_given, const T& flag_value) {
  if (flag_given || !block.contains(key)) return flag_value;
  return read_key<T>(block, key);
}

template <class T>
std::optional<T> pick(const nlohmann::json& block, const char* key, bool flag_given,
                      const std::optional<T>& flag_value) {
  if (flag_given || !block.contains(key)) return flag_value;
  return read_key<T>(block, key);
}

class Runner {
 public:
  Runner(CLI::App& app, Options& opt) : app_(app), opt_(opt) {}

  bool given(const std::string& flag) const { return app_.get_subcommands().front()->count(flag) > 0; }

  const nlohmann::json& config() {
    if (!config_) config_ = load_config(opt_.config);
    return *config_;
  }

  const nlohmann::json& block(const std::string& name) {
    static const nlohmann::json empty = nlohmann::json::object();
    return config().contains(name) ? config()[name] : empty;
  }

  int threads() const {
    if (const char* env = std::getenv("TUE_THREADS")) {
      try {
        return tue::resolve_threads(std::stoi(env));
      } catch (const std::logic_error&) {
        throw tue::ValidationError(std::string("TUE_THREADS is not an integer: ") + env);
      }
    }
    return tue::resolve_threads(opt_.threads);
  }

  std::uint64_t seed() { return pick(config(), "seed", given("--seed"), opt_.seed); }

  double alpha() {
    const auto a = pick(config(), "alpha", given("--alpha"), opt_.alpha);
    if (!a) throw tue::ValidationError("missing parameter alpha");
    return *a;
  }

  std::vector<double> t() {
    auto t = pick(config(), "t", given("--t"), opt_.t);
    if (t.empty()) throw tue::ValidationError("missing parameter t");
    return t;
  }

  tue::ParameterSet params(std::optional<int> n_fallback = std::nullopt) {
    auto n = pick(config(), "n", given("--n"), opt_.n);
    if (!n) n = n_fallback;
    if (!n) throw tue::ValidationError("missing parameter n");
    const double a = alpha();
    std::vector<double> tv = t();
    std::vector<double> uv = pick(config(), "u", given("--u"), opt_.u);
    if (uv.empty()) uv.assign(tv.size(), 0.0);
    return tue::make_params(*n, a, std::move(tv), std::move(uv));
  }

  void emit(const std::string& text) {
    if (opt_.out.empty()) {
      std::cout << text;
      std::cout.flush();
      if (!std::cout) throw IoError("failed writing to stdout");
      return;
    }
    std::ofstream os(opt_.out, std::ios::binary);
    if (!os) throw IoError("cannot open '" + opt_.out + "' for writing");
    os << text;
    if (!os) throw IoError("failed writing '" + opt_.out + "'");
  }

  void emit_json(const nlohmann::json& j) { emit(j.dump(2) + "\n"); }

  void exact() {
    const tue::ParameterSet p = params();
    tue::ExactMgfOptions o;
    o.threads = threads();
    o.keep_per_term = opt_.per_term;
    emit_json(tue::exact_json(p, tue::log_mgf_exact(p, o)));
  }

  void asymptotic() {
    const tue::ParameterSet p = params();
    emit_json(tue::asymptotic_json(p, tue::asymptotic_constants(p)));
  }

  void cumulants() {
    const double a = alpha();
    const std::vector<double> tv = t();
    const auto n = pick(config(), "n", given("--n"), opt_.n);
    emit_json(tue::cumulants_json(a, tv, tue::cumulant_coeffs(a, tv, n)));
  }

  void convergence() {
    const nlohmann::json& b = block("convergence");
    const int n_min = pick(b, "n_min", given("--n-min"), opt_.n_min);
    const int n_max = pick(b, "n_max", given("--n-max"), opt_.n_max);
    const double factor = pick(b, "factor", given("--factor"), opt_.factor);
    const tue::ParameterSet base = params(n_min);
    const tue::ConvergenceStudy study =
        tue::run_convergence(base.with_n(n_min), n_min, n_max, factor, threads());
    std::ostringstream os;
    tue::write_convergence_csv(os, study);
    emit(os.str());
  }

  void sample() {
    const nlohmann::json& b = block("sample");
    const tue::ParameterSet p = params();
    const long long samples = pick(b, "n_samples", given("--samples"), opt_.samples);
    const tue::SampleSource source =
        tue::parse_sample_source(pick(b, "source", given("--source"), opt_.source));
    const std::uint64_t s = seed();
    const std::string points_dir = pick(b, "points_dir", given("--points-dir"), opt_.points_dir);
    if (!points_dir.empty()) {
      if (source != tue::SampleSource::HaarTruncation) {
        throw tue::ValidationError("--points-dir needs --source haar (moduli carry no angles)");
      }
      const int points = pick(b, "points", given("--points"), opt_.points);
      std::filesystem::create_directories(points_dir);
      for (int k = 0; k < points; ++k) {
        const tue::SampleCloud cloud = tue::sample_haar_truncation(p, s, k);
        const auto path = std::filesystem::path(points_dir) / ("points_" + std::to_string(k) + ".csv");
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
        tue::write_points_csv(os, *cloud.points);
      }
    }
    emit_json(tue::moments_json(p, source, s,
                                tue::empirical_moments(p, samples, s, source, threads())));
  }

  void clt() {
    const nlohmann::json& b = block("clt");
    const tue::ParameterSet p = params();
    const long long samples = pick(b, "n_samples", given("--samples"), opt_.samples);
    const tue::SampleSource source =
        tue::parse_sample_source(pick(b, "source", given("--source"), opt_.source));
    const std::uint64_t s = seed();
    emit_json(tue::clt_json(p, samples, s, tue::run_clt(p, samples, s, source, threads())));
  }

  void figures() {
    const std::string which = pick(block("figures"), "which", given("--which"), opt_.which);
    const std::string dir = opt_.out.empty() ? "figures" : opt_.out;
    std::vector<tue::FigureKind> kinds;
    if (which == "all") {
      kinds = {tue::FigureKind::Fig1, tue::FigureKind::Fig3, tue::FigureKind::Convergence};
    } else {
      kinds = {tue::parse_figure_kind(which)};
    }
    const std::uint64_t s = seed();
    for (tue::FigureKind kind : kinds) {
      for (const auto& path : tue::write_figures(kind, dir, s, threads())) {
        std::cout << path.string() << '\n';
      }
    }
  }

 private:
  CLI::App& app_;
  Options& opt_;
  std::optional<nlohmann::json> config_;
};

void add_params(CLI::App* cmd, Options& opt, bool with_u = true) {
  cmd->add_option("--config", opt.config, "JSON file with n, alpha, t, u and command blocks");
  cmd->add_option("--n", opt.n, "matrix size");
  cmd->add_option("--alpha", opt.alpha, "truncation parameter");
  cmd->add_option("--t", opt.t, "hard-edge scales, strictly decreasing")->delimiter(',');
  if (with_u) cmd->add_option("--u", opt.u, "MGF arguments (default 0)")->delimiter(',');
  cmd->add_option("--threads", opt.threads, "worker threads, 0 = all cores (TUE_THREADS overrides)");
  cmd->add_option("--out", opt.out, "output file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disk counting statistics of truncated unitary matrices"};
  app.require_subcommand(1);
  Options opt;

  auto* exact = app.add_subcommand("exact", "exact finite-n log MGF");
  add_params(exact, opt);
  exact->add_flag("--per-term", opt.per_term, "include the j-th summands");

  auto* asym = app.add_subcommand("asymptotic", "C1, C2 and the predicted log MGF");
  add_params(asym, opt);

  auto* cum = app.add_subcommand("cumulants", "b1, c1, b11, c11 and the limiting correlation");
  add_params(cum, opt, false);

  auto* conv = app.add_subcommand("convergence", "error of C1 n + C2 over a geometric n grid");
  add_params(conv, opt);
  conv->add_option("--n-min", opt.n_min, "first n (>= 50)");
  conv->add_option("--n-max", opt.n_max, "largest n");
  conv->add_option("--factor", opt.factor, "grid ratio (>= sqrt 2)");

  auto* smp = app.add_subcommand("sample", "Monte Carlo moments of the counts");
  add_params(smp, opt);
  smp->add_option("--seed", opt.seed, "RNG seed");
  smp->add_option("--samples", opt.samples, "number of matrices");
  smp->add_option("--source", opt.source, "haar or kostlan");
  smp->add_option("--points-dir", opt.points_dir, "write eigenvalue clouds as CSV here");
  smp->add_option("--points", opt.points, "number of clouds written to --points-dir");

  auto* clt = app.add_subcommand("clt", "normalized counts against the Gaussian limit");
  add_params(clt, opt);
  clt->add_option("--seed", opt.seed, "RNG seed");
  clt->add_option("--samples", opt.samples, "number of matrices");
  clt->add_option("--source", opt.source, "haar or kostlan");

  auto* fig = app.add_subcommand("figures", "figure data files");
  fig->add_option("--config", opt.config, "JSON config");
  fig->add_option("--which", opt.which, "fig1, fig3, convergence or all");
  fig->add_option("--out", opt.out, "output directory (default ./figures)");
  fig->add_option("--seed", opt.seed, "RNG seed");
  fig->add_option("--threads", opt.threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  Runner run(app, opt);
  try {
    if (*exact) run.exact();
    else if (*asym) run.asymptotic();
    else if (*cum) run.cumulants();
    else if (*conv) run.convergence();
    else if (*smp) run.sample();
    else if (*clt) run.clt();
    else if (*fig) run.figures();
  } catch (const tue::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
