#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "diffrakt/analytic.hpp"
#include "diffrakt/csv.hpp"
#include "diffrakt/error.hpp"
#include "diffrakt/estimators.hpp"
#include "diffrakt/verify.hpp"

#ifndef DIFFRAKT_VERSION
#define DIFFRAKT_VERSION "0.1.0"
#endif

namespace diffrakt::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

template <class Task>
void parallel_for(std::size_t n, int threads, Task task) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) task(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

fs::path prepare_out(const RunConfig& config) {
  fs::path dir(config.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw InvalidArgument("cannot create output directory '" + config.out + "'");
  return dir;
}

std::ofstream open_file(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write '" + path.string() + "'");
  return os;
}

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& config,
                    Clock::time_point start, nlohmann::ordered_json results) {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["version"] = DIFFRAKT_VERSION;
  m["config"] = to_json(config);
  m["results"] = std::move(results);
  m["wall_time_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  std::ofstream os = open_file(dir / "manifest.json");
  os << m.dump(2) << '\n';
}

int default_spectral_grid(const Window& window) {
  if (window.dimension() == 2) return 64;
  return std::clamp(static_cast<int>(std::ceil(4.0 * window.volume())), 64, 4096);
}

int default_permanental_grid(const Window& window) { return window.dimension() == 2 ? 512 : 8192; }

int default_gaf_degree(const Window& window) {
  const double r = window.inradius();
  return std::clamp(static_cast<int>(std::ceil(2.0 * M_PI * r * r)) + 32, 64, 512);
}

std::string realization_name(int index, int total) {
  const int width = std::max(4, static_cast<int>(std::to_string(std::max(total - 1, 0)).size()));
  std::ostringstream os;
  os << "points_" << std::setw(width) << std::setfill('0') << index << ".csv";
  return os.str();
}

nlohmann::ordered_json comparison_json(const Comparison& c) {
  nlohmann::ordered_json j;
  j["rms"] = c.rms;
  j["sup_dev"] = c.sup_dev;
  j["coverage"] = c.coverage;
  j["bins"] = c.bins;
  return j;
}

}  // namespace

int worker_count() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("DIFFRAKT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1)
      throw InvalidArgument("DIFFRAKT_THREADS must be a positive integer");
    n = std::min<long>(n, cap);
  }
  return n;
}

std::vector<PointConfiguration> sample_realizations(const RunConfig& config, int threads) {
  config.check();
  const ProcessSpec spec = process_spec(config);
  spec.check();
  const Window window = resolve_window(config);
  const auto n = static_cast<std::size_t>(config.realizations);
  std::vector<PointConfiguration> out(n);
  auto seed_of = [&](std::size_t i) { return derive_seed(config.seed, i); };

  switch (spec.kind) {
    case ProcessKind::kPoisson:
      parallel_for(n, threads, [&](std::size_t i) { out[i] = sample_poisson(window, 1.0, seed_of(i)); });
      break;
    case ProcessKind::kCoxCosine:
      parallel_for(n, threads, [&](std::size_t i) { out[i] = sample_cox_cosine(window, seed_of(i)); });
      break;
    case ProcessKind::kGaf: {
      const int degree = config.N > 0 ? config.N : default_gaf_degree(window);
      parallel_for(n, threads, [&](std::size_t i) { out[i] = sample_gaf_zeros(window, degree, seed_of(i)); });
      break;
    }
    case ProcessKind::kPermanental: {
      const int grid = config.grid > 0 ? config.grid : default_permanental_grid(window);
      parallel_for(n, threads,
                   [&](std::size_t i) { out[i] = sample_permanental(spec.kernel, window, grid, seed_of(i)); });
      break;
    }
    case ProcessKind::kDeterminantal: {
      const KernelSpec& k = spec.kernel;
      if (k.family == KernelFamily::kGinibre) {
        if (k.thinning_p != 1.0) throw InvalidArgument("ginibre sampling supports p = 1 only");
        GinibreOptions opts;
        opts.engine = config.engine == "matrix" ? GinibreEngine::kMatrixModel : GinibreEngine::kDiskProjection;
        opts.matrix_size = config.N;
        parallel_for(n, threads, [&](std::size_t i) { out[i] = sample_ginibre(window, seed_of(i), opts); });
      } else if (k.family == KernelFamily::kExponential && window.is_interval() &&
                 k.alpha * k.thinning_p <= 0.5) {
        // Thinning the exponential kernel by p gives the exponential kernel with alpha p.
        const double alpha = k.alpha * k.thinning_p;
        parallel_for(n, threads, [&](std::size_t i) {
          out[i] = sample_renewal_dpp(alpha, window, seed_of(i));
          out[i].process_label = spec.label();
        });
      } else {
        const int grid = config.grid > 0 ? config.grid : default_spectral_grid(window);
        const SpectralDppPlan plan(k, window, grid);
        parallel_for(n, threads, [&](std::size_t i) { out[i] = plan.sample(seed_of(i)); });
      }
      break;
    }
  }
  return out;
}

int cmd_analytic(const RunConfig& config) {
  const auto start = Clock::now();
  config.check();
  const ProcessSpec spec = process_spec(config);
  const DiffractionPair pair = diffraction_pair(spec);
  const std::vector<double> grid = parse_grid(config.tgrid).values();
  const fs::path dir = prepare_out(config);
  {
    std::ofstream os = open_file(dir / "gamma_density.csv");
    write_density_csv(os, pair.gamma, grid);
  }
  {
    std::ofstream os = open_file(dir / "diffraction_density.csv");
    write_density_csv(os, pair.gamma_hat, grid);
  }
  {
    std::ofstream os = open_file(dir / "atoms.csv");
    write_atoms_csv(os, pair.gamma_hat);
  }
  nlohmann::ordered_json results;
  results["process"] = spec.label();
  results["files"] = {"gamma_density.csv", "diffraction_density.csv", "atoms.csv"};
  write_manifest(dir, "analytic", config, start, std::move(results));
  return kOk;
}

int cmd_sample(const RunConfig& config) {
  const auto start = Clock::now();
  const int threads = worker_count();
  const std::vector<PointConfiguration> samples = sample_realizations(config, threads);
  const fs::path dir = prepare_out(config);
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::ofstream os = open_file(dir / realization_name(static_cast<int>(i), config.realizations));
    write_points_csv(os, samples[i]);
    total += static_cast<double>(samples[i].size());
  }
  nlohmann::ordered_json results;
  results["process"] = samples.front().process_label;
  results["window"] = samples.front().window.describe();
  results["files"] = samples.size();
  results["mean_count"] = total / static_cast<double>(samples.size());
  write_manifest(dir, "sample", config, start, std::move(results));
  return kOk;
}

int cmd_estimate(const RunConfig& config) {
  const auto start = Clock::now();
  const int threads = worker_count();
  const std::vector<PointConfiguration> samples = sample_realizations(config, threads);
  const ProcessSpec spec = process_spec(config);
  const DiffractionPair pair = diffraction_pair(spec);
  const Window& window = samples.front().window;
  const fs::path dir = prepare_out(config);
  EstimatorOptions opts;
  opts.threads = threads;

  const double r_max = config.rmax > 0.0 ? config.rmax : std::min(0.5 * window.inradius(), 3.0);
  const BinnedCurve g = estimate_pair_correlation(samples, r_max, config.bins, opts);
  {
    std::ofstream os = open_file(dir / "pair_correlation.csv");
    write_curve_csv(os, g);
  }

  const Grid tg = parse_grid(config.tgrid);
  const double width = tg.count > 1 ? (tg.stop - tg.start) / (tg.count - 1) : 0.05;
  const double exclusion = 2.0 / window.diameter();
  std::vector<double> centres;
  for (double c : tg.values())
    if (c - 0.5 * width >= exclusion) centres.push_back(c);
  if (centres.empty()) throw InvalidArgument("tgrid: every bin lies within 2 / diam(W) of the origin");
  const BinnedCurve s = estimate_scattering_binned(samples, centres, width, opts);
  {
    std::ofstream os = open_file(dir / "scattering.csv");
    write_curve_csv(os, s);
  }

  nlohmann::ordered_json results;
  results["process"] = samples.front().process_label;
  results["window"] = window.describe();
  results["rmax"] = r_max;
  results["scattering_bin_width"] = width;
  results["pair_correlation"] = comparison_json(compare(g, pair.gamma));
  results["scattering"] = comparison_json(compare(s, pair.gamma_hat));
  write_manifest(dir, "estimate", config, start, std::move(results));
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& report) {
  VerifyOptions opts;
  opts.gaf_h_mutation = config.mutate;
  const auto results = run_invariant_suite(opts);
  print_report(report, results);
  return all_passed(results) ? kOk : kVerifyFailure;
}

}  // namespace diffrakt::cli
