#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include "diffrakt/error.hpp"
#include "diffrakt/numerics.hpp"
#include "diffrakt/samplers.hpp"
#include "internal/sampling.hpp"

namespace diffrakt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMassThreshold = 1.0 - 1e-6;

using cd = std::complex<double>;

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftBuffer {
 public:
  FftBuffer(int n0, int n1) : size_(static_cast<std::size_t>(n0) * static_cast<std::size_t>(n1)) {
    data_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size_));
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = n1 == 1 ? fftw_plan_dft_1d(n0, data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE)
                    : fftw_plan_dft_2d(n0, n1, data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftBuffer() {
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(data_);
  }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;

  cd* data() { return reinterpret_cast<cd*>(data_); }
  void execute() { fftw_execute(plan_); }

 private:
  std::size_t size_;
  fftw_complex* data_;
  fftw_plan plan_;
};

// Signed frequency index of FFT slot j out of m.
int frequency_index(int j, int m) { return j < m / 2 ? j : j - m; }

double captured_spectral_mass(const KernelSpec& spec, double t_max) {
  QuadratureSpec q;
  q.abs_tol = 1e-10;
  q.rel_tol = 1e-12;
  q.max_subdivisions = 200000;
  if (spec.dimension == 1)
    return integrate([&](double t) { return spectral_density(spec, Point(t)); }, -t_max, t_max, q).value;
  return integrate([&](double t) { return 2.0 * kPi * t * spectral_density(spec, t); }, 0.0, t_max, q).value;
}

}  // namespace

PointConfiguration sample_permanental(const KernelSpec& spec, const Window& window, int grid_size,
                                      std::uint64_t seed, PermanentalDiagnostics* diagnostics) {
  spec.check();
  if (!spec.translation_invariant())
    throw InvalidArgument("permanental sampler needs a translation-invariant kernel");
  if (window.is_disk() || window.dimension() != spec.dimension)
    throw InvalidArgument("permanental sampler needs an interval (d=1) or rectangle (d=2) window");
  if (grid_size < 2 || grid_size > (spec.dimension == 1 ? (1 << 22) : 2048))
    throw InvalidArgument("permanental sampler: grid_size out of range");

  const int d = spec.dimension;
  double lo[2] = {0.0, 0.0};
  double len[2] = {1.0, 1.0};
  if (const auto* iv = std::get_if<Interval>(&window.shape())) {
    lo[0] = iv->a;
    len[0] = iv->b - iv->a;
  } else {
    const auto& r = std::get<Rect>(window.shape());
    lo[0] = r.ax;
    len[0] = r.bx - r.ax;
    lo[1] = r.ay;
    len[1] = r.by - r.ay;
  }
  // Periodic synthesis on twice the window so that the wrap-around does not
  // correlate opposite edges.
  const int m = 2 * grid_size;
  const int m1 = d == 1 ? 1 : m;
  double period[2] = {2.0 * len[0], 2.0 * len[1]};
  double cell[2] = {len[0] / grid_size, len[1] / grid_size};
  const double dt = 1.0 / period[0] * (d == 2 ? 1.0 / period[1] : 1.0);

  PermanentalDiagnostics diag;
  const double t_box = 0.5 * m / std::max(period[0], d == 2 ? period[1] : 0.0);
  diag.captured_mass = captured_spectral_mass(spec, t_box);
  if (diag.captured_mass < kMassThreshold)
    throw TruncationError("permanental sampler: frequency grid captures only " +
                          std::to_string(diag.captured_mass) +
                          " of the spectral mass; increase grid_size");

  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  FftBuffer fft(m, m1);
  cd* coeff = fft.data();
  double variance = 0.0;
  for (int i = 0; i < m; ++i) {
    const double ti = frequency_index(i, m) / period[0];
    for (int j = 0; j < m1; ++j) {
      const double tj = d == 2 ? frequency_index(j, m) / period[1] : 0.0;
      const double phi = spectral_density(spec, Point(ti, tj));
      variance += phi * dt;
      const double re = normal(rng);
      const cd xi(re, normal(rng));
      // Evaluate at cell centres: shift by lo + cell/2.
      const double phase = 2.0 * kPi * (ti * (lo[0] + 0.5 * cell[0]) + tj * (lo[1] + 0.5 * cell[1]));
      coeff[static_cast<std::size_t>(i) * m1 + j] = std::sqrt(phi * dt) * xi * std::polar(1.0, phase);
    }
  }
  diag.field_variance = variance;
  fft.execute();

  auto config = detail::empty_configuration(window, seed, "perm:" + spec.describe());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double cell_volume = d == 1 ? cell[0] : cell[0] * cell[1];
  const int n1 = d == 1 ? 1 : grid_size;
  for (int i = 0; i < grid_size; ++i)
    for (int j = 0; j < n1; ++j) {
      const double intensity = std::norm(coeff[static_cast<std::size_t>(i) * m1 + j]);
      const double mean = intensity * cell_volume;
      const long count = mean > 0.0 ? std::poisson_distribution<long>(mean)(rng) : 0;
      for (long c = 0; c < count; ++c) {
        const double x = lo[0] + (i + u(rng)) * cell[0];
        if (d == 1)
          config.points.emplace_back(x);
        else
          config.points.emplace_back(x, lo[1] + (j + u(rng)) * cell[1]);
      }
    }
  if (diagnostics != nullptr) *diagnostics = diag;
  return config;
}

}  // namespace diffrakt
