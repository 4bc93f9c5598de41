#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "diffrakt/kernels.hpp"
#include "diffrakt/point.hpp"
#include "diffrakt/window.hpp"

namespace diffrakt {

using Rng = std::mt19937_64;

// Seed of realization `index` in a run with base seed `base` (splitmix64 of
// the pair), so realizations are independent reproducible streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);
Rng make_rng(std::uint64_t seed);

struct PointConfiguration {
  int dimension = 1;
  Window window = Window::interval(0.0, 1.0);
  std::vector<Point> points;
  std::uint64_t seed = 0;
  std::string process_label;

  std::size_t size() const { return points.size(); }
};

// No two points closer than tol.
bool is_simple(const PointConfiguration& config, double tol = 1e-12);

// Homogeneous Poisson process. Requires intensity * volume < 1e8.
PointConfiguration sample_poisson(const Window& window, double intensity, std::uint64_t seed);

// Spectral sampler for translation-invariant real kernels on intervals and
// rectangles. The Nyström eigendecomposition is done once per plan and reused
// across seeds.
class SpectralDppPlan {
 public:
  // Throws InvalidArgument for unsupported kernels/windows and
  // DiscretizationError when an eigenvalue leaves [-1e-6, 1 + 1e-6].
  SpectralDppPlan(const KernelSpec& spec, const Window& window, int grid_size);
  ~SpectralDppPlan();
  SpectralDppPlan(SpectralDppPlan&&) noexcept;
  SpectralDppPlan& operator=(SpectralDppPlan&&) noexcept;

  PointConfiguration sample(std::uint64_t seed) const;

  // Largest distance an eigenvalue was moved by clamping to [0, 1].
  double clamp_residue() const;
  // Sum of the discrete eigenvalues, the expected number of points.
  double expected_count() const;
  int node_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

PointConfiguration sample_dpp_spectral(const KernelSpec& spec, const Window& window,
                                       int grid_size, std::uint64_t seed);

enum class GinibreEngine {
  // Eigenvalues of a random upper Hessenberg matrix with the Ginibre spectrum.
  kMatrixModel,
  // Exact sampler of the size-N Ginibre kernel restricted to the disk.
  kDiskProjection,
};

struct GinibreOptions {
  GinibreEngine engine = GinibreEngine::kMatrixModel;
  // Matrix size; 0 picks ceil(pi (R / 0.7)^2).
  int matrix_size = 0;
};

// Requires a disk centred at the origin with R <= 0.7 sqrt(N / pi) and N <= 4096.
PointConfiguration sample_ginibre(const Window& window, std::uint64_t seed,
                                  const GinibreOptions& options = {});
int ginibre_matrix_size(double radius);

// Stationary renewal process with the increment law of the exponential-kernel
// DPP with parameter alpha in (0, 1/2].
PointConfiguration sample_renewal_dpp(double alpha, const Window& window, std::uint64_t seed);
double sample_renewal_increment(double alpha, Rng& rng);
double renewal_increment_cdf(double alpha, double x);

struct PermanentalDiagnostics {
  // Fraction of the spectral density's mass on the frequency grid.
  double captured_mass = 0.0;
  // Field variance from Parseval, sum_j phi(t_j) dt.
  double field_variance = 0.0;
};

// Cox process directed by |X|^2 for the complex Gaussian field X with
// covariance K, synthesised by FFT on a grid of `grid_size` cells per axis.
PointConfiguration sample_permanental(const KernelSpec& spec, const Window& window,
                                      int grid_size, std::uint64_t seed,
                                      PermanentalDiagnostics* diagnostics = nullptr);

PointConfiguration sample_cox_cosine(const Window& window, std::uint64_t seed);

struct GafZeroOptions {
  // Diagnostic mode: forces a_0 = 0 so that the origin is a zero.
  bool force_zero_constant = false;
};

// Zeros of the degree-N truncation of the planar GAF (L = pi) inside a disk.
// Requires pi R^2 <= N / 2 and N <= 512.
PointConfiguration sample_gaf_zeros(const Window& window, int truncation_n, std::uint64_t seed,
                                    const GafZeroOptions& options = {});

}  // namespace diffrakt
