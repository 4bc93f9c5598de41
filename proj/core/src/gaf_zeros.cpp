#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "diffrakt/error.hpp"
#include "diffrakt/samplers.hpp"
#include "internal/linalg.hpp"
#include "internal/sampling.hpp"

namespace diffrakt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxDegree = 512;

using cd = std::complex<double>;

std::pair<cd, cd> evaluate_with_derivative(const std::vector<cd>& c, cd w) {
  cd p = c.back();
  cd dp = 0.0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    dp = dp * w + p;
    p = p * w + c[i];
  }
  return {p, dp};
}

}  // namespace

PointConfiguration sample_gaf_zeros(const Window& window, int truncation_n, std::uint64_t seed,
                                    const GafZeroOptions& options) {
  const auto* disk = std::get_if<Disk>(&window.shape());
  if (disk == nullptr) throw InvalidArgument("gaf zeros: window must be a disk");
  if (truncation_n < 1 || truncation_n > kMaxDegree)
    throw InvalidArgument("gaf zeros: truncation N must lie in [1, 512]");
  const double radius = disk->radius;
  const double expected = kPi * radius * radius;
  if (expected > 0.5 * truncation_n)
    throw InvalidArgument("gaf zeros: truncation N = " + std::to_string(truncation_n) +
                          " too small for radius " + std::to_string(radius) +
                          " (need pi R^2 <= N / 2)");
  auto config = detail::empty_configuration(window, seed, "gaf(N=" + std::to_string(truncation_n) + ")");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

  // Coefficients of f(rho w) in w, computed in log space and normalised by
  // the largest modulus.
  const double rho = radius + 1.0;
  const int n = truncation_n;
  std::vector<cd> a(static_cast<std::size_t>(n + 1));
  for (auto& x : a) {
    const double re = normal(rng);
    x = cd(re, normal(rng));
  }
  if (options.force_zero_constant) a[0] = 0.0;
  std::vector<double> log_scale(static_cast<std::size_t>(n + 1));
  double log_max = -1e300;
  for (int k = 0; k <= n; ++k) {
    log_scale[static_cast<std::size_t>(k)] =
        0.5 * (k * std::log(kPi) - std::lgamma(k + 1.0)) + k * std::log(rho);
    log_max = std::max(log_max, log_scale[static_cast<std::size_t>(k)]);
  }
  std::vector<cd> b(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k)
    b[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] * std::exp(log_scale[static_cast<std::size_t>(k)] - log_max);

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -b[static_cast<std::size_t>(i)] / b[static_cast<std::size_t>(n)];
  const auto roots = detail::general_eigenvalues(std::move(companion));

  const double w_max = radius / rho;
  for (cd w : roots) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
    if (std::abs(w) > w_max + 0.05) continue;
    for (int step = 0; step < 5; ++step) {
      const auto [p, dp] = evaluate_with_derivative(b, w);
      if (dp == cd(0.0)) break;
      const cd delta = p / dp;
      w -= delta;
      if (std::abs(delta) <= 1e-15 * std::max(1.0, std::abs(w))) break;
    }
    if (std::abs(w) <= w_max) {
      const cd z = rho * w;
      config.points.emplace_back(disk->center[0] + z.real(), disk->center[1] + z.imag());
    }
  }
  const auto kept = static_cast<double>(config.points.size());
  if (kept > 3.0 * expected && kept > 10.0)
    throw TruncationError("gaf zeros: kept-root density exceeds three times the expected density");
  return config;
}

}  // namespace diffrakt
