#include <boost/math/special_functions/gamma.hpp>

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
constexpr double kBulkFraction = 0.7;
constexpr int kMaxMatrixSize = 4096;

using cd = std::complex<double>;

std::vector<Point> matrix_model_points(int n, double radius, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      const double re = normal(rng);
      h(i, j) = cd(re, normal(rng));
    }
  // |subdiagonal|^2 ~ Gamma(n - k, 1): the Householder reduction of a
  // Ginibre matrix.
  for (int k = 0; k + 1 < n; ++k) {
    std::gamma_distribution<double> g(static_cast<double>(n - k - 1), 1.0);
    h(k + 1, k) = std::sqrt(g(rng));
  }
  const auto eig = detail::hessenberg_eigenvalues(std::move(h));
  std::vector<Point> out;
  const double scale = 1.0 / std::sqrt(kPi);
  for (const cd& z : eig) {
    const cd w = z * scale;
    if (std::norm(w) <= radius * radius) out.emplace_back(w.real(), w.imag());
  }
  return out;
}

// psi_k(z) = sqrt(pi^k / k!) z^k e^{-pi |z|^2 / 2} for k <= k_max.
void ginibre_basis(cd z, int k_max, std::vector<cd>& out) {
  out.resize(static_cast<std::size_t>(k_max + 1));
  cd value = std::exp(-0.5 * kPi * std::norm(z));
  for (int k = 0; k <= k_max; ++k) {
    out[static_cast<std::size_t>(k)] = value;
    value *= z * std::sqrt(kPi / (k + 1));
  }
}

// The size-n Ginibre kernel restricted to the disk has eigenfunctions psi_k
// with eigenvalues P(k + 1, pi R^2); sample modes, then run the sequential
// projection sampler with uniform proposals on the disk.
std::vector<Point> disk_projection_points(int n, double radius, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double area_param = kPi * radius * radius;
  std::vector<int> modes;
  std::vector<double> inv_sqrt_lambda;
  for (int k = 0; k < n; ++k) {
    const double l = boost::math::gamma_p(k + 1.0, area_param);
    if (u(rng) < l && l > 1e-12) {
      modes.push_back(k);
      inv_sqrt_lambda.push_back(1.0 / std::sqrt(l));
    }
    if (l < 1e-18) break;
  }
  const int m = static_cast<int>(modes.size());
  std::vector<Point> out;
  if (m == 0) return out;
  const int k_max = modes.back();

  std::vector<cd> psi;
  auto features = [&](cd z, Eigen::VectorXcd& v) {
    ginibre_basis(z, k_max, psi);
    for (int c = 0; c < m; ++c)
      v[c] = psi[static_cast<std::size_t>(modes[static_cast<std::size_t>(c)])] * inv_sqrt_lambda[static_cast<std::size_t>(c)];
  };

  // ||v(z)||^2 depends on |z| only.
  Eigen::VectorXcd v(m);
  double bound = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    features(cd(radius * i / 4000.0, 0.0), v);
    bound = std::max(bound, v.squaredNorm());
  }
  bound *= 1.02;

  Eigen::MatrixXcd basis(m, m);
  int placed = 0;
  while (placed < m) {
    const double rad = radius * std::sqrt(u(rng));
    const double theta = 2.0 * kPi * u(rng);
    const cd z = std::polar(rad, theta);
    features(z, v);
    double f = v.squaredNorm();
    if (placed > 0) f -= (basis.leftCols(placed).adjoint() * v).squaredNorm();
    if (u(rng) * bound >= f) continue;
    for (int pass = 0; pass < 2 && placed > 0; ++pass)
      v -= basis.leftCols(placed) * (basis.leftCols(placed).adjoint() * v);
    const double len = v.norm();
    if (!(len > 0.0)) continue;
    basis.col(placed) = v / len;
    ++placed;
    out.emplace_back(z.real(), z.imag());
  }
  return out;
}

}  // namespace

int ginibre_matrix_size(double radius) {
  if (!(radius >= 0.0)) throw InvalidArgument("ginibre: radius must be non-negative");
  const double r = radius / kBulkFraction;
  return std::max(1, static_cast<int>(std::ceil(kPi * r * r)));
}

PointConfiguration sample_ginibre(const Window& window, std::uint64_t seed, const GinibreOptions& options) {
  const auto* disk = std::get_if<Disk>(&window.shape());
  if (disk == nullptr || disk->center[0] != 0.0 || disk->center[1] != 0.0)
    throw InvalidArgument("ginibre: window must be a disk centred at the origin");
  auto config = detail::empty_configuration(window, seed, "ginibre");
  const double radius = disk->radius;
  if (radius == 0.0) return config;
  const int n = options.matrix_size > 0 ? options.matrix_size : ginibre_matrix_size(radius);
  if (n > kMaxMatrixSize)
    throw InvalidArgument("ginibre: radius " + std::to_string(radius) + " needs N = " +
                          std::to_string(n) + " above the cap 4096");
  if (radius > kBulkFraction * std::sqrt(n / kPi) * (1.0 + 1e-12))
    throw InvalidArgument("ginibre: radius exceeds 0.7 sqrt(N / pi) for N = " + std::to_string(n));
  Rng rng = make_rng(seed);
  config.points = options.engine == GinibreEngine::kMatrixModel ? matrix_model_points(n, radius, rng)
                                                                : disk_projection_points(n, radius, rng);
  return config;
}

}  // namespace diffrakt
