#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "diffrakt/error.hpp"
#include "diffrakt/samplers.hpp"
#include "internal/linalg.hpp"
#include "internal/sampling.hpp"

namespace diffrakt {

namespace {

constexpr int kBatch = 64;
// Envelope: kEnvelopeFactor times the largest neighbouring residual;
// residuals are refreshed once the envelope mass exceeds kRefreshRatio times
// the remaining expected count.
constexpr double kEnvelopeFactor = 1.5;
constexpr double kRefreshRatio = 2.5;
constexpr double kEigenTolerance = 1e-6;
constexpr double kNegligibleEigenvalue = 1e-10;

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  int n = 2;
  double step() const { return (hi - lo) / (n - 1); }
  double node(int j) const { return lo + step() * j; }
  double weight(int j) const { return (j == 0 || j == n - 1) ? 0.5 * step() : step(); }
  double cell_lo(int j) const { return std::max(lo, node(j) - 0.5 * step()); }
  double cell_hi(int j) const { return std::min(hi, node(j) + 0.5 * step()); }
};

}  // namespace

struct SpectralDppPlan::Impl {
  KernelSpec spec;
  RadialProfile profile;
  Window window = Window::interval(0.0, 1.0);
  int dimension = 1;
  Axis ax, ay;
  std::vector<Point> nodes;
  Eigen::VectorXd weights;
  Eigen::VectorXd lambda;
  Eigen::MatrixXd vectors;  // columns: eigenvectors of W^{1/2} K W^{1/2}
  double residue = 0.0;

  int node_count() const { return static_cast<int>(nodes.size()); }

  int node_index(int i, int j) const { return dimension == 1 ? i : i * ay.n + j; }

  double kernel(const Point& x, const Point& y) const { return profile.eval(norm(x - y)); }

  Point propose_in_cell(int idx, Rng& rng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (dimension == 1) return Point(ax.cell_lo(idx) + (ax.cell_hi(idx) - ax.cell_lo(idx)) * u(rng));
    const int i = idx / ay.n;
    const int j = idx % ay.n;
    const double x = ax.cell_lo(i) + (ax.cell_hi(i) - ax.cell_lo(i)) * u(rng);
    return Point(x, ay.cell_lo(j) + (ay.cell_hi(j) - ay.cell_lo(j)) * u(rng));
  }

  // Upper bound of the conditional density on each cell.
  Eigen::VectorXd envelope(const Eigen::VectorXd& r) const {
    Eigen::VectorXd b(r.size());
    if (dimension == 1) {
      for (int i = 0; i < ax.n; ++i) {
        double m = r[i];
        if (i > 0) m = std::max(m, r[i - 1]);
        if (i + 1 < ax.n) m = std::max(m, r[i + 1]);
        b[i] = kEnvelopeFactor * m;
      }
    } else {
      for (int i = 0; i < ax.n; ++i)
        for (int j = 0; j < ay.n; ++j) {
          double m = 0.0;
          for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
              const int ii = i + di;
              const int jj = j + dj;
              if (ii >= 0 && ii < ax.n && jj >= 0 && jj < ay.n) m = std::max(m, r[node_index(ii, jj)]);
            }
          b[node_index(i, j)] = kEnvelopeFactor * m;
        }
    }
    const double mean = r.dot(weights) / window.volume();
    b.array() += 0.01 * std::max(mean, 0.0);
    return b;
  }
};

SpectralDppPlan::SpectralDppPlan(const KernelSpec& spec, const Window& window, int grid_size)
    : impl_(std::make_unique<Impl>()) {
  spec.check();
  if (!spec.translation_invariant() || !spec.real_valued())
    throw InvalidArgument("spectral DPP sampler needs a real translation-invariant kernel");
  if (spec.dimension != 1 && spec.dimension != 2)
    throw InvalidArgument("spectral DPP sampler supports d = 1 and d = 2 only");
  const DppValidation v = validate_dpp(spec);
  if (!v.pass) throw InvalidArgument("kernel " + spec.describe() + " is not a valid DPP kernel: " + v.reason);
  if (window.dimension() != spec.dimension || window.is_disk())
    throw InvalidArgument("spectral DPP sampler needs an interval (d=1) or rectangle (d=2) window");
  if (grid_size < 2) throw InvalidArgument("spectral DPP sampler: grid_size must be at least 2");
  const double total = std::pow(static_cast<double>(grid_size), spec.dimension);
  if (total > 4096.0) throw InvalidArgument("spectral DPP sampler: grid_size^d must not exceed 4096");

  Impl& m = *impl_;
  m.spec = spec;
  m.profile = kernel_profile(spec);
  m.window = window;
  m.dimension = spec.dimension;
  if (const auto* iv = std::get_if<Interval>(&window.shape())) {
    m.ax = {iv->a, iv->b, grid_size};
    for (int i = 0; i < grid_size; ++i) m.nodes.emplace_back(m.ax.node(i));
  } else {
    const auto& r = std::get<Rect>(window.shape());
    m.ax = {r.ax, r.bx, grid_size};
    m.ay = {r.ay, r.by, grid_size};
    for (int i = 0; i < grid_size; ++i)
      for (int j = 0; j < grid_size; ++j) m.nodes.emplace_back(m.ax.node(i), m.ay.node(j));
  }
  const int n = m.node_count();
  m.weights.resize(n);
  for (int k = 0; k < n; ++k)
    m.weights[k] = m.dimension == 1 ? m.ax.weight(k) : m.ax.weight(k / m.ay.n) * m.ay.weight(k % m.ay.n);

  Eigen::MatrixXd a(n, n);
  const Eigen::VectorXd sw = m.weights.cwiseSqrt();
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) a(i, j) = sw[i] * m.kernel(m.nodes[i], m.nodes[j]) * sw[j];
  auto eig = detail::symmetric_eigen(std::move(a));
  for (int k = 0; k < n; ++k) {
    const double l = eig.values[k];
    if (l < -kEigenTolerance || l > 1.0 + kEigenTolerance)
      throw DiscretizationError("spectral DPP sampler: discrete eigenvalue " + std::to_string(l) +
                                " outside [0, 1]; refine the grid");
    const double c = std::clamp(l, 0.0, 1.0);
    m.residue = std::max(m.residue, std::abs(c - l));
    eig.values[k] = c;
  }
  m.lambda = std::move(eig.values);
  m.vectors = std::move(eig.vectors);
}

SpectralDppPlan::~SpectralDppPlan() = default;
SpectralDppPlan::SpectralDppPlan(SpectralDppPlan&&) noexcept = default;
SpectralDppPlan& SpectralDppPlan::operator=(SpectralDppPlan&&) noexcept = default;

double SpectralDppPlan::clamp_residue() const { return impl_->residue; }
double SpectralDppPlan::expected_count() const { return impl_->lambda.sum(); }
int SpectralDppPlan::node_count() const { return impl_->node_count(); }

PointConfiguration SpectralDppPlan::sample(std::uint64_t seed) const {
  const Impl& m = *impl_;
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto config = detail::empty_configuration(m.window, seed, "det:" + m.spec.describe());

  std::vector<int> modes;
  for (int k = 0; k < m.lambda.size(); ++k) {
    const double l = m.lambda[k];
    if (u(rng) < l && l > kNegligibleEigenvalue) modes.push_back(k);
  }
  const int n = static_cast<int>(modes.size());
  if (n == 0) return config;
  const int nodes = m.node_count();

  // Phi(j, k) = u_jk / sqrt(w_j) are eigenfunction values at the nodes;
  // A = Lambda^{-1} Phi^T W extends them by Nystrom: v(x) = A k(x).
  Eigen::MatrixXd phi(nodes, n);
  Eigen::MatrixXd ext(n, nodes);
  for (int c = 0; c < n; ++c) {
    const int k = modes[static_cast<std::size_t>(c)];
    for (int j = 0; j < nodes; ++j) {
      const double uj = m.vectors(j, k);
      phi(j, c) = uj / std::sqrt(m.weights[j]);
      ext(c, j) = std::sqrt(m.weights[j]) * uj / m.lambda[k];
    }
  }

  Eigen::MatrixXd basis(n, n);  // accepted orthonormal directions, first `placed` columns
  int placed = 0;
  int applied = 0;  // columns already folded into the residuals
  Eigen::VectorXd residual = phi.rowwise().squaredNorm();
  Eigen::VectorXd bound;
  std::vector<double> cumulative(static_cast<std::size_t>(nodes));
  double envelope_mass = 0.0;

  auto refresh = [&] {
    if (placed > applied) {
      Eigen::MatrixXd proj;
      detail::multiply(phi, basis.middleCols(applied, placed - applied), proj);
      residual -= proj.rowwise().squaredNorm();
      applied = placed;
    }
    residual = residual.cwiseMax(0.0);
    bound = m.envelope(residual);
    double acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
      acc += m.weights[j] * bound[j];
      cumulative[static_cast<std::size_t>(j)] = acc;
    }
    envelope_mass = acc;
  };
  refresh();

  Eigen::MatrixXd kmat(nodes, kBatch);
  Eigen::MatrixXd values;
  std::vector<Point> proposals(kBatch);
  std::vector<int> cells(kBatch);
  while (placed < n) {
    if (envelope_mass > kRefreshRatio * (n - placed)) refresh();
    for (int b = 0; b < kBatch; ++b) {
      const double target = u(rng) * envelope_mass;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
      const int cell = std::min(nodes - 1, static_cast<int>(it - cumulative.begin()));
      cells[static_cast<std::size_t>(b)] = cell;
      proposals[static_cast<std::size_t>(b)] = m.propose_in_cell(cell, rng);
      for (int j = 0; j < nodes; ++j) kmat(j, b) = m.kernel(proposals[static_cast<std::size_t>(b)], m.nodes[static_cast<std::size_t>(j)]);
    }
    detail::multiply(ext, kmat, values);
    for (int b = 0; b < kBatch && placed < n; ++b) {
      Eigen::VectorXd v = values.col(b);
      double f = v.squaredNorm();
      if (placed > 0) f -= (basis.leftCols(placed).transpose() * v).squaredNorm();
      f = std::max(f, 0.0);
      if (u(rng) * bound[cells[static_cast<std::size_t>(b)]] >= f) continue;
      for (int pass = 0; pass < 2 && placed > 0; ++pass)
        v -= basis.leftCols(placed) * (basis.leftCols(placed).transpose() * v);
      const double len = v.norm();
      if (!(len > 0.0)) continue;
      basis.col(placed) = v / len;
      ++placed;
      config.points.push_back(proposals[static_cast<std::size_t>(b)]);
    }
  }
  if (m.dimension == 1)
    std::sort(config.points.begin(), config.points.end(), [](const Point& a, const Point& b) { return a[0] < b[0]; });
  return config;
}

PointConfiguration sample_dpp_spectral(const KernelSpec& spec, const Window& window, int grid_size,
                                       std::uint64_t seed) {
  return SpectralDppPlan(spec, window, grid_size).sample(seed);
}

}  // namespace diffrakt
