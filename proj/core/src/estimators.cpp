#include "diffrakt/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <thread>

#include "diffrakt/error.hpp"

namespace diffrakt {

namespace {

constexpr double kPi = std::numbers::pi;

// Runs task(i) for i in [0, n) on up to `threads` workers.
template <class Task>
void parallel_for(std::size_t n, int threads, Task task) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) task(i);
    });
  for (auto& t : pool) t.join();
}

// Mean and standard error over realizations, summed in realization order.
void reduce(const std::vector<std::vector<double>>& per_realization, BinnedCurve& curve) {
  const std::size_t m = per_realization.size();
  const std::size_t bins = curve.abscissa.size();
  curve.values.assign(bins, 0.0);
  curve.std_error.assign(bins, 0.0);
  for (std::size_t k = 0; k < bins; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += per_realization[i][k];
    const double mean = sum / static_cast<double>(m);
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) ss += (per_realization[i][k] - mean) * (per_realization[i][k] - mean);
    curve.values[k] = mean;
    curve.std_error[k] = m > 1 ? std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m)) : 0.0;
  }
  curve.n_realizations = static_cast<int>(m);
}

void check_samples(std::span<const PointConfiguration> samples, const char* who) {
  if (samples.empty()) throw InvalidArgument(std::string(who) + ": no samples");
  for (const auto& s : samples)
    if (!(s.window == samples.front().window) || s.dimension != samples.front().dimension)
      throw InvalidArgument(std::string(who) + ": samples must share window and dimension");
  if (!(samples.front().window.volume() > 0.0))
    throw InvalidArgument(std::string(who) + ": window has zero volume");
}

BinnedCurve curve_for(std::span<const PointConfiguration> samples) {
  BinnedCurve c;
  c.process_label = samples.front().process_label;
  c.window = samples.front().window.describe();
  return c;
}

std::complex<double> structure_sum(const PointConfiguration& config, const Point& t) {
  std::complex<double> s = 0.0;
  for (const Point& x : config.points) s += std::polar(1.0, -2.0 * kPi * dot(t, x));
  return s;
}

}  // namespace

void BinnedCurve::check() const {
  if (values.size() != abscissa.size() || std_error.size() != abscissa.size())
    throw InvalidArgument("BinnedCurve: column lengths differ");
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    if (i > 0 && !(abscissa[i] > abscissa[i - 1]))
      throw InvalidArgument("BinnedCurve: abscissa must be strictly increasing");
    if (!std::isfinite(std_error[i]) || std_error[i] < 0.0)
      throw InvalidArgument("BinnedCurve: standard errors must be finite and non-negative");
  }
}

BinnedCurve estimate_pair_correlation(std::span<const PointConfiguration> samples, double r_max,
                                      int n_bins, const EstimatorOptions& options) {
  check_samples(samples, "pair correlation");
  if (n_bins < 1) throw InvalidArgument("pair correlation: n_bins must be positive");
  const Window& window = samples.front().window;
  if (!(r_max > 0.0) || r_max > 0.5 * window.inradius() * (1.0 + 1e-12))
    throw InvalidArgument("pair correlation: r_max must lie in (0, inradius / 2]");
  const int d = samples.front().dimension;
  const double delta = r_max / (n_bins + 0.5);
  const double r0 = 0.5 * delta;

  BinnedCurve curve = curve_for(samples);
  std::vector<double> shell(static_cast<std::size_t>(n_bins));
  for (int k = 0; k < n_bins; ++k) {
    curve.abscissa.push_back((k + 1) * delta);
    const double lo = r0 + k * delta;
    const double hi = lo + delta;
    shell[static_cast<std::size_t>(k)] = d == 1 ? 2.0 * delta : (d == 2 ? kPi * (hi * hi - lo * lo) : 4.0 / 3.0 * kPi * (hi * hi * hi - lo * lo * lo));
  }

  std::vector<std::vector<double>> per(samples.size());
  parallel_for(samples.size(), options.threads, [&](std::size_t i) {
    std::vector<double> acc(static_cast<std::size_t>(n_bins), 0.0);
    std::vector<Point> pts = samples[i].points;
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a[0] < b[0]; });
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size() && pts[b][0] - pts[a][0] < r_max; ++b) {
        const double r = norm(pts[b] - pts[a]);
        if (r < r0 || r >= r_max) continue;
        const auto k = static_cast<std::size_t>((r - r0) / delta);
        if (k >= acc.size()) continue;
        acc[k] += 2.0 / window.set_covariance(r);  // ordered pairs
      }
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] /= shell[k];
    per[i] = std::move(acc);
  });
  reduce(per, curve);
  return curve;
}

double scattering_intensity(const PointConfiguration& config, const Point& t) {
  return std::norm(structure_sum(config, t)) / config.window.volume();
}

BinnedCurve estimate_scattering_intensity(std::span<const PointConfiguration> samples,
                                          std::span<const Point> wavenumbers, bool atom_mode,
                                          const EstimatorOptions& options) {
  check_samples(samples, "scattering intensity");
  const Window& window = samples.front().window;
  const int d = samples.front().dimension;
  const double exclusion = 2.0 / window.diameter();
  BinnedCurve curve = curve_for(samples);
  for (const Point& t : wavenumbers) {
    if (norm(t) < exclusion)
      throw InvalidArgument("scattering intensity: wavenumber within 2 / diam(W) of the origin");
    curve.abscissa.push_back(d == 1 ? t[0] : norm(t));
  }
  const double vol = window.volume();
  std::vector<std::vector<double>> per(samples.size());
  parallel_for(samples.size(), options.threads, [&](std::size_t i) {
    std::vector<double> v;
    v.reserve(wavenumbers.size());
    for (const Point& t : wavenumbers) {
      const double value = scattering_intensity(samples[i], t);
      v.push_back(atom_mode ? value / vol : value);
    }
    per[i] = std::move(v);
  });
  reduce(per, curve);
  curve.check();
  return curve;
}

BinnedCurve estimate_scattering_binned(std::span<const PointConfiguration> samples,
                                       std::span<const double> centres, double width,
                                       const EstimatorOptions& options) {
  check_samples(samples, "scattering intensity");
  if (!(width > 0.0)) throw InvalidArgument("scattering intensity: bin width must be positive");
  const Window& window = samples.front().window;
  const double exclusion = 2.0 / window.diameter();
  for (std::size_t k = 0; k < centres.size(); ++k) {
    if (k > 0 && !(centres[k] - centres[k - 1] >= width * (1.0 - 1e-12)))
      throw InvalidArgument("scattering intensity: bins must be increasing and disjoint");
    if (centres[k] - 0.5 * width < exclusion)
      throw InvalidArgument("scattering intensity: bin reaches within 2 / diam(W) of the origin");
  }
  if (centres.empty()) throw InvalidArgument("scattering intensity: no bins");
  const double t_hi = centres.back() + 0.5 * width;

  // Frequency lattice of the window.
  double fx = 1.0, fy = 1.0;
  const bool planar = window.dimension() == 2;
  if (const auto* iv = std::get_if<Interval>(&window.shape())) {
    fx = 1.0 / (iv->b - iv->a);
  } else if (const auto* r = std::get_if<Rect>(&window.shape())) {
    fx = 1.0 / (r->bx - r->ax);
    fy = 1.0 / (r->by - r->ay);
  } else {
    fx = fy = 1.0 / window.diameter();
  }
  struct Member {
    Point t;
    std::size_t bin;
  };
  std::vector<Member> members;
  std::vector<double> modulus_sum(centres.size(), 0.0);
  std::vector<int> counts(centres.size(), 0);
  const int kx = static_cast<int>(std::ceil(t_hi / fx));
  const int ky = planar ? static_cast<int>(std::ceil(t_hi / fy)) : 0;
  // Half-lattice: I(t) = I(-t).
  for (int i = 0; i <= kx; ++i)
    for (int j = planar ? -ky : 0; j <= ky; ++j) {
      if (i == 0 && j <= 0) continue;
      const Point t(i * fx, j * fy);
      const double s = norm(t);
      if (s >= t_hi) continue;
      const auto it = std::upper_bound(centres.begin(), centres.end(), s - 0.5 * width);
      if (it == centres.end() || s < *it - 0.5 * width) continue;
      const auto k = static_cast<std::size_t>(it - centres.begin());
      members.push_back({t, k});
      modulus_sum[k] += s;
      counts[k] += 1;
    }

  BinnedCurve curve = curve_for(samples);
  std::vector<std::size_t> used;
  for (std::size_t k = 0; k < centres.size(); ++k)
    if (counts[k] > 0) {
      used.push_back(k);
      curve.abscissa.push_back(modulus_sum[k] / counts[k]);
    }
  std::vector<std::size_t> slot(centres.size(), 0);
  for (std::size_t u = 0; u < used.size(); ++u) slot[used[u]] = u;

  const double vol = window.volume();
  std::vector<std::vector<double>> per(samples.size());
  parallel_for(samples.size(), options.threads, [&](std::size_t i) {
    std::vector<double> acc(used.size(), 0.0);
    for (const Member& m : members) acc[slot[m.bin]] += std::norm(structure_sum(samples[i], m.t)) / vol;
    for (std::size_t u = 0; u < used.size(); ++u) acc[u] /= counts[used[u]];
    per[i] = std::move(acc);
  });
  reduce(per, curve);
  curve.check();
  return curve;
}

Comparison compare(const BinnedCurve& curve, const SpectralMeasure& analytic, const CompareOptions& options) {
  curve.check();
  Comparison out;
  double ss = 0.0;
  std::size_t covered = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double x = curve.abscissa[i];
    if (x < options.lo || x > options.hi) continue;
    bool near_atom = false;
    for (const Atom& a : analytic.atoms()) {
      const double loc = norm(a.location);
      if (loc > 0.0 && std::abs(std::abs(x) - loc) < options.atom_exclusion) near_atom = true;
    }
    if (near_atom) continue;
    const double dev = curve.values[i] - analytic.density(std::abs(x));
    ss += dev * dev;
    out.sup_dev = std::max(out.sup_dev, std::abs(dev));
    if (std::abs(dev) <= 3.0 * curve.std_error[i]) ++covered;
    ++out.bins;
  }
  if (out.bins > 0) {
    out.rms = std::sqrt(ss / static_cast<double>(out.bins));
    out.coverage = static_cast<double>(covered) / static_cast<double>(out.bins);
  }
  return out;
}

void write_curve_csv(std::ostream& os, const BinnedCurve& curve) {
  curve.check();
  os << "# process=" << curve.process_label << '\n'
     << "# window=" << curve.window << '\n'
     << "# realizations=" << curve.n_realizations << '\n'
     << "abscissa,value,stderr\n"
     << std::setprecision(17);
  for (std::size_t i = 0; i < curve.size(); ++i)
    os << curve.abscissa[i] << ',' << curve.values[i] << ',' << curve.std_error[i] << '\n';
}

}  // namespace diffrakt
