#include "diffrakt/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "diffrakt/error.hpp"
#include "internal/sampling.hpp"

namespace diffrakt {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RenewalRates {
  double lambda1;
  double lambda2;
};

RenewalRates renewal_rates(double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw InvalidArgument("renewal process: alpha must lie in (0, 1/2]");
  const double root = std::sqrt(std::max(0.0, 1.0 - 2.0 * alpha));
  return {(1.0 - root) / alpha, (1.0 + root) / alpha};
}

std::string alpha_label(double alpha) {
  std::ostringstream os;
  os << "renewal(alpha=" << alpha << ")";
  return os.str();
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ (index + 0x632be59bd9b4e019ULL));
}

Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

namespace detail {

Point uniform_in(const Window& window, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (const auto* i = std::get_if<Interval>(&window.shape())) return Point(i->a + (i->b - i->a) * u(rng));
  if (const auto* r = std::get_if<Rect>(&window.shape())) {
    const double x = r->ax + (r->bx - r->ax) * u(rng);
    return Point(x, r->ay + (r->by - r->ay) * u(rng));
  }
  const auto& d = std::get<Disk>(window.shape());
  const double rad = d.radius * std::sqrt(u(rng));
  const double theta = 2.0 * kPi * u(rng);
  return Point(d.center[0] + rad * std::cos(theta), d.center[1] + rad * std::sin(theta));
}

PointConfiguration empty_configuration(const Window& window, std::uint64_t seed, std::string label) {
  PointConfiguration c;
  c.dimension = window.dimension();
  c.window = window;
  c.seed = seed;
  c.process_label = std::move(label);
  return c;
}

}  // namespace detail

bool is_simple(const PointConfiguration& config, double tol) {
  std::vector<Point> pts = config.points;
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a[0] < b[0]; });
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size() && pts[j][0] - pts[i][0] < tol; ++j)
      if (norm(pts[j] - pts[i]) < tol) return false;
  return true;
}

PointConfiguration sample_poisson(const Window& window, double intensity, std::uint64_t seed) {
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw InvalidArgument("poisson: intensity must be positive");
  const double mean = intensity * window.volume();
  if (!(window.volume() > 0.0)) throw InvalidArgument("poisson: window has zero volume");
  if (!(mean < 1e8)) throw InvalidArgument("poisson: expected count exceeds the 1e8 budget");
  Rng rng = make_rng(seed);
  auto c = detail::empty_configuration(window, seed, "poisson");
  const long n = std::poisson_distribution<long>(mean)(rng);
  c.points.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) c.points.push_back(detail::uniform_in(window, rng));
  return c;
}

double sample_renewal_increment(double alpha, Rng& rng) {
  const RenewalRates r = renewal_rates(alpha);
  std::exponential_distribution<double> e1(r.lambda1);
  std::exponential_distribution<double> e2(r.lambda2);
  const double x = e1(rng);
  return x + e2(rng);
}

double renewal_increment_cdf(double alpha, double x) {
  const RenewalRates r = renewal_rates(alpha);
  if (x <= 0.0) return 0.0;
  const double gap = r.lambda2 - r.lambda1;
  const double e1 = std::exp(-r.lambda1 * x);
  // (e^{-l1 x} - e^{-l2 x}) / (l2 - l1), stable as the rates merge.
  const double ratio = gap * x < 1e-12 ? x * e1 : e1 * -std::expm1(-gap * x) / gap;
  return 1.0 - e1 - r.lambda1 * ratio;
}

PointConfiguration sample_renewal_dpp(double alpha, const Window& window, std::uint64_t seed) {
  renewal_rates(alpha);
  const auto* iv = std::get_if<Interval>(&window.shape());
  if (iv == nullptr) throw InvalidArgument("renewal process: window must be an interval");
  Rng rng = make_rng(seed);
  auto c = detail::empty_configuration(window, seed, alpha_label(alpha));
  double x = iv->a;
  for (int k = 0; k < 50; ++k) x -= sample_renewal_increment(alpha, rng);
  while (true) {
    x += sample_renewal_increment(alpha, rng);
    if (x > iv->b) break;
    if (x >= iv->a) c.points.emplace_back(x);
  }
  return c;
}

PointConfiguration sample_cox_cosine(const Window& window, std::uint64_t seed) {
  const auto* iv = std::get_if<Interval>(&window.shape());
  if (iv == nullptr) throw InvalidArgument("cox cosine: window must be an interval");
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double shift = u(rng);
  auto c = detail::empty_configuration(window, seed, "cox-cosine");
  const long n = std::poisson_distribution<long>(2.0 * window.volume())(rng);
  for (long k = 0; k < n; ++k) {
    const double x = iv->a + (iv->b - iv->a) * u(rng);
    const double accept = 0.5 * (1.0 + std::cos(2.0 * kPi * (x + shift)));
    if (u(rng) < accept) c.points.emplace_back(x);
  }
  std::sort(c.points.begin(), c.points.end(), [](const Point& a, const Point& b) { return a[0] < b[0]; });
  return c;
}

}  // namespace diffrakt
