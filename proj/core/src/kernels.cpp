#include "diffrakt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "diffrakt/error.hpp"

namespace diffrakt {

namespace {

constexpr double kPi = std::numbers::pi;
// exp(-41.45) ~ 1e-18: radius where Gaussian-type profiles are negligible.
constexpr double kNegligibleLog = 41.45;

double sinc(double y) {
  const double x = kPi * y;
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// Linear rescaling factor p^{1/d} of thinning.
double thin_scale(const KernelSpec& s) { return std::pow(s.thinning_p, 1.0 / s.dimension); }

double ball_kernel_radial(int d, double r) {
  const double alpha = unit_ball_volume(d);
  const double radius = unit_volume_ball_radius(d);
  const HalfOrder order = HalfOrder::from_twice(d);
  const double z = 2.0 * kPi * radius * r;
  return std::pow(alpha, -0.5) * std::pow(2.0 * kPi * radius, 0.5 * d) * bessel_j_scaled(order, z);
}

// Volume of the intersection of two balls of radius R in R^d at distance t.
double lens_volume(int d, double radius, double t) {
  if (t >= 2.0 * radius) return 0.0;
  switch (d) {
    case 1:
      return 2.0 * radius - t;
    case 2:
      return 2.0 * radius * radius * std::acos(t / (2.0 * radius)) -
             0.5 * t * std::sqrt(4.0 * radius * radius - t * t);
    case 3:
      return kPi / 12.0 * (4.0 * radius + t) * (2.0 * radius - t) * (2.0 * radius - t);
    default:
      throw InvalidArgument("lens_volume: dimension must be 1, 2 or 3");
  }
}

std::complex<double> compound_poisson_factor(KernelFamily family, double x) {
  const double c = std::cos(2.0 * kPi * x);
  if (family == KernelFamily::kCompoundPoissonB) return std::exp(c - 1.0);
  // exp(e^{-2 pi i x} - 1)
  return std::exp(std::complex<double>(c - 1.0, -std::sin(2.0 * kPi * x)));
}

// Autocorrelation R(m) = sum_k Q(k) Q(k + m) of a lattice distribution.
std::vector<double> lattice_autocorrelation(const LatticeDistribution& q, int& m_max) {
  const int n = static_cast<int>(q.masses.size());
  m_max = n - 1;
  std::vector<double> r(static_cast<std::size_t>(2 * n - 1), 0.0);
  for (int m = -(n - 1); m <= n - 1; ++m) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const int j = i + m;
      if (j >= 0 && j < n) acc += q.masses[static_cast<std::size_t>(i)] * q.masses[static_cast<std::size_t>(j)];
    }
    r[static_cast<std::size_t>(m + n - 1)] = acc;
  }
  return r;
}

}  // namespace

double unit_volume_ball_radius(int d) { return std::pow(unit_ball_volume(d), -1.0 / d); }

KernelSpec KernelSpec::sine(double p) { return {KernelFamily::kSine, p, 1, 0.5}; }
KernelSpec KernelSpec::ball(int d, double p) { return {KernelFamily::kBall, p, d, 0.5}; }
KernelSpec KernelSpec::gauss(int d, double p) { return {KernelFamily::kGauss, p, d, 0.5}; }
KernelSpec KernelSpec::exponential(double alpha, double p) {
  return {KernelFamily::kExponential, p, 1, alpha};
}
KernelSpec KernelSpec::compound_poisson_a(double p) {
  return {KernelFamily::kCompoundPoissonA, p, 1, 0.5};
}
KernelSpec KernelSpec::compound_poisson_b(double p) {
  return {KernelFamily::kCompoundPoissonB, p, 1, 0.5};
}
KernelSpec KernelSpec::ginibre(double p) { return {KernelFamily::kGinibre, p, 2, 0.5}; }

std::string_view kernel_family_id(KernelFamily family) {
  switch (family) {
    case KernelFamily::kSine: return "sine";
    case KernelFamily::kBall: return "ball";
    case KernelFamily::kGauss: return "gauss";
    case KernelFamily::kExponential: return "exp";
    case KernelFamily::kCompoundPoissonA: return "cpA";
    case KernelFamily::kCompoundPoissonB: return "cpB";
    case KernelFamily::kGinibre: return "ginibre";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view id) {
  for (KernelFamily f : {KernelFamily::kSine, KernelFamily::kBall, KernelFamily::kGauss,
                         KernelFamily::kExponential, KernelFamily::kCompoundPoissonA,
                         KernelFamily::kCompoundPoissonB, KernelFamily::kGinibre})
    if (kernel_family_id(f) == id) return f;
  throw InvalidArgument("unknown kernel family '" + std::string(id) + "'");
}

std::string KernelSpec::id() const { return std::string(kernel_family_id(family)); }

std::string KernelSpec::describe() const {
  std::ostringstream os;
  os << id() << "(d=" << dimension << ",p=" << thinning_p;
  if (family == KernelFamily::kExponential) os << ",alpha=" << alpha;
  os << ')';
  return os.str();
}

void KernelSpec::check() const {
  if (!(thinning_p > 0.0) || !std::isfinite(thinning_p))
    throw InvalidArgument("kernel " + id() + ": thinning p must be positive");
  switch (family) {
    case KernelFamily::kBall:
    case KernelFamily::kGauss:
      if (dimension < 1 || dimension > 3)
        throw InvalidArgument("kernel " + id() + ": dimension must be 1, 2 or 3");
      break;
    case KernelFamily::kGinibre:
      if (dimension != 2) throw InvalidArgument("kernel ginibre: dimension must be 2");
      break;
    case KernelFamily::kExponential:
      if (!(alpha > 0.0)) throw InvalidArgument("kernel exp: alpha must be positive");
      [[fallthrough]];
    default:
      if (dimension != 1) throw InvalidArgument("kernel " + id() + ": dimension must be 1");
  }
}

double LatticeDistribution::at(int k) const {
  const int i = k + offset;
  if (i < 0 || i >= static_cast<int>(masses.size())) return 0.0;
  return masses[static_cast<std::size_t>(i)];
}

LatticeDistribution compound_poisson_distribution(KernelFamily family) {
  // Poisson(1) weights for the number of jumps, truncated once the remaining
  // mass is below 1e-12.
  std::vector<double> poisson;
  double remaining = 1.0;
  double w = std::exp(-1.0);
  for (int n = 0; remaining > 1e-12; ++n) {
    poisson.push_back(w);
    remaining -= w;
    w /= (n + 1);
  }
  const int n_max = static_cast<int>(poisson.size()) - 1;
  LatticeDistribution q;
  if (family == KernelFamily::kCompoundPoissonA) {
    q.offset = 0;
    q.masses = poisson;
  } else if (family == KernelFamily::kCompoundPoissonB) {
    // S = sum of N independent +-1 steps.
    q.offset = n_max;
    q.masses.assign(static_cast<std::size_t>(2 * n_max + 1), 0.0);
    std::vector<double> walk{1.0};  // distribution of the walk after n steps, offset n
    for (int n = 0; n <= n_max; ++n) {
      for (int j = 0; j <= n; ++j)
        q.masses[static_cast<std::size_t>(2 * j - n + n_max)] += poisson[static_cast<std::size_t>(n)] * walk[static_cast<std::size_t>(j)];
      std::vector<double> next(static_cast<std::size_t>(n + 2), 0.0);
      for (int j = 0; j <= n; ++j) {
        next[static_cast<std::size_t>(j)] += 0.5 * walk[static_cast<std::size_t>(j)];
        next[static_cast<std::size_t>(j + 1)] += 0.5 * walk[static_cast<std::size_t>(j)];
      }
      walk = std::move(next);
    }
  } else {
    throw InvalidArgument("compound_poisson_distribution: family must be cpA or cpB");
  }
  return q;
}

std::complex<double> kernel_value(const KernelSpec& spec, const Point& x) {
  spec.check();
  if (!spec.translation_invariant())
    throw InvalidArgument("kernel_value: ginibre kernel needs two points");
  const double r = norm(x) / thin_scale(spec);
  switch (spec.family) {
    case KernelFamily::kSine:
      return sinc(r);
    case KernelFamily::kBall:
      return ball_kernel_radial(spec.dimension, r);
    case KernelFamily::kGauss:
      return std::exp(-kPi * r * r);
    case KernelFamily::kExponential:
      return std::exp(-r / spec.alpha);
    case KernelFamily::kCompoundPoissonA:
    case KernelFamily::kCompoundPoissonB: {
      const double xs = x[0] / spec.thinning_p;  // signed: K_A is not even
      return compound_poisson_factor(spec.family, xs) * sinc(xs);
    }
    case KernelFamily::kGinibre:
      break;
  }
  throw InvalidArgument("kernel_value: unsupported family");
}

std::complex<double> kernel_value(const KernelSpec& spec, const Point& x, const Point& y) {
  if (spec.family != KernelFamily::kGinibre) return kernel_value(spec, x - y);
  spec.check();
  const double p = spec.thinning_p;
  const std::complex<double> z(x[0], x[1]);
  const std::complex<double> w(y[0], y[1]);
  const std::complex<double> e =
      (-0.5 * kPi * std::norm(z) - 0.5 * kPi * std::norm(w) + kPi * z * std::conj(w)) / p;
  return std::exp(e);
}

double spectral_density(const KernelSpec& spec, double t) {
  spec.check();
  const double p = spec.thinning_p;
  const double ts = std::abs(t) * thin_scale(spec);
  switch (spec.family) {
    case KernelFamily::kSine:
      return ts <= 0.5 ? p : 0.0;
    case KernelFamily::kBall:
      return ts <= unit_volume_ball_radius(spec.dimension) ? p : 0.0;
    case KernelFamily::kGauss:
      return p * std::exp(-kPi * ts * ts);
    case KernelFamily::kExponential: {
      const double a = 2.0 * kPi * spec.alpha * ts;
      return p * 2.0 * spec.alpha / (1.0 + a * a);
    }
    case KernelFamily::kCompoundPoissonA:
    case KernelFamily::kCompoundPoissonB:
      break;
    case KernelFamily::kGinibre:
      throw InvalidArgument("spectral_density: ginibre kernel is not translation-invariant");
  }
  throw InvalidArgument("spectral_density: compound-Poisson densities need a signed argument");
}

double spectral_density(const KernelSpec& spec, const Point& t) {
  if (spec.family == KernelFamily::kCompoundPoissonA ||
      spec.family == KernelFamily::kCompoundPoissonB) {
    spec.check();
    static const LatticeDistribution qa = compound_poisson_distribution(KernelFamily::kCompoundPoissonA);
    static const LatticeDistribution qb = compound_poisson_distribution(KernelFamily::kCompoundPoissonB);
    const LatticeDistribution& q = spec.family == KernelFamily::kCompoundPoissonA ? qa : qb;
    const double ts = t[0] * spec.thinning_p;
    return spec.thinning_p * q.at(static_cast<int>(std::lround(ts)));
  }
  return spectral_density(spec, norm(t));
}

DppValidation validate_dpp(const KernelSpec& spec) {
  spec.check();
  DppValidation v;
  if (spec.family == KernelFamily::kGinibre) {
    // Projection kernel; thinning keeps the spectrum in {0, p}.
    v.sup_phi = spec.thinning_p;
    v.inf_phi = 0.0;
    v.pass = spec.thinning_p <= 1.0 + 1e-12;
    v.reason = v.pass ? "projection kernel" : "thinning parameter p > 1";
    return v;
  }
  const double s = thin_scale(spec);
  double t_max = 1.0;
  switch (spec.family) {
    case KernelFamily::kSine: t_max = 1.0 / s; break;
    case KernelFamily::kBall: t_max = 2.0 * unit_volume_ball_radius(spec.dimension) / s; break;
    case KernelFamily::kGauss: t_max = 6.0 / s; break;
    case KernelFamily::kExponential: t_max = 10.0 / (spec.alpha * s); break;
    default: t_max = 20.0 / s; break;
  }
  constexpr int kGrid = 10000;
  const bool signed_grid = spec.family == KernelFamily::kCompoundPoissonA ||
                           spec.family == KernelFamily::kCompoundPoissonB;
  const double t_lo = signed_grid ? -t_max : 0.0;
  v.sup_phi = -1.0;
  v.inf_phi = 1e300;
  for (int i = 0; i < kGrid; ++i) {
    const double t = t_lo + (t_max - t_lo) * i / (kGrid - 1);
    const double phi = spectral_density(spec, Point(t));
    v.sup_phi = std::max(v.sup_phi, phi);
    v.inf_phi = std::min(v.inf_phi, phi);
  }
  v.pass = v.sup_phi <= 1.0 + 1e-12 && v.inf_phi >= 0.0;
  if (!v.pass) {
    std::ostringstream os;
    os << "spectral density outside [0, 1]: sup " << v.sup_phi << ", inf " << v.inf_phi;
    v.reason = os.str();
  } else {
    v.reason = "0 <= phi <= 1";
  }
  return v;
}

RadialProfile kernel_profile(const KernelSpec& spec) {
  spec.check();
  if (!spec.translation_invariant() || !spec.real_valued())
    throw InvalidArgument("kernel_profile: kernel " + spec.id() + " is not real translation-invariant");
  const double s = thin_scale(spec);
  RadialProfile k;
  k.dimension = spec.dimension;
  k.label = "K[" + spec.describe() + "]";
  switch (spec.family) {
    case KernelFamily::kSine:
      k.eval = [s](double r) { return sinc(r / s); };
      break;
    case KernelFamily::kBall:
      k.eval = [s, d = spec.dimension](double r) { return ball_kernel_radial(d, r / s); };
      break;
    case KernelFamily::kGauss:
      k.eval = [s](double r) { const double x = r / s; return std::exp(-kPi * x * x); };
      break;
    case KernelFamily::kExponential:
      k.eval = [a = spec.alpha * s](double r) { return std::exp(-r / a); };
      break;
    default:
      k.eval = [s](double r) {
        const double x = r / s;
        return std::exp(std::cos(2.0 * kPi * x) - 1.0) * sinc(x);
      };
      break;
  }
  return k;
}

RadialProfile g_profile(const KernelSpec& spec) {
  spec.check();
  const double s = thin_scale(spec);
  const int d = spec.dimension;
  RadialProfile g;
  g.dimension = d;
  g.label = "g[" + spec.describe() + "]";
  switch (spec.family) {
    case KernelFamily::kSine:
      g.eval = [s](double r) { const double k = sinc(r / s); return k * k; };
      g.length_scale = s;
      break;
    case KernelFamily::kBall:
      g.eval = [s, d](double r) { const double k = ball_kernel_radial(d, r / s); return k * k; };
      g.length_scale = 0.5 * s / unit_volume_ball_radius(d);
      break;
    case KernelFamily::kGauss:
      g.eval = [s](double r) { const double x = r / s; return std::exp(-2.0 * kPi * x * x); };
      g.reach = s * std::sqrt(kNegligibleLog / (2.0 * kPi));
      g.length_scale = 0.25 * s;
      break;
    case KernelFamily::kExponential: {
      const double a = spec.alpha * s;
      g.eval = [a](double r) { return std::exp(-2.0 * r / a); };
      g.reach = 0.5 * a * kNegligibleLog;
      g.length_scale = 0.25 * a;
      break;
    }
    case KernelFamily::kCompoundPoissonA:
    case KernelFamily::kCompoundPoissonB:
      g.eval = [s](double r) {
        const double x = r / s;
        const double k = sinc(x);
        return std::exp(2.0 * std::cos(2.0 * kPi * x) - 2.0) * k * k;
      };
      g.length_scale = 0.5 * s;
      break;
    case KernelFamily::kGinibre: {
      const double p = spec.thinning_p;
      g.eval = [p](double r) { return std::exp(-kPi * r * r / p); };
      g.reach = std::sqrt(p * kNegligibleLog / kPi);
      g.length_scale = 0.25 * std::sqrt(p);
      break;
    }
  }
  return g;
}

RadialProfile g_hat_profile(const KernelSpec& spec) {
  spec.check();
  const double p = spec.thinning_p;
  const double s = thin_scale(spec);
  const int d = spec.dimension;
  RadialProfile h;
  h.dimension = d;
  h.label = "g_hat[" + spec.describe() + "]";
  switch (spec.family) {
    case KernelFamily::kSine:
      h.eval = [p, s](double t) { return p * std::max(0.0, 1.0 - std::abs(t) * s); };
      h.reach = 1.0 / s;
      h.length_scale = 0.25 / s;
      break;
    case KernelFamily::kBall: {
      const double radius = unit_volume_ball_radius(d);
      h.eval = [p, s, d, radius](double t) { return p * lens_volume(d, radius, std::abs(t) * s); };
      h.reach = 2.0 * radius / s;
      h.length_scale = 0.25 * h.reach;
      break;
    }
    case KernelFamily::kGauss:
      h.eval = [p, s, d](double t) {
        const double x = t * s;
        return p * std::pow(0.5, 0.5 * d) * std::exp(-0.5 * kPi * x * x);
      };
      h.reach = std::sqrt(2.0 * kNegligibleLog / kPi) / s;
      h.length_scale = 0.25 / s;
      break;
    case KernelFamily::kExponential: {
      const double a = spec.alpha;
      h.eval = [p, a, s](double t) {
        const double x = kPi * a * t * s;
        return p * a / (1.0 + x * x);
      };
      h.length_scale = 1.0 / (kPi * a * s);
      break;
    }
    case KernelFamily::kCompoundPoissonA:
    case KernelFamily::kCompoundPoissonB: {
      int m_max = 0;
      const auto corr = lattice_autocorrelation(compound_poisson_distribution(spec.family), m_max);
      h.eval = [p, s, corr, m_max](double t) {
        const double x = std::abs(t) * s;
        const int m0 = static_cast<int>(std::floor(x));
        double acc = 0.0;
        for (int m = m0; m <= m0 + 1; ++m) {
          if (m > m_max) continue;
          acc += corr[static_cast<std::size_t>(m + m_max)] * std::max(0.0, 1.0 - std::abs(x - m));
        }
        return p * acc;
      };
      h.reach = (m_max + 1.0) / s;
      h.length_scale = 0.25 / s;
      break;
    }
    case KernelFamily::kGinibre:
      h.eval = [p](double t) { return p * std::exp(-kPi * p * t * t); };
      h.reach = std::sqrt(kNegligibleLog / (kPi * p));
      h.length_scale = 0.25 / std::sqrt(p);
      break;
  }
  return h;
}

double integral_of_g(const KernelSpec& spec, const QuadratureSpec& quad) {
  return radial_integral(g_profile(spec), quad);
}

SelfReproducing is_self_reproducing(const KernelSpec& spec, const QuadratureSpec& quad) {
  SelfReproducing out;
  out.g_hat_at_zero = integral_of_g(spec, quad);
  out.value = std::abs(out.g_hat_at_zero - 1.0) <= 1e-6;
  return out;
}

}  // namespace diffrakt
