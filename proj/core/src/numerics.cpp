#include "diffrakt/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "diffrakt/error.hpp"

namespace diffrakt {

namespace {

constexpr double kPi = std::numbers::pi;

// Power series sum_m (-1)^m (z^2/4)^m / (m! Gamma(m + nu + 1)), i.e.
// J_nu(z) / (z/2)^nu.
double bessel_series_reduced(double nu, double z) {
  const double q = 0.25 * z * z;
  double term = 1.0 / std::tgamma(nu + 1.0);
  double sum = term;
  for (int m = 1; m < 500; ++m) {
    term *= -q / (m * (m + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Integer order by Miller's backward recurrence normalised with
// 1 = J_0 + 2 sum_k J_{2k}.
double bessel_miller(int n, double z) {
  const double top = std::max(static_cast<double>(n), z) + 40.0 + 2.0 * std::sqrt(z);
  int start = static_cast<int>(std::ceil(top));
  if (start % 2 != 0) ++start;
  double next = 0.0;  // J_{k+1}
  double cur = 1e-300;  // J_k
  double norm = 0.0;
  double result = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = (2.0 * k / z) * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
    const int idx = k - 1;
    if (idx == n) result = cur;
    if (idx > 0 && idx % 2 == 0) norm += 2.0 * cur;
  }
  norm += cur;
  return result / norm;
}

// Hankel asymptotic expansion, accurate for z > 25.
double bessel_asymptotic(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1e300;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * z);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    if (k % 4 == 1) q += term;
    else if (k % 4 == 2) p -= term;
    else if (k % 4 == 3) q -= term;
    else p += term;
    if (std::abs(term) < 1e-17) break;
  }
  const double chi = z - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_half_integer(int twice, double z) {
  const double nu = 0.5 * twice;
  if (z < std::max(1.0, nu)) return std::pow(0.5 * z, nu) * bessel_series_reduced(nu, z);
  if (z > 25.0 + nu * nu) return bessel_asymptotic(nu, z);
  const double s = std::sqrt(2.0 / (kPi * z));
  double jm = s * std::cos(z);  // J_{-1/2}
  double j = s * std::sin(z);   // J_{1/2}
  for (int k = 1; k < twice; k += 2) {
    const double order = 0.5 * k;
    const double jp = (2.0 * order / z) * j - jm;
    jm = j;
    j = jp;
  }
  return j;
}

// Positive Gauss-Kronrod 15 nodes; even indices are the embedded Gauss-7
// nodes.
struct Gk15 {
  const std::array<double, 8>& x = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
  const std::array<double, 8>& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
  const std::array<double, 4>& wg = boost::math::quadrature::gauss<double, 7>::weights();
};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  static const Gk15 rule;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = rule.wk[0] * fc;
  double gauss = rule.wg[0] * fc;
  for (std::size_t i = 1; i < 8; ++i) {
    const double dx = h * rule.x[i];
    const double fsum = f(c - dx) + f(c + dx);
    kron += rule.wk[i] * fsum;
    if (i % 2 == 0) gauss += rule.wg[i / 2] * fsum;
  }
  return Panel{a, b, kron * h, std::abs((kron - gauss) * h)};
}

// C-infinity cutoff: 1 on [0, 1], 0 on [2, inf).
double smooth_window(double x) {
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  const auto psi = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double a = psi(2.0 - x);
  const double b = psi(x - 1.0);
  return a / (a + b);
}

// Kernel of the radial transform in dimension d, multiplied by the radial
// measure r^{d-1} times the sphere area, so that f_hat(s) = int_0^inf g(r)
// kernel(r) dr.
double radial_kernel(int d, double r, double s) {
  const double x = 2.0 * kPi * r * s;
  switch (d) {
    case 1:
      return 2.0 * std::cos(x);
    case 2:
      return 2.0 * kPi * r * bessel_j(HalfOrder::integer(0), x);
    case 3: {
      const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
      return 4.0 * kPi * r * r * sinc;
    }
    default:
      throw InvalidArgument("radial_fourier: dimension must be 1, 2 or 3");
  }
}

}  // namespace

HalfOrder HalfOrder::from_double(double order) {
  const double twice = 2.0 * order;
  if (!(order >= 0.0) || std::abs(twice - std::round(twice)) > 1e-12 || twice > 1e6)
    throw InvalidArgument("bessel_j: order must be a non-negative multiple of 1/2, got " +
                          std::to_string(order));
  return HalfOrder(static_cast<int>(std::lround(twice)));
}

double bessel_j(HalfOrder order, double z) {
  if (!(z >= 0.0) || !std::isfinite(z))
    throw InvalidArgument("bessel_j: argument must be finite and non-negative");
  if (z == 0.0) return order.twice() == 0 ? 1.0 : 0.0;
  if (!order.is_integer()) return bessel_half_integer(order.twice(), z);
  const int n = order.twice() / 2;
  if (z <= 2.0) return std::pow(0.5 * z, n) * bessel_series_reduced(n, z);
  if (z > 25.0 + n * n) return bessel_asymptotic(n, z);
  return bessel_miller(n, z);
}

double bessel_j(double order, double z) { return bessel_j(HalfOrder::from_double(order), z); }

double bessel_j_scaled(HalfOrder order, double z) {
  const double nu = order.value();
  if (z < 1.0) return std::pow(0.5, nu) * bessel_series_reduced(nu, z);
  return bessel_j(order, z) / std::pow(z, nu);
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw InvalidArgument("riemann_zeta: requires s > 1");
  if (s > 60.0) return 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s);
  // Euler-Maclaurin with N = 16 and Bernoulli numbers B_2 .. B_24.
  static constexpr std::array<double, 12> kBernoulli = {
      1.0 / 6.0,        -1.0 / 30.0,       1.0 / 42.0,          -1.0 / 30.0,
      5.0 / 66.0,       -691.0 / 2730.0,   7.0 / 6.0,           -3617.0 / 510.0,
      43867.0 / 798.0,  -174611.0 / 330.0, 854513.0 / 138.0,    -236364091.0 / 2730.0};
  constexpr int kN = 16;
  double sum = 0.0;
  for (int n = kN - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  const double big_n = kN;
  const double n_pow = std::pow(big_n, -s);
  sum += big_n * n_pow / (s - 1.0) + 0.5 * n_pow;
  // term_k = B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}
  double rising = s;
  double factorial = 2.0;
  double power = n_pow / big_n;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double term = kBernoulli[k] / factorial * rising * power;
    sum += term;
    if (std::abs(term) < 1e-18 * sum) break;
    const double j = 2.0 * static_cast<double>(k + 1);
    rising *= (s + j - 1.0) * (s + j);
    factorial *= (j + 1.0) * (j + 2.0);
    power /= big_n * big_n;
  }
  return sum;
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw InvalidArgument("gamma_fn: requires x > 0");
  return std::tgamma(x);
}

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1 || !(tail_cutoff > 0.0) ||
      panel_width < 0.0)
    throw InvalidArgument("QuadratureSpec: tolerances, subdivisions and cutoff must be positive");
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  spec.validate();
  if (b <= a) return {};
  const double width = spec.panel_width > 0.0 ? spec.panel_width : (b - a) / 16.0;
  const int n_initial = std::clamp(static_cast<int>(std::ceil((b - a) / width)), 1, 2000000);

  std::priority_queue<Panel> queue;
  double total = 0.0;
  double total_err = 0.0;
  for (int i = 0; i < n_initial; ++i) {
    const double lo = a + (b - a) * i / n_initial;
    const double hi = i + 1 == n_initial ? b : a + (b - a) * (i + 1) / n_initial;
    Panel p = gk15(f, lo, hi);
    total += p.value;
    total_err += p.error;
    queue.push(p);
  }
  int subdivisions = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (subdivisions >= spec.max_subdivisions) {
      throw QuadratureError("integrate: no convergence after " +
                                std::to_string(spec.max_subdivisions) + " subdivisions",
                            total, total_err);
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++subdivisions;
    // Rounding drift in the running error sum; recompute occasionally.
    if (subdivisions % 4096 == 0) {
      auto copy = queue;
      total = 0.0;
      total_err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, total_err, subdivisions};
}

QuadratureResult integrate_halfline(const std::function<double(double)>& f,
                                    const QuadratureSpec& spec) {
  return integrate(f, 0.0, spec.tail_cutoff, spec);
}

double exponential_tail_cutoff(double bound_constant, double alpha, double abs_tol) {
  double u = 1.0;
  while (bound_constant * std::exp(-0.5 * u) * std::pow(u, alpha + 1.0) >= abs_tol) u *= 1.25;
  return u;
}

double radial_fourier(const RadialProfile& g, double s, const QuadratureSpec& spec) {
  spec.validate();
  const int d = g.dimension;
  if (d < 1 || d > 3) throw InvalidArgument("radial_fourier: dimension must be 1, 2 or 3");
  if (!(s >= 0.0)) throw InvalidArgument("radial_fourier: radius must be non-negative");

  // Panels resolve both the profile scale and the transform oscillation.
  double panel = 0.25 * g.length_scale;
  if (s > 0.0) panel = std::min(panel, 0.25 / s);
  QuadratureSpec local = spec;
  local.panel_width = panel;
  local.max_subdivisions = std::max(spec.max_subdivisions, 200000);

  const auto integrand = [&](double r) { return g(r) * radial_kernel(d, r, s); };

  if (g.has_compact_reach()) return integrate(integrand, 0.0, g.reach, local).value;

  // Algebraic tail: windowed integrals at U/4, U/2, U, Richardson in 1/U.
  const double u_max = std::max(spec.tail_cutoff, 256.0 * g.length_scale);
  const std::array<double, 3> cut = {0.25 * u_max, 0.5 * u_max, u_max};
  local.abs_tol = 0.1 * spec.abs_tol;
  const double plain_0 = integrate(integrand, 0.0, cut[0], local).value;
  const double plain_1 = plain_0 + integrate(integrand, cut[0], cut[1], local).value;
  const double plain_2 = plain_1 + integrate(integrand, cut[1], cut[2], local).value;
  const std::array<double, 3> plain = {plain_0, plain_1, plain_2};
  std::array<double, 3> windowed{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double v = cut[i];
    const auto tail = [&](double r) { return integrand(r) * smooth_window(r / v); };
    windowed[i] = plain[i] + integrate(tail, v, 2.0 * v, local).value;
  }
  // I(V) = I + c1/V + c2/V^2 with V = U/4, U/2, U.
  const double r1a = 2.0 * windowed[1] - windowed[0];
  const double r1b = 2.0 * windowed[2] - windowed[1];
  return (4.0 * r1b - r1a) / 3.0;
}

double radial_integral(const RadialProfile& g, const QuadratureSpec& spec) {
  return radial_fourier(g, 0.0, spec);
}

double unit_ball_volume(int d) {
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double unit_sphere_area(int d) { return d * unit_ball_volume(d); }

}  // namespace diffrakt
