#include "diffrakt/gaf.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>

#include "diffrakt/error.hpp"
#include "diffrakt/numerics.hpp"
#include "internal/permanent.hpp"

namespace diffrakt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kPhiSwitch = 1.0;
constexpr double kSeriesSwitch = 1.0;  // in x = pi s^2
constexpr int kPhiTerms = 32;

std::atomic<double> g_h_perturbation{0.0};

double horner(const double* c, int n, double u) {
  double acc = 0.0;
  for (int i = n - 1; i >= 0; --i) acc = acc * u + c[i];
  return acc;
}

// Taylor coefficients of numerator / u^3 and (1 - e^{-u})^3 / u^3.
struct PhiSeries {
  double num[kPhiTerms];
  double den[kPhiTerms];
  PhiSeries() {
    // Coefficient of u^n in e^{-k u}.
    auto ek = [](int k, int n) {
      if (n < 0) return 0.0L;
      long double c = 1.0L;
      for (int i = 1; i <= n; ++i) c *= -static_cast<long double>(k) / i;
      return c;
    };
    for (int i = 0; i < kPhiTerms; ++i) {
      const int n = i + 3;
      const long double a = -2.0L * ek(1, n) + 4.0L * ek(1, n - 1) - ek(1, n - 2) + 4.0L * ek(2, n) -
                            4.0L * ek(2, n - 1) - ek(2, n - 2) - 2.0L * ek(3, n);
      const long double b = -3.0L * ek(1, n) + 3.0L * ek(2, n) - ek(3, n);
      num[i] = static_cast<double>(a);
      den[i] = static_cast<double>(b);
    }
  }
};

double h_power_series(double x) {
  double sum = 1.0;
  double power = x * x;  // x^k / (k-2)! at k = 2
  for (int k = 2; k < 400; ++k) {
    const double term = power * riemann_zeta(k + 1.0);
    sum += (k % 2 == 1) ? term : -term;
    if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
    power *= x / (k - 1);
  }
  return sum;
}

// h(x) = 1 - sum_n (x^2/n^3) e^{-x/n}; the tail beyond M is replaced by its
// Euler-Maclaurin estimate.
double h_resummed(double x) {
  const auto m = static_cast<long>(std::ceil(4.0 * x + 400.0));
  auto f = [x](double n) { return x * x / (n * n * n) * std::exp(-x / n); };
  double sum = 0.0;
  for (long n = m - 1; n >= 1; --n) sum += f(static_cast<double>(n));
  const double md = static_cast<double>(m);
  const double a = x / md;
  const double integral = -std::expm1(-a) - a * std::exp(-a);
  const double fm = f(md);
  const double dfm = fm * (-3.0 / md + x / (md * md));
  sum += integral + 0.5 * fm - dfm / 12.0;
  return 1.0 - sum;
}

}  // namespace

double gaf_phi(double u) {
  if (!(u >= 0.0)) throw InvalidArgument("gaf_phi: argument must be non-negative");
  if (u < kPhiSwitch) {
    static const PhiSeries series;
    return horner(series.num, kPhiTerms, u) / horner(series.den, kPhiTerms, u);
  }
  const double e1 = std::exp(-u);
  const double numerator =
      e1 * (-2.0 + 4.0 * u - u * u) + e1 * e1 * (4.0 - 4.0 * u - u * u) - 2.0 * e1 * e1 * e1;
  const double d = -std::expm1(-u);
  return numerator / (d * d * d);
}

double gaf_g(double r) {
  if (!(r >= 0.0)) throw InvalidArgument("gaf_g: radius must be non-negative");
  return gaf_phi(kPi * r * r);
}

double gaf_h(double s) {
  if (!(s >= 0.0)) throw InvalidArgument("gaf_h: argument must be non-negative");
  if (s > 50.0) throw InvalidArgument("gaf_h: argument beyond supported range s <= 50");
  const double x = kPi * s * s;
  double h = x <= kSeriesSwitch ? h_power_series(x) : h_resummed(x);
  const double eps = g_h_perturbation.load(std::memory_order_relaxed);
  if (eps != 0.0) h -= eps * x * x * riemann_zeta(3.0);
  return h;
}

double gaf_I(double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("gaf_I: alpha must be non-negative");
  if (alpha == 0.0) return 1.0;
  if (alpha <= 1e-8) return (1.0 - alpha) * gamma_fn(1.0 + alpha) * (1.0 + kEulerGamma * alpha);
  return alpha * (1.0 - alpha) * gamma_fn(alpha + 1.0) * riemann_zeta(alpha + 1.0);
}

GafMatrices gaf_matrices(std::span<const std::complex<double>> points, double L) {
  if (!(L > 0.0)) throw InvalidArgument("gaf_matrices: L must be positive");
  const auto k = static_cast<Eigen::Index>(points.size());
  GafMatrices m{Eigen::MatrixXcd(k, k), Eigen::MatrixXcd(k, k), Eigen::MatrixXcd(k, k)};
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const std::complex<double> z = points[static_cast<std::size_t>(i)];
      const std::complex<double> wbar = std::conj(points[static_cast<std::size_t>(j)]);
      const std::complex<double> e = std::exp(L * z * wbar);
      m.A(i, j) = e;
      m.B(i, j) = L * wbar * e;
      m.C(i, j) = (L * L * z * wbar + L) * e;
    }
  }
  return m;
}

double gaf_kpoint(std::span<const std::complex<double>> points, double L) {
  if (points.empty() || points.size() > 6)
    throw InvalidArgument("gaf_kpoint: between 1 and 6 points required");
  // The correlation functions are translation invariant; centring keeps the
  // exponentials in the covariance small.
  std::complex<double> centroid = 0.0;
  for (auto z : points) centroid += z;
  centroid /= static_cast<double>(points.size());
  std::vector<std::complex<double>> shifted(points.begin(), points.end());
  for (auto& z : shifted) z -= centroid;

  const GafMatrices m = gaf_matrices(shifted, L);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m.A);
  if (!(lu.rcond() >= 1e-12))
    throw NumericFailure("gaf_kpoint: covariance matrix is singular (coincident points)");
  const Eigen::MatrixXcd schur = m.C - m.B * lu.solve(m.B.adjoint());
  const std::complex<double> det = lu.determinant() * std::pow(kPi, static_cast<double>(points.size()));
  const std::complex<double> value = detail::permanent(schur) / det;
  if (std::abs(value.imag()) > 1e-9 * std::max(1.0, std::abs(value)))
    throw NumericFailure("gaf_kpoint: imaginary residue above tolerance");
  return value.real();
}

RadialProfile gaf_g_profile() {
  RadialProfile p;
  p.dimension = 2;
  p.eval = [](double r) { return gaf_g(r); };
  p.label = "g[gaf]";
  // |phi(u)| <= C e^{-u/2} is below 1e-18 for u >= 100.
  p.reach = std::sqrt(100.0 / kPi);
  p.length_scale = 0.25;
  return p;
}

RadialProfile gaf_h_profile() {
  RadialProfile p;
  p.dimension = 2;
  p.eval = [](double s) { return s > 50.0 ? 0.0 : gaf_h(s); };
  p.label = "h[gaf]";
  p.length_scale = 0.25;
  return p;
}

namespace detail {
void set_gaf_h_perturbation(double relative) {
  g_h_perturbation.store(relative, std::memory_order_relaxed);
}
double gaf_h_perturbation() { return g_h_perturbation.load(std::memory_order_relaxed); }
}  // namespace detail

}  // namespace diffrakt
