#pragma once

#include <functional>
#include <limits>

#include "diffrakt/measures.hpp"

namespace diffrakt {

// Order of a Bessel function restricted to {0, 1/2, 1, 3/2, ...}, stored as
// twice the order so half-integers are exact.
class HalfOrder {
 public:
  static constexpr HalfOrder from_twice(int twice) { return HalfOrder(twice); }
  static constexpr HalfOrder integer(int n) { return HalfOrder(2 * n); }
  // Throws InvalidArgument if `order` is negative or not a multiple of 1/2.
  static HalfOrder from_double(double order);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

 private:
  constexpr explicit HalfOrder(int twice) : twice_(twice) {}
  int twice_;
};

// J_nu(z) for nu in {0, 1/2, 1, ...} and z >= 0.
double bessel_j(HalfOrder order, double z);
double bessel_j(double order, double z);
// J_nu(z) / z^nu, continuous at z = 0 where it equals 1 / (2^nu Gamma(nu+1)).
double bessel_j_scaled(HalfOrder order, double z);

double riemann_zeta(double s);
double gamma_fn(double x);

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 20000;
  // Upper limit U; the integrand is treated as zero on (U, inf).
  double tail_cutoff = 60.0;
  // Initial panel width; 0 lets the integrator pick U / 16.
  double panel_width = 0.0;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. Throws QuadratureError
// carrying the partial estimate when max_subdivisions is exhausted.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec);

// Integral of f over [0, spec.tail_cutoff].
QuadratureResult integrate_halfline(const std::function<double(double)>& f,
                                    const QuadratureSpec& spec);

// A cutoff U with C e^{-U/2} U^{alpha+1} < abs_tol, for integrands bounded by
// C u^alpha e^{-u/2}.
double exponential_tail_cutoff(double bound_constant, double alpha, double abs_tol);

// d-dimensional Fourier transform f_hat(y) = int f(x) e^{-2 pi i x.y} dx of a
// radial profile, evaluated at radius s. d = 1 uses the cosine transform, d = 2
// the order-0 Hankel kernel, d = 3 the spherical sine kernel.
//
// Profiles with finite reach are integrated on [0, reach]. Algebraically
// decaying profiles are integrated against a smooth cutoff window at radii
// U/4, U/2, U (U = spec.tail_cutoff) and Richardson-extrapolated in 1/U.
double radial_fourier(const RadialProfile& g, double s, const QuadratureSpec& spec = {});

// Total integral over R^d, i.e. radial_fourier(g, 0).
double radial_integral(const RadialProfile& g, const QuadratureSpec& spec = {});

// Volume of the unit ball in R^d.
double unit_ball_volume(int d);
// Surface area of the unit sphere in R^d.
double unit_sphere_area(int d);

}  // namespace diffrakt
