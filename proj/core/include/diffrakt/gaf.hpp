#pragma once

#include <complex>
#include <numbers>
#include <span>

#include <Eigen/Dense>

#include "diffrakt/measures.hpp"

namespace diffrakt {

// phi(u) = [e^{-u}(-2+4u-u^2) + e^{-2u}(4-4u-u^2) - 2e^{-3u}] / (1-e^{-u})^3,
// extended continuously with phi(0) = 1.
double gaf_phi(double u);

// Pair-correlation deficit of the planar GAF zero set, g(r) = phi(pi r^2).
double gaf_g(double r);

// Two-dimensional Fourier transform of g:
//   h(s) = 1 + sum_{k>=2} (-1)^{k+1} (pi s^2)^k zeta(k+1) / (k-2)!.
// Throws InvalidArgument for s < 0 or s > 50.
double gaf_h(double s);

// I(alpha) = int_0^inf u^alpha phi(u) du = alpha (1-alpha) Gamma(alpha+1) zeta(alpha+1),
// with I(0) = 1.
double gaf_I(double alpha);

// Covariances of f(z) = sum a_n sqrt(L^n / n!) z^n and its derivative at the
// given points: A = E f f*, B = E f' f*, C = E f' f'*.
struct GafMatrices {
  Eigen::MatrixXcd A;
  Eigen::MatrixXcd B;
  Eigen::MatrixXcd C;
};

GafMatrices gaf_matrices(std::span<const std::complex<double>> points, double L);

// k-point correlation of the zero set, per(C - B A^{-1} B*) / det(pi A), for
// k <= 6 distinct points. Throws NumericFailure when A is numerically
// singular (rcond < 1e-12).
double gaf_kpoint(std::span<const std::complex<double>> points, double L = std::numbers::pi);

RadialProfile gaf_g_profile();
RadialProfile gaf_h_profile();

namespace detail {
// Fault injection for the verification suite: scales the zeta(3) coefficient
// of h by (1 + relative). Zero restores the exact function.
void set_gaf_h_perturbation(double relative);
double gaf_h_perturbation();
}  // namespace detail

}  // namespace diffrakt
