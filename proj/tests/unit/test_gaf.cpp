#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "diffrakt/error.hpp"
#include "diffrakt/gaf.hpp"
#include "diffrakt/numerics.hpp"
#include "support/oracles.hpp"

using namespace diffrakt;
using std::numbers::pi;
using cd = std::complex<double>;

TEST(GafPhi, MatchesOracle) {
  EXPECT_EQ(gaf_phi(0.0), 1.0);
  EXPECT_NEAR(gaf_phi(1.0), oracle::kPhi1, 1e-15);
  EXPECT_NEAR(gaf_phi(0.005), oracle::kPhi0005, 1e-15);
  EXPECT_NEAR(gaf_phi(40.0), oracle::kPhi40, 1e-24);
}

TEST(GafPhi, SmallArgumentSeries) {
  for (double u : {1e-8, 1e-5, 1e-3, 9.9e-3, 0.05}) {
    double series = 1.0, power = u;
    for (double c : oracle::kPhiSeries) {
      series += c * power;
      power *= u * u;
    }
    EXPECT_NEAR(gaf_phi(u), series, 1e-15 + std::pow(u, 9)) << "u=" << u;
  }
}

TEST(GafPhi, ContinuousAcrossBranches) {
  const double u = 1.0;
  EXPECT_NEAR(gaf_phi(std::nextafter(u, 0.0)), gaf_phi(std::nextafter(u, 2.0)), 1e-14);
}

TEST(GafH, ContinuousAcrossBranches) {
  const double s = std::sqrt(1.0 / std::numbers::pi);
  EXPECT_NEAR(gaf_h(std::nextafter(s, 0.0)), gaf_h(std::nextafter(s, 1.0)), 1e-14);
}

TEST(GafG, MatchesOracle) {
  for (const auto& [r, v] : oracle::kGafG) EXPECT_NEAR(gaf_g(r), v, 1e-14) << "r=" << r;
}

TEST(GafH, MatchesOracle) {
  for (const auto& [s, v] : oracle::kGafH) EXPECT_NEAR(gaf_h(s), v, 1e-12) << "s=" << s;
  EXPECT_NEAR(gaf_h(0.0), 1.0, 1e-15);
}

TEST(GafH, LargeArgumentsDecayAndDomainIsBounded) {
  EXPECT_LT(std::abs(gaf_h(5.0)), 1e-6);
  EXPECT_LT(std::abs(gaf_h(49.0)), 1e-10);
  EXPECT_THROW(gaf_h(-0.1), InvalidArgument);
  EXPECT_THROW(gaf_h(50.5), InvalidArgument);
}

TEST(GafH, DiffractionExceedsOneNearUnitWavenumber) {
  double best = 0.0, where = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const double s = 0.01 * i;
    if (1.0 - gaf_h(s) > best) best = 1.0 - gaf_h(s), where = s;
  }
  EXPECT_GT(best, 1.0);
  EXPECT_NEAR(where, 1.0, 0.2);
}

TEST(GafH, IsTheFourierTransformOfG) {
  const RadialProfile g = gaf_g_profile();
  for (double s : {0.0, 0.4, 1.0, 1.7}) EXPECT_NEAR(radial_fourier(g, s), gaf_h(s), 1e-6) << "s=" << s;
}

TEST(GafH, PerturbationHookRestores) {
  const double exact = gaf_h(1.0);
  detail::set_gaf_h_perturbation(1e-3);
  EXPECT_EQ(detail::gaf_h_perturbation(), 1e-3);
  EXPECT_GT(std::abs(gaf_h(1.0) - exact), 1e-4);
  detail::set_gaf_h_perturbation(0.0);
  EXPECT_EQ(gaf_h(1.0), exact);
}

TEST(GafI, ClosedFormAndQuadrature) {
  EXPECT_NEAR(gaf_I(2.0), oracle::kGafI2, 1e-13);
  EXPECT_NEAR(gaf_I(0.0), 1.0, 1e-15);
  EXPECT_NEAR(gaf_I(1.0), 0.0, 1e-15);
  QuadratureSpec q;
  q.abs_tol = q.rel_tol = 1e-13;
  for (double alpha : {0.5, 3.0}) {
    const double num = integrate_halfline([alpha](double u) { return std::pow(u, alpha) * gaf_phi(u); }, q).value;
    EXPECT_NEAR(num, gaf_I(alpha), 1e-8) << "alpha=" << alpha;
  }
}

TEST(GafMatrices, CovarianceStructure) {
  const std::vector<cd> z{cd(0.0, 0.0), cd(0.5, -0.2), cd(-0.3, 0.7)};
  const GafMatrices m = gaf_matrices(z, pi);
  EXPECT_NEAR((m.A - m.A.adjoint()).norm(), 0.0, 1e-14);
  EXPECT_NEAR((m.C - m.C.adjoint()).norm(), 0.0, 1e-14);
  // E|f(z)|^2 = e^{L |z|^2}.
  EXPECT_NEAR(m.A(1, 1).real(), std::exp(pi * std::norm(z[1])), 1e-12);
  // E f'(z) conj f(w) = L conj(w) e^{L z conj w}.
  EXPECT_NEAR(std::abs(m.B(1, 2) - pi * std::conj(z[2]) * std::exp(pi * z[1] * std::conj(z[2]))), 0.0, 1e-12);
}

TEST(GafKpoint, TwoPointMatchesOneMinusG) {
  for (double r : {0.3, 0.6, 1.0, 1.5}) {
    const std::vector<cd> z{cd(0.0, 0.0), cd(r, 0.0)};
    EXPECT_NEAR(gaf_kpoint(z), 1.0 - gaf_g(r), 1e-8) << "r=" << r;
  }
}

TEST(GafKpoint, OnePointIntensityIsLOverPi) {
  const std::vector<cd> z{cd(0.4, 0.1)};
  EXPECT_NEAR(gaf_kpoint(z), 1.0, 1e-12);
  EXPECT_NEAR(gaf_kpoint(z, 2.0 * pi), 2.0, 1e-12);
}

TEST(GafKpoint, TranslationInvariant) {
  const std::vector<cd> a{cd(0.0, 0.0), cd(0.4, 0.0), cd(0.1, 0.5)};
  std::vector<cd> b = a;
  for (cd& z : b) z += cd(0.7, -0.3);
  EXPECT_NEAR(gaf_kpoint(a), gaf_kpoint(b), 1e-9);
}

TEST(GafKpoint, SingularConfigurationsThrow) {
  const std::vector<cd> z{cd(0.2, 0.0), cd(0.2, 0.0)};
  EXPECT_THROW(gaf_kpoint(z), NumericFailure);
  const std::vector<cd> many(7, cd(0.0, 0.0));
  EXPECT_THROW(gaf_kpoint(many), InvalidArgument);
}
