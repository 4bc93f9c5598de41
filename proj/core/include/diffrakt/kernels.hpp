#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "diffrakt/measures.hpp"
#include "diffrakt/numerics.hpp"
#include "diffrakt/point.hpp"

namespace diffrakt {

enum class KernelFamily { kSine, kBall, kGauss, kExponential, kCompoundPoissonA, kCompoundPoissonB, kGinibre };

// Catalog entry for a determinantal/permanental kernel. Translation-invariant
// families satisfy K = phi_hat for a probability density phi; thinning by p
// maps K(x) to K(x / p^{1/d}) and phi(t) to p phi(t p^{1/d}).
struct KernelSpec {
  KernelFamily family = KernelFamily::kSine;
  double thinning_p = 1.0;
  int dimension = 1;
  // Only read by the exponential family: K(x) = exp(-|x| / alpha).
  double alpha = 0.5;

  static KernelSpec sine(double p = 1.0);
  static KernelSpec ball(int d, double p = 1.0);
  static KernelSpec gauss(int d, double p = 1.0);
  static KernelSpec exponential(double alpha, double p = 1.0);
  static KernelSpec compound_poisson_a(double p = 1.0);
  static KernelSpec compound_poisson_b(double p = 1.0);
  static KernelSpec ginibre(double p = 1.0);

  bool translation_invariant() const { return family != KernelFamily::kGinibre; }
  bool real_valued() const { return family != KernelFamily::kCompoundPoissonA && family != KernelFamily::kGinibre; }
  std::string id() const;
  std::string describe() const;

  // Structural checks: dimension matches the family, p > 0, alpha > 0.
  // Throws InvalidArgument.
  void check() const;
};

// String ids used by the CLI: sine, ball, gauss, exp, cpA, cpB, ginibre.
KernelFamily parse_kernel_family(std::string_view id);
std::string_view kernel_family_id(KernelFamily family);

std::complex<double> kernel_value(const KernelSpec& spec, const Point& x, const Point& y);
// K(x) for translation-invariant families (K(x, y) = K(x - y)).
std::complex<double> kernel_value(const KernelSpec& spec, const Point& x);

// phi_p(t). Throws InvalidArgument for the Ginibre family.
double spectral_density(const KernelSpec& spec, const Point& t);
double spectral_density(const KernelSpec& spec, double radius);

struct DppValidation {
  bool pass = false;
  double sup_phi = 0.0;
  double inf_phi = 0.0;
  std::string reason;
};

// 0 <= phi_p <= 1 on a 10^4 point radial grid (the operator spectrum equals
// the essential range of phi).
DppValidation validate_dpp(const KernelSpec& spec);

// K(0, r) as a radial profile for real translation-invariant families.
// Throws InvalidArgument for cpA and Ginibre.
RadialProfile kernel_profile(const KernelSpec& spec);

// g(r) = |K(0, r)|^2.
RadialProfile g_profile(const KernelSpec& spec);
// (phi * phi_-)(t) = g_hat(t), the closed form for every catalog family.
RadialProfile g_hat_profile(const KernelSpec& spec);

double integral_of_g(const KernelSpec& spec, const QuadratureSpec& quad = {});

struct SelfReproducing {
  bool value = false;
  double g_hat_at_zero = 0.0;
};

SelfReproducing is_self_reproducing(const KernelSpec& spec, const QuadratureSpec& quad = {});

// Probability masses Q(k), k = -kmax..kmax, of the compounding distribution
// underlying the compound-Poisson pair (Poisson(1) for A; symmetric +-1
// jumps with Poisson(1) count for B), truncated at total mass 1 - 1e-12.
struct LatticeDistribution {
  int offset = 0;  // masses[i] is Q(i - offset)
  std::vector<double> masses;
  double at(int k) const;
};
LatticeDistribution compound_poisson_distribution(KernelFamily family);

// Radius of the volume-1 ball in R^d.
double unit_volume_ball_radius(int d);

}  // namespace diffrakt
