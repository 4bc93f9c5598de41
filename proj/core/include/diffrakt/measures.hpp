#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "diffrakt/point.hpp"

namespace diffrakt {

// A radially symmetric function on R^d, stored as a function of the radius.
// Houses pair-correlation deficits g(r), their transforms, and kernel
// moduli.
struct RadialProfile {
  int dimension = 1;
  std::function<double(double)> eval;
  std::string label;
  // Beyond this radius the profile is zero or below double precision noise.
  // Infinity marks an algebraically decaying tail.
  double reach = std::numeric_limits<double>::infinity();
  // Typical length on which the profile varies or oscillates; used to size
  // quadrature panels.
  double length_scale = 1.0;

  double operator()(double r) const { return eval(r); }
  bool has_compact_reach() const { return reach < std::numeric_limits<double>::infinity(); }
};

RadialProfile zero_profile(int dimension);
RadialProfile negated(const RadialProfile& p);
RadialProfile scaled(const RadialProfile& p, double factor);

struct Atom {
  Point location;
  double mass = 0.0;
};

// Atoms plus an absolutely continuous part whose density with respect to
// Lebesgue measure is density_offset + profile(|t|).
class SpectralMeasure {
 public:
  SpectralMeasure(int dimension, std::vector<Atom> atoms, double density_offset,
                  RadialProfile profile);

  int dimension() const { return dimension_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double density_offset() const { return density_offset_; }
  const RadialProfile& profile() const { return profile_; }

  double density(double r) const { return density_offset_ + profile_(r); }
  // Mass of the atom at `location`, zero when there is none.
  double atom_mass_at(const Point& location, double tol = 1e-12) const;

 private:
  int dimension_;
  std::vector<Atom> atoms_;
  double density_offset_;
  RadialProfile profile_;
};

// gamma = rho delta_0 + (rho^2 + g) lambda^d. Determinantal callers pass -g.
SpectralMeasure assemble_autocorrelation(double density_1, const RadialProfile& g);
// gamma_hat = rho^2 delta_0 + (rho + g_hat) lambda^d.
SpectralMeasure assemble_diffraction(double density_1, const RadialProfile& g_hat);

// Absolutely continuous density on a radius grid (non-negative, strictly
// increasing). Atoms are never folded into the result.
std::vector<double> evaluate(const SpectralMeasure& m, std::span<const double> radius_grid);

double min_density(const SpectralMeasure& m, std::span<const double> radius_grid);

// CSV with header `r,density`.
void write_density_csv(std::ostream& os, const SpectralMeasure& m,
                       std::span<const double> radius_grid);
// CSV with header `location,mass`; multi-dimensional locations are written as
// `x;y[;z]`.
void write_atoms_csv(std::ostream& os, const SpectralMeasure& m);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace diffrakt
