#include "diffrakt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "diffrakt/error.hpp"

namespace diffrakt {

RadialProfile zero_profile(int dimension) {
  return RadialProfile{dimension, [](double) { return 0.0; }, "zero", 0.0, 1.0};
}

RadialProfile negated(const RadialProfile& p) {
  RadialProfile out = p;
  out.eval = [f = p.eval](double r) { return -f(r); };
  out.label = "-" + p.label;
  return out;
}

RadialProfile scaled(const RadialProfile& p, double factor) {
  RadialProfile out = p;
  out.eval = [f = p.eval, factor](double r) { return factor * f(r); };
  return out;
}

SpectralMeasure::SpectralMeasure(int dimension, std::vector<Atom> atoms, double density_offset,
                                 RadialProfile profile)
    : dimension_(dimension),
      atoms_(std::move(atoms)),
      density_offset_(density_offset),
      profile_(std::move(profile)) {
  if (dimension_ < 1 || dimension_ > 3)
    throw InvalidArgument("SpectralMeasure: dimension must be 1, 2 or 3");
  if (!profile_.eval) throw InvalidArgument("SpectralMeasure: profile has no evaluator");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!(atoms_[i].mass >= 0.0)) throw InvalidArgument("SpectralMeasure: negative atom mass");
    for (std::size_t j = 0; j < i; ++j)
      if (atoms_[i].location == atoms_[j].location)
        throw InvalidArgument("SpectralMeasure: duplicate atom location");
  }
}

double SpectralMeasure::atom_mass_at(const Point& location, double tol) const {
  for (const Atom& a : atoms_)
    if (norm(a.location - location) <= tol) return a.mass;
  return 0.0;
}

SpectralMeasure assemble_autocorrelation(double density_1, const RadialProfile& g) {
  return SpectralMeasure(g.dimension, {Atom{Point{}, density_1}}, density_1 * density_1, g);
}

SpectralMeasure assemble_diffraction(double density_1, const RadialProfile& g_hat) {
  return SpectralMeasure(g_hat.dimension, {Atom{Point{}, density_1 * density_1}}, density_1,
                         g_hat);
}

std::vector<double> evaluate(const SpectralMeasure& m, std::span<const double> radius_grid) {
  std::vector<double> out;
  out.reserve(radius_grid.size());
  double prev = -std::numeric_limits<double>::infinity();
  for (double r : radius_grid) {
    if (!(r >= 0.0) || !(r > prev))
      throw InvalidArgument("evaluate: grid must be non-negative and strictly increasing");
    prev = r;
    out.push_back(m.density(r));
  }
  return out;
}

double min_density(const SpectralMeasure& m, std::span<const double> radius_grid) {
  const auto values = evaluate(m, radius_grid);
  return values.empty() ? std::numeric_limits<double>::infinity()
                        : *std::min_element(values.begin(), values.end());
}

void write_density_csv(std::ostream& os, const SpectralMeasure& m,
                       std::span<const double> radius_grid) {
  const auto values = evaluate(m, radius_grid);
  os << "r,density\n" << std::setprecision(17);
  for (std::size_t i = 0; i < values.size(); ++i) os << radius_grid[i] << ',' << values[i] << '\n';
}

void write_atoms_csv(std::ostream& os, const SpectralMeasure& m) {
  os << "location,mass\n" << std::setprecision(17);
  for (const Atom& a : m.atoms()) {
    for (int k = 0; k < m.dimension(); ++k) {
      if (k > 0) os << ';';
      os << a.location[k];
    }
    os << ',' << a.mass << '\n';
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

}  // namespace diffrakt
