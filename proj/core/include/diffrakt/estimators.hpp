#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "diffrakt/measures.hpp"
#include "diffrakt/samplers.hpp"

namespace diffrakt {

struct BinnedCurve {
  std::vector<double> abscissa;
  std::vector<double> values;
  std::vector<double> std_error;
  int n_realizations = 0;
  std::string process_label;
  std::string window;

  std::size_t size() const { return abscissa.size(); }
  // Equal lengths, strictly increasing abscissa, finite non-negative errors.
  void check() const;
};

struct EstimatorOptions {
  // Worker threads over realizations; results do not depend on it.
  int threads = 1;
};

// Density of the autocorrelation's absolutely continuous part (rho = 1) on
// n_bins radial bins of width r_max / (n_bins + 1/2), the first starting at
// half a bin width. Pairs are weighted by the inverse isotropised set
// covariance of the window. Requires r_max <= inradius / 2.
BinnedCurve estimate_pair_correlation(std::span<const PointConfiguration> samples, double r_max,
                                      int n_bins = 64, const EstimatorOptions& options = {});

// |sum_x e^{-2 pi i t.x}|^2 / vol(W).
double scattering_intensity(const PointConfiguration& config, const Point& t);

// Mean scattering intensity at each wavenumber. The abscissa is t_1 in one
// dimension and |t| otherwise and must be strictly increasing. Wavenumbers
// with |t| < 2 / diam(W) are rejected. With atom_mode the intensity is
// divided by vol(W), estimating the diffraction atom at t.
BinnedCurve estimate_scattering_intensity(std::span<const PointConfiguration> samples,
                                          std::span<const Point> wavenumbers, bool atom_mode = false,
                                          const EstimatorOptions& options = {});

// Scattering intensity averaged over the window's Fourier frequencies (k/L in
// one dimension, the (k/Lx, m/Ly) lattice for rectangles, k/(2R) lattice for
// disks) whose modulus falls in each bin [c - w/2, c + w/2) around the given
// centres. The abscissa is the mean modulus of the frequencies in each bin.
BinnedCurve estimate_scattering_binned(std::span<const PointConfiguration> samples,
                                       std::span<const double> centres, double width,
                                       const EstimatorOptions& options = {});

struct Comparison {
  double rms = 0.0;
  double sup_dev = 0.0;
  double coverage = 0.0;
  std::size_t bins = 0;
};

struct CompareOptions {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  // Bins whose abscissa lies this close to a non-central atom are skipped.
  double atom_exclusion = 0.05;
};

// Deviation of a curve from the absolutely continuous density of `analytic`.
// Coverage is the fraction of bins with |empirical - analytic| <= 3 stderr.
Comparison compare(const BinnedCurve& curve, const SpectralMeasure& analytic,
                   const CompareOptions& options = {});

// `# key=value` metadata lines, then `abscissa,value,stderr`.
void write_curve_csv(std::ostream& os, const BinnedCurve& curve);

}  // namespace diffrakt
