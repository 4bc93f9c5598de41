#pragma once

#include <span>
#include <string>

#include "diffrakt/gaf.hpp"
#include "diffrakt/kernels.hpp"
#include "diffrakt/measures.hpp"

namespace diffrakt {

enum class ProcessKind { kDeterminantal, kPermanental, kCoxCosine, kGaf, kPoisson };

struct ProcessSpec {
  ProcessKind kind = ProcessKind::kPoisson;
  // Read for determinantal and permanental processes only.
  KernelSpec kernel;
  int dimension = 1;

  static ProcessSpec determinantal(const KernelSpec& kernel);
  static ProcessSpec permanental(const KernelSpec& kernel);
  static ProcessSpec cox_cosine();
  static ProcessSpec gaf();
  static ProcessSpec poisson(int dimension = 1);

  // Throws InvalidArgument: determinantal kernels must pass validate_dpp,
  // permanental kernels must be translation-invariant.
  void check() const;
  std::string label() const;
};

struct DiffractionPair {
  SpectralMeasure gamma;
  SpectralMeasure gamma_hat;
};

// Autocorrelation and diffraction of a density-1 process. The Cox cosine
// process carries extra diffraction atoms of mass 1/4 at +-1.
DiffractionPair diffraction_pair(const ProcessSpec& spec);

// det(K(x_i, x_j)) for k <= 8 points.
double kpoint_determinantal(const KernelSpec& spec, std::span<const Point> points);
// per(K(x_i, x_j)) for k <= 8 points (Ryser's formula).
double kpoint_permanental(const KernelSpec& spec, std::span<const Point> points);

}  // namespace diffrakt
