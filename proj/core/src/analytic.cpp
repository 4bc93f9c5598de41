#include "diffrakt/analytic.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "diffrakt/error.hpp"
#include "internal/permanent.hpp"

namespace diffrakt {

namespace {

Eigen::MatrixXcd kernel_matrix(const KernelSpec& spec, std::span<const Point> points) {
  if (points.empty() || points.size() > 8)
    throw InvalidArgument("k-point correlation: between 1 and 8 points required");
  const auto k = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      m(i, j) = kernel_value(spec, points[static_cast<std::size_t>(i)],
                             points[static_cast<std::size_t>(j)]);
  return m;
}

}  // namespace

ProcessSpec ProcessSpec::determinantal(const KernelSpec& kernel) {
  return {ProcessKind::kDeterminantal, kernel, kernel.dimension};
}
ProcessSpec ProcessSpec::permanental(const KernelSpec& kernel) {
  return {ProcessKind::kPermanental, kernel, kernel.dimension};
}
ProcessSpec ProcessSpec::cox_cosine() { return {ProcessKind::kCoxCosine, KernelSpec{}, 1}; }
ProcessSpec ProcessSpec::gaf() { return {ProcessKind::kGaf, KernelSpec{}, 2}; }
ProcessSpec ProcessSpec::poisson(int dimension) {
  return {ProcessKind::kPoisson, KernelSpec{}, dimension};
}

void ProcessSpec::check() const {
  switch (kind) {
    case ProcessKind::kDeterminantal: {
      kernel.check();
      if (dimension != kernel.dimension)
        throw InvalidArgument("process dimension does not match kernel dimension");
      const DppValidation v = validate_dpp(kernel);
      if (!v.pass)
        throw InvalidArgument("kernel " + kernel.describe() + " is not a valid DPP kernel: " + v.reason);
      break;
    }
    case ProcessKind::kPermanental:
      kernel.check();
      if (dimension != kernel.dimension)
        throw InvalidArgument("process dimension does not match kernel dimension");
      if (!kernel.translation_invariant())
        throw InvalidArgument("permanental processes need a translation-invariant kernel");
      break;
    case ProcessKind::kCoxCosine:
      if (dimension != 1) throw InvalidArgument("cox cosine process is one-dimensional");
      break;
    case ProcessKind::kGaf:
      if (dimension != 2) throw InvalidArgument("GAF zero process is two-dimensional");
      break;
    case ProcessKind::kPoisson:
      if (dimension < 1 || dimension > 3)
        throw InvalidArgument("poisson process dimension must be 1, 2 or 3");
      break;
  }
}

std::string ProcessSpec::label() const {
  switch (kind) {
    case ProcessKind::kDeterminantal: return "det:" + kernel.describe();
    case ProcessKind::kPermanental: return "perm:" + kernel.describe();
    case ProcessKind::kCoxCosine: return "cox-cosine";
    case ProcessKind::kGaf: return "gaf";
    case ProcessKind::kPoisson: return "poisson(d=" + std::to_string(dimension) + ")";
  }
  return "unknown";
}

DiffractionPair diffraction_pair(const ProcessSpec& spec) {
  spec.check();
  const int d = spec.dimension;
  switch (spec.kind) {
    case ProcessKind::kDeterminantal:
      return {assemble_autocorrelation(1.0, negated(g_profile(spec.kernel))),
              assemble_diffraction(1.0, negated(g_hat_profile(spec.kernel)))};
    case ProcessKind::kPermanental:
      return {assemble_autocorrelation(1.0, g_profile(spec.kernel)),
              assemble_diffraction(1.0, g_hat_profile(spec.kernel))};
    case ProcessKind::kCoxCosine: {
      // E X_0 X_x = 1 + cos(2 pi x) / 2.
      RadialProfile cov{1, [](double r) { return 0.5 * std::cos(2.0 * std::numbers::pi * r); },
                        "cos(2 pi r)/2"};
      SpectralMeasure gamma = assemble_autocorrelation(1.0, cov);
      SpectralMeasure gamma_hat(1, {Atom{Point{}, 1.0}, Atom{Point(-1.0), 0.25}, Atom{Point(1.0), 0.25}},
                                1.0, zero_profile(1));
      return {std::move(gamma), std::move(gamma_hat)};
    }
    case ProcessKind::kGaf:
      return {assemble_autocorrelation(1.0, negated(gaf_g_profile())),
              assemble_diffraction(1.0, negated(gaf_h_profile()))};
    case ProcessKind::kPoisson:
      return {assemble_autocorrelation(1.0, zero_profile(d)),
              assemble_diffraction(1.0, zero_profile(d))};
  }
  throw InvalidArgument("diffraction_pair: unknown process kind");
}

double kpoint_determinantal(const KernelSpec& spec, std::span<const Point> points) {
  const Eigen::MatrixXcd m = kernel_matrix(spec, points);
  return m.partialPivLu().determinant().real();
}

double kpoint_permanental(const KernelSpec& spec, std::span<const Point> points) {
  return detail::permanent(kernel_matrix(spec, points)).real();
}

}  // namespace diffrakt
