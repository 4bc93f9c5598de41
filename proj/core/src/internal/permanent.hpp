#pragma once

#include <complex>

#include <Eigen/Dense>

namespace diffrakt::detail {

// Ryser's formula, O(2^n n^2).
inline std::complex<double> permanent(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  std::complex<double> total = 0.0;
  for (unsigned subset = 1; subset < (1u << n); ++subset) {
    std::complex<double> prod = 1.0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> row = 0.0;
      for (int j = 0; j < n; ++j)
        if (subset & (1u << j)) row += a(i, j);
      prod *= row;
    }
    const int size = __builtin_popcount(subset);
    total += ((n - size) % 2 == 0) ? prod : -prod;
  }
  return total;
}

}  // namespace diffrakt::detail
