#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace diffrakt::detail {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k pairs with values[k]
};

// Divide-and-conquer eigendecomposition of a real symmetric matrix (lower
// triangle is read). Throws NumericFailure if LAPACK does not converge.
SymmetricEigen symmetric_eigen(Eigen::MatrixXd a);

// c = a * b through the optimised BLAS.
void multiply(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Eigen::MatrixXd& c);

// Eigenvalues of a general complex matrix (balanced QR iteration).
std::vector<std::complex<double>> general_eigenvalues(Eigen::MatrixXcd a);

// Eigenvalues of an upper Hessenberg complex matrix.
std::vector<std::complex<double>> hessenberg_eigenvalues(Eigen::MatrixXcd h);

}  // namespace diffrakt::detail
