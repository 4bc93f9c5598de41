#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#include <cblas.h>

#include <string>

#include "diffrakt/error.hpp"
#include "internal/linalg.hpp"

namespace diffrakt::detail {

SymmetricEigen symmetric_eigen(Eigen::MatrixXd a) {
  const auto n = static_cast<lapack_int>(a.rows());
  SymmetricEigen out;
  out.values.resize(n);
  if (n == 0) return out;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, out.values.data());
  if (info != 0) throw NumericFailure("dsyevd failed with info " + std::to_string(info));
  out.vectors = std::move(a);
  return out;
}

void multiply(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Eigen::MatrixXd& c) {
  c.resize(a.rows(), b.cols());
  if (a.rows() == 0 || b.cols() == 0) return;
  if (a.cols() == 0) {
    c.setZero();
    return;
  }
  cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(a.rows()),
              static_cast<int>(b.cols()), static_cast<int>(a.cols()), 1.0, a.data(),
              static_cast<int>(a.rows()), b.data(), static_cast<int>(b.rows()), 0.0, c.data(),
              static_cast<int>(c.rows()));
}

std::vector<std::complex<double>> general_eigenvalues(Eigen::MatrixXcd a) {
  const auto n = static_cast<lapack_int>(a.rows());
  std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
  if (n == 0) return w;
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, w.data(),
                                        nullptr, 1, nullptr, 1);
  if (info != 0) throw NumericFailure("zgeev failed with info " + std::to_string(info));
  return w;
}

std::vector<std::complex<double>> hessenberg_eigenvalues(Eigen::MatrixXcd h) {
  const auto n = static_cast<lapack_int>(h.rows());
  std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
  if (n == 0) return w;
  const lapack_int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, 1, n, h.data(), n,
                                         w.data(), nullptr, 1);
  if (info != 0) throw NumericFailure("zhseqr failed with info " + std::to_string(info));
  return w;
}

}  // namespace diffrakt::detail
