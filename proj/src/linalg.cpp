#include "edm/linalg.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace edm::linalg {

namespace {
[[noreturn]] void fail(const char* what, int info) {
  throw std::runtime_error(std::string(what) + " failed, info=" +
                           std::to_string(info));
}
}  // namespace

EigSym eig_sym(const SymMatrix& A) {
  const lapack_int n = static_cast<lapack_int>(A.dim());
  EigSym out;
  out.values.resize(A.dim());
  Matrix work = A.to_matrix();
  std::vector<double> w(A.dim());
  if (n > 0) {
    int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'U', n, work.data(), n,
                              w.data());
    if (info != 0) fail("dsyevd", info);
  }
  // LAPACK returns ascending; flip to descending.
  out.vectors = Matrix(A.dim(), A.dim());
  for (std::size_t k = 0; k < A.dim(); ++k) {
    const std::size_t src = A.dim() - 1 - k;
    out.values[k] = w[src];
    for (std::size_t i = 0; i < A.dim(); ++i)
      out.vectors(i, k) = work(i, src);
  }
  return out;
}

std::vector<double> eigvals_sym(const SymMatrix& A) {
  const lapack_int n = static_cast<lapack_int>(A.dim());
  Matrix work = A.to_matrix();
  std::vector<double> w(A.dim());
  if (n > 0) {
    int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'U', n, work.data(), n,
                              w.data());
    if (info != 0) fail("dsyevd", info);
  }
  return std::vector<double>(w.rbegin(), w.rend());
}

SvdResult svd(const Matrix& A) {
  const lapack_int m = static_cast<lapack_int>(A.rows());
  const lapack_int n = static_cast<lapack_int>(A.cols());
  SvdResult out;
  out.U = Matrix(A.rows(), A.rows());
  out.Vt = Matrix(A.cols(), A.cols());
  out.singular_values.resize(std::min(A.rows(), A.cols()));
  if (m == 0 || n == 0) return out;
  Matrix work = A;
  std::vector<double> superb(std::max<std::size_t>(1, out.singular_values.size()));
  int info = LAPACKE_dgesvd(LAPACK_ROW_MAJOR, 'A', 'A', m, n, work.data(), n,
                            out.singular_values.data(), out.U.data(), m,
                            out.Vt.data(), n, superb.data());
  if (info != 0) fail("dgesvd", info);
  return out;
}

std::vector<double> solve_linear(const Matrix& A, std::vector<double> b) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw std::invalid_argument("solve_linear: dimension mismatch");
  const lapack_int n = static_cast<lapack_int>(A.rows());
  if (n == 0) return b;
  Matrix work = A;
  std::vector<lapack_int> ipiv(A.rows());
  int info = LAPACKE_dgesv(LAPACK_ROW_MAJOR, n, 1, work.data(), n, ipiv.data(),
                           b.data(), 1);
  if (info != 0) fail("dgesv", info);
  return b;
}

}  // namespace edm::linalg
