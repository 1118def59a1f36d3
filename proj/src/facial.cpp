#include "edm/facial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "edm/core.hpp"
#include "edm/linalg.hpp"

namespace edm {

SymMatrix projected_gram(const Matrix& anchors) {
  const std::size_t n = anchors.rows();
  if (n < 2) throw std::invalid_argument("projected_gram: need >= 2 anchors");
  const SymMatrix dbar = squared_distances(anchors);
  const Matrix V = build_V(n);
  Matrix Y = matmul(transpose(V), matmul(dbar.to_matrix(), V));
  for (std::size_t i = 0; i < Y.size(); ++i) Y.data()[i] *= -0.5;
  return SymMatrix::from_dense(Y);
}

namespace {

struct NullSplit {
  Matrix U;  // (n-1) x detected
  GaleInfo info;
};

NullSplit null_space_of_gram(const Matrix& anchors, int r) {
  const std::size_t n = anchors.rows();
  if (r < 1) throw std::invalid_argument("gale_basis: r must be >= 1");
  if (n < static_cast<std::size_t>(r) + 1)
    throw std::invalid_argument("gale_basis: need n >= r+1 anchors");

  const SymMatrix Y = projected_gram(anchors);
  const linalg::EigSym eig = linalg::eig_sym(Y);  // descending
  const std::size_t m = Y.dim();

  const double lam_max = m > 0 ? eig.values.front() : 0.0;
  const double eps = 1e-8 * std::max(1.0, lam_max);

  std::size_t kept = 0;
  while (kept < m && eig.values[kept] > eps) ++kept;
  const std::size_t detected = m - kept;

  NullSplit out;
  out.U = Matrix(m, detected);
  for (std::size_t j = 0; j < detected; ++j)
    for (std::size_t i = 0; i < m; ++i) out.U(i, j) = eig.vectors(i, kept + j);

  out.info.expected = static_cast<int>(n) - 1 - r;
  out.info.detected = static_cast<int>(detected);
  double dropped = 0.0;
  for (std::size_t k = kept; k < m; ++k)
    dropped = std::max(dropped, std::fabs(eig.values[k]));
  out.info.rank_gap = (kept > 0 ? eig.values[kept - 1] : 0.0) - dropped;
  out.info.mismatch = out.info.detected != out.info.expected;
  if (out.info.mismatch) {
    std::ostringstream msg;
    msg << "projected Gram null dimension " << detected << " differs from n-1-r = "
        << out.info.expected << " (detected affine rank "
        << (static_cast<int>(m) - out.info.detected)
        << ", requested embedding rank " << r
        << "); trusting the spectrum";
    out.info.warning = msg.str();
  }
  return out;
}

}  // namespace

Matrix gale_basis(const Matrix& anchors, int r, GaleInfo* info) {
  NullSplit split = null_space_of_gram(anchors, r);
  if (info) *info = split.info;
  return matmul(build_V(anchors.rows()), split.U);
}

FaceCertificate exposing_vector(const Matrix& anchors, int r) {
  const std::size_t n = anchors.rows();
  NullSplit split = null_space_of_gram(anchors, r);

  FaceCertificate cert;
  cert.Z1 = matmul(build_V(n), split.U);
  cert.gale_dim = split.info.detected;
  cert.detected_affine_rank = static_cast<int>(n) - 1 - split.info.detected;
  cert.rank_gap = split.info.rank_gap;
  cert.rank_mismatch = split.info.mismatch;
  cert.warning = split.info.warning;

  cert.H = SymMatrix(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < cert.Z1.cols(); ++k)
        s += cert.Z1(i, k) * cert.Z1(j, k);
      cert.H.set(i, j, -0.5 * s);
    }
  return cert;
}

ExposureCheck verify_exposure(const FaceCertificate& cert, const SymMatrix& D) {
  if (D.dim() != cert.H.dim())
    throw std::invalid_argument("verify_exposure: dimension mismatch");
  ExposureCheck out;
  out.inner_product = frob_inner(D, cert.H);
  const double bound = 1e-8 * frob_norm(D) * frob_norm(cert.H);
  out.feasible = std::fabs(out.inner_product) <= bound;
  return out;
}

}  // namespace edm
