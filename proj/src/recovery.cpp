#include "edm/recovery.hpp"

#include <cmath>
#include <stdexcept>

#include "edm/core.hpp"
#include "edm/linalg.hpp"

namespace edm {

Matrix cmds_embed(const SymMatrix& D, int r, CmdsDiagnostics* diag) {
  if (r < 1) throw std::invalid_argument("cmds_embed: r must be >= 1");
  const std::size_t m = D.dim();
  const Matrix J = centering_matrix(m).to_matrix();
  Matrix Bd = matmul(J, matmul(D.to_matrix(), J));
  for (std::size_t i = 0; i < Bd.size(); ++i) Bd.data()[i] *= -0.5;
  const SymMatrix B = SymMatrix::from_dense(Bd);

  const linalg::EigSym eig = linalg::eig_sym(B);
  // Eigenvalues that are zero up to rounding must not leak into coordinates,
  // so anything within 1e-12 of the spectral radius counts as zero.
  const double radius =
      std::max(std::fabs(eig.values.front()), std::fabs(eig.values.back()));
  const double band = 1e-12 * std::max(1.0, radius);
  CmdsDiagnostics local;
  Matrix X(m, static_cast<std::size_t>(r));
  for (int k = 0; k < r && k < static_cast<int>(m); ++k) {
    const double lam = eig.values[k];
    if (lam > band) {
      const double s = std::sqrt(lam);
      for (std::size_t i = 0; i < m; ++i) X(i, k) = s * eig.vectors(i, k);
    } else {
      if (lam < -band) ++local.clamped_negative;
      ++local.zero_filled;  // column stays zero
    }
  }
  if (static_cast<int>(m) < r) local.zero_filled += r - static_cast<int>(m);
  if (diag) *diag = local;
  return X;
}

AlignmentResult procrustes_align(const Matrix& points,
                                 const Matrix& target_anchors) {
  const std::size_t n = target_anchors.rows();
  const std::size_t r = target_anchors.cols();
  if (points.cols() != r)
    throw std::invalid_argument("procrustes_align: dimension mismatch");
  if (points.rows() < n)
    throw std::invalid_argument(
        "procrustes_align: fewer points than target anchors");
  if (n == 0) throw std::invalid_argument("procrustes_align: no anchors");

  std::vector<double> pbar(r, 0.0), tbar(r, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < r; ++c) {
      pbar[c] += points(i, c) / static_cast<double>(n);
      tbar[c] += target_anchors(i, c) / static_cast<double>(n);
    }

  // Cross-covariance of the centered anchor sets.
  Matrix M(r, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        M(a, b) += (points(i, a) - pbar[a]) * (target_anchors(i, b) - tbar[b]);

  const linalg::SvdResult sv = linalg::svd(M);
  AlignmentResult out;
  out.rotation = matmul(sv.U, sv.Vt);
  const double smax = sv.singular_values.empty() ? 0.0 : sv.singular_values.front();
  const double smin = sv.singular_values.empty() ? 0.0 : sv.singular_values.back();
  out.degenerate = smax <= 0.0 || smin <= 1e-10 * smax;

  out.translation = tbar;
  out.aligned = Matrix(points.rows(), r);
  for (std::size_t i = 0; i < points.rows(); ++i)
    for (std::size_t b = 0; b < r; ++b) {
      double v = tbar[b];
      for (std::size_t a = 0; a < r; ++a)
        v += (points(i, a) - pbar[a]) * out.rotation(a, b);
      out.aligned(i, b) = v;
    }
  return out;
}

double position_error(const std::vector<double>& est,
                      const std::vector<double>& truth) {
  if (est.size() != truth.size())
    throw std::invalid_argument("position_error: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double d = est[i] - truth[i];
    s += d * d;
  }
  return s;
}

double relative_error(const std::vector<double>& est,
                      const std::vector<double>& truth) {
  double tn = 0.0;
  for (double v : truth) tn += v * v;
  if (tn == 0.0)
    throw std::domain_error(
        "relative_error: ground truth at the origin has no relative scale");
  return std::sqrt(position_error(est, truth) / tn);
}

std::vector<double> recover_source(const SymMatrix& D, const Matrix& anchors,
                                   int r, Matrix* aligned_points,
                                   bool* degenerate, CmdsDiagnostics* diag) {
  if (D.dim() != anchors.rows() + 1)
    throw std::invalid_argument("recover_source: D must be (n+1)x(n+1)");
  const Matrix X = cmds_embed(D, r, diag);
  const AlignmentResult al = procrustes_align(X, anchors);
  if (aligned_points) *aligned_points = al.aligned;
  if (degenerate) *degenerate = al.degenerate;
  std::vector<double> src(static_cast<std::size_t>(r));
  for (std::size_t c = 0; c < src.size(); ++c)
    src[c] = al.aligned(al.aligned.rows() - 1, c);
  return src;
}

}  // namespace edm
