#include "edm/projections.hpp"

#include <cmath>
#include <stdexcept>

#include "edm/core.hpp"
#include "edm/kernels.hpp"
#include "edm/linalg.hpp"

namespace edm {

namespace {

// Shared spectral core: given eigendata of a symmetric matrix (descending),
// rebuild sum of max(0, lambda_i) p_i p_i^T over the first r indices, with
// tiny negatives snapped to zero first.
struct SpectralCut {
  SymMatrix rebuilt;
  double cut_sq = 0.0;  // squared norm of what the cut removed
  std::vector<std::pair<double, bool>> spectrum;
};

SpectralCut spectral_cut(const linalg::EigSym& eig, std::size_t n, int r) {
  double radius = 0.0;
  for (double v : eig.values) radius = std::max(radius, std::fabs(v));
  const double snap = -1e-14 * radius;

  SpectralCut out;
  out.rebuilt = SymMatrix(n);
  out.spectrum.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double lam = eig.values[k];
    if (lam < 0.0 && lam >= snap) lam = 0.0;
    const bool kept = k < static_cast<std::size_t>(r) && lam > 0.0;
    out.spectrum.emplace_back(lam, kept);
    if (kept) {
      for (std::size_t i = 0; i < n; ++i) {
        const double w = lam * eig.vectors(i, k);
        for (std::size_t j = i; j < n; ++j)
          out.rebuilt.set(i, j, out.rebuilt(i, j) + w * eig.vectors(j, k));
      }
    } else {
      out.cut_sq += lam * lam;
    }
  }
  return out;
}

}  // namespace

SymMatrix project_psd_rank(const SymMatrix& A, int r) {
  if (r < 0) throw std::invalid_argument("project_psd_rank: r must be >= 0");
  return spectral_cut(linalg::eig_sym(A), A.dim(), r).rebuilt;
}

RankCutProjection project_kplus_rank(const SymMatrix& D, int r) {
  if (r < 0) throw std::invalid_argument("project_kplus_rank: r must be >= 0");
  const std::size_t n = D.dim();
  const Matrix J = centering_matrix(n).to_matrix();
  const SymMatrix B =
      SymMatrix::from_dense(matmul(J, matmul(D.to_matrix(), J)));

  SpectralCut cut = spectral_cut(linalg::eig_sym(B), n, r);

  RankCutProjection out;
  // projected = Pi_psd_rank(JDJ) + (D - JDJ); the distance moved is exactly
  // the spectral mass the cut removed.
  out.projected = SymMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      out.projected.set(i, j, cut.rebuilt(i, j) + D(i, j) - B(i, j));
  out.dist_sq = cut.cut_sq;
  out.spectrum_used = std::move(cut.spectrum);
  return out;
}

double h_value(const SymMatrix& D, int r) {
  const RankCutProjection p = project_kplus_rank(D, r);
  const double nrm = frob_norm(p.projected);
  return 0.5 * nrm * nrm;
}

double g_value(const SymMatrix& D, int r) {
  SymMatrix neg = lincomb(-1.0, D, 0.0, D);
  return 0.5 * project_kplus_rank(neg, r).dist_sq;
}

double g_majorization(const SymMatrix& D, const SymMatrix& A, int r) {
  if (D.dim() != A.dim())
    throw std::invalid_argument("g_majorization: dimension mismatch");
  SymMatrix negA = lincomb(-1.0, A, 0.0, A);
  const RankCutProjection p = project_kplus_rank(negA, r);
  const double pin = frob_norm(p.projected);
  const double h_at = 0.5 * pin * pin;
  const SymMatrix diff = lincomb(1.0, D, -1.0, A);
  const double cross = frob_inner(p.projected, diff);
  const double dn = frob_norm(D);
  return 0.5 * dn * dn - h_at + cross;
}

}  // namespace edm
