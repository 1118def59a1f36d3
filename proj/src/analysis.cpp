#include "edm/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "edm/core.hpp"
#include "edm/linalg.hpp"
#include "edm/projections.hpp"
#include "edm/recovery.hpp"
#include "edm/solver.hpp"

namespace edm {

std::pair<double, double> bordered_trace(const SymMatrix& A,
                                      const std::vector<double>& a, double c) {
  const std::size_t m = A.dim();
  if (m == 0 || a.size() != m - 1)
    throw std::invalid_argument("bordered_trace: border must have dim-1 entries");

  SymMatrix B(m);
  for (std::size_t i = 0; i + 1 < m; ++i) B.set(i, m - 1, a[i]);
  B.set(m - 1, m - 1, c);
  const Matrix AB = matmul(A.to_matrix(), B.to_matrix());
  double lhs = 0.0;
  for (std::size_t i = 0; i < m; ++i) lhs += AB(i, i);

  double rhs = A(m - 1, m - 1) * c;
  for (std::size_t i = 0; i + 1 < m; ++i) rhs += A(m - 1, i) * 2.0 * a[i];
  return {lhs, rhs};
}

namespace {

SymMatrix sandwich(const SymMatrix& Q, const SymMatrix& X) {
  return SymMatrix::from_dense(
      matmul(Q.to_matrix(), matmul(X.to_matrix(), Q.to_matrix())));
}

}  // namespace

NondegeneracyReport build_M(const SymMatrix& D, const SymMatrix& H) {
  const std::size_t m = D.dim();
  if (m < 2 || H.dim() != m)
    throw std::invalid_argument("build_M: need matching dims >= 2");

  // Feasibility gate: zero diagonal, orthogonal to the exposing vector,
  // and -D inside the conditional PSD cone, all to 1e-8 relative.
  const double dscale = std::max(1.0, max_abs(D));
  for (std::size_t i = 0; i < m; ++i)
    if (std::fabs(D(i, i)) > 1e-8 * dscale)
      throw std::invalid_argument("build_M: D diagonal is not zero");
  const double ip = frob_inner(D, H);
  if (std::fabs(ip) > 1e-8 * std::max(1.0, frob_norm(D) * frob_norm(H)))
    throw std::invalid_argument("build_M: <D, H> is not zero");

  const SymMatrix Q = householder_Q(m);
  SymMatrix negD = lincomb(-1.0, D, 0.0, D);
  const SymMatrix W = sandwich(Q, negD);
  SymMatrix Wlead(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i)
    for (std::size_t j = i; j + 1 < m; ++j) Wlead.set(i, j, W(i, j));

  const std::vector<double> lam = linalg::eigvals_sym(Wlead);  // descending
  const double lmax = lam.empty() ? 0.0 : std::max(lam.front(), 0.0);
  const double eig_tol = 1e-8 * std::max(1.0, lmax);
  if (!lam.empty() && lam.back() < -eig_tol)
    throw std::invalid_argument(
        "build_M: -D is outside the conditional PSD cone");

  int l = 0;
  while (l < static_cast<int>(lam.size()) && lam[l] > eig_tol) ++l;

  const SymMatrix QHQ = sandwich(Q, H);
  // The exposing vector must stay negative semidefinite in the rotated frame.
  const std::vector<double> hl = linalg::eigvals_sym(QHQ);
  if (!hl.empty() && hl.front() > 1e-8 * std::max(1.0, std::fabs(hl.back())))
    throw std::invalid_argument("build_M: -QHQ is not PSD");

  double lq = 0.0;
  for (int i = 0; i < l; ++i) lq += QHQ(i, i);

  NondegeneracyReport out;
  out.l = l;
  out.l_q = lq;
  out.boundary = (l == 0);

  const double inv_rm = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix M(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) M(i, j) = -Q(i, j) * inv_rm;
  for (int i = 0; i < l; ++i) M(i, m) = 1.0;
  M(m, m) = lq;
  // Column scaling by blockdiag(2 I_{m-1}, I_2).
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = 0; j + 1 < m; ++j) M(i, j) *= 2.0;
  out.M = M;

  const linalg::SvdResult sv = linalg::svd(M);
  out.largest_singular_value = sv.singular_values.front();
  out.smallest_singular_value = sv.singular_values.back();
  out.invertible =
      out.largest_singular_value > 0.0 &&
      out.smallest_singular_value / out.largest_singular_value > 1e-10;
  return out;
}

SymMatrix project_to_feasible(const SymMatrix& start, const SymMatrix& H,
                              int max_iters, double tol) {
  SymMatrix D = start;
  const std::size_t m = D.dim();
  for (int it = 0; it < max_iters; ++it) {
    SymMatrix negD = lincomb(-1.0, D, 0.0, D);
    const RankCutProjection onto =
        project_kplus_rank(negD, static_cast<int>(m));  // convex cone
    D = lincomb(-1.0, onto.projected, 0.0, onto.projected);
    D = subproblem_solve(D, H);

    // Residual: how far -D now is from the cone (the affine part is exact).
    negD = lincomb(-1.0, D, 0.0, D);
    const double viol =
        std::sqrt(project_kplus_rank(negD, static_cast<int>(m)).dist_sq);
    if (viol <= tol * std::max(1.0, frob_norm(D))) break;
  }
  if (m < 2) return D;

  // The constraint set meets the cone only along a shared face, so the
  // alternation converges at O(1/k) and stalls well short of tol. Land
  // exactly instead: realize the PSD part of -D as a point configuration,
  // then pull every coordinate profile of the leading block onto the
  // admissible subspace. For a certificate H with leading block -1/2 Z Z^T
  // that subspace is the orthogonal complement of the Gale space, with
  // projector I + 2 H_block; the result is a squared-distance matrix that
  // satisfies every constraint to machine precision.
  const Matrix X = cmds_embed(D, static_cast<int>(m) - 1);
  Matrix Xr = X;
  for (std::size_t c = 0; c < X.cols(); ++c) {
    for (std::size_t i = 0; i + 1 < m; ++i) {
      double v = X(i, c);
      for (std::size_t j = 0; j + 1 < m; ++j) v += 2.0 * H(i, j) * X(j, c);
      Xr(i, c) = v;
    }
  }
  return squared_distances(Xr);
}

}  // namespace edm
