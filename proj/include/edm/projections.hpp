// Closed-form projections onto the rank-cut PSD cone and the conditionally
// PSD cone it induces, plus the penalty value g and its majorization.
#pragma once

#include <utility>
#include <vector>

#include "edm/matrix.hpp"

namespace edm {

struct RankCutProjection {
  SymMatrix projected;
  double dist_sq = 0.0;  // squared distance from the input to the projection
  // Eigenvalues of the centered part in descending order, flagged kept/cut.
  std::vector<std::pair<double, bool>> spectrum_used;
};

// Nearest (in Frobenius norm) PSD matrix of rank at most r: keep the top-r
// nonnegative eigenpairs. Eigenvalues in [-1e-14 * spectral_radius, 0] are
// treated as exact zeros.
SymMatrix project_psd_rank(const SymMatrix& A, int r);

// Projection onto {D : v^T D v >= 0 for all v perp e, rank(JDJ) <= r}:
// project the centered part JDJ onto the rank-r PSD cone and carry the
// complement through unchanged.
RankCutProjection project_kplus_rank(const SymMatrix& D, int r);

// h(D) = 1/2 ||Pi(D)||^2 over the rank-r conditional cone (convex).
double h_value(const SymMatrix& D, int r);

// g(D) = 1/2 dist^2(-D, cone) = 1/2 ||D||^2 - h(-D).
double g_value(const SymMatrix& D, int r);

// Majorization of g anchored at A, tight at D = A:
// g_m(D, A) = 1/2 ||D||^2 - h(-A) + <Pi(-A), D - A>.
double g_majorization(const SymMatrix& D, const SymMatrix& A, int r);

}  // namespace edm
