// Post-solve analysis: the bordered-trace identity, the nondegeneracy
// certificate matrix built from a feasible point and its exposing vector,
// and an alternating-projection helper for producing feasible points.
#pragma once

#include <vector>

#include "edm/matrix.hpp"

namespace edm {

// For the bordered matrix B with zero leading block, last column a and corner
// c, returns {trace(A*B), (last row of A) . [2a; c]} — equal for symmetric A.
std::pair<double, double> bordered_trace(const SymMatrix& A,
                                      const std::vector<double>& a, double c);

struct NondegeneracyReport {
  Matrix M;                    // (dim+1) x (dim+1) certificate matrix
  int l = 0;                   // positive eigenvalues of the reduced block
  double l_q = 0.0;            // partial trace of QHQ over those directions
  double smallest_singular_value = 0.0;
  double largest_singular_value = 0.0;
  bool invertible = false;     // singular value ratio > 1e-10
  bool boundary = false;       // l = 0 (e.g. D = 0): certificate uninformative
};

// Builds the nondegeneracy certificate for a feasible D (zero diagonal,
// <D,H> = 0, -D in the conditional PSD cone — each checked to 1e-8 relative
// tolerance, violations throw). Also verifies -QHQ is PSD.
NondegeneracyReport build_M(const SymMatrix& D, const SymMatrix& H);

// Alternating projections between the conditional PSD cone (convex, no rank
// cut) and the diagonal/trace constraint set, finished by an exact rounding:
// the final iterate is realized as a point configuration whose leading block
// is restricted to the subspace the certificate admits, so the result meets
// every constraint to machine precision. `tol` is the early-exit threshold
// for the alternation phase. Used for sampling certificate inputs.
SymMatrix project_to_feasible(const SymMatrix& start, const SymMatrix& H,
                              int max_iters = 2000, double tol = 1e-11);

}  // namespace edm
