// Majorized penalty solver for the facially reduced localization model:
// alternate the closed-form rank-cut projection with the closed-form
// projection onto the diagonal/trace constraint set until the penalized
// objective stalls.
#pragma once

#include <string>
#include <vector>

#include "edm/facial.hpp"
#include "edm/matrix.hpp"

namespace edm {

struct SolverConfig {
  double rho = 0.1;
  double f_prog_tol = 1e-4;
  int max_iter = 1000;
  int rank = 2;
};

struct IterRecord {
  int iter = 0;
  double f = 0.0;      // 1/2 ||D - Delta||^2
  double g = 0.0;      // penalty term
  double f_rho = 0.0;  // f + rho * g
  double f_prog = 0.0; // relative progress vs previous iterate (NaN at iter 0)
};

struct SolverTrace {
  std::vector<IterRecord> records;
  int iterations = 0;
  bool converged = false;
  std::string abort_reason;  // nonempty when the run hit non-finite values
};

struct SolveResult {
  SymMatrix D;
  SolverTrace trace;
};

// Exact minimizer of 1/2 ||D - A||^2 subject to diag(D) = 0 and <D, H> = 0.
// Errors when H != 0 but its off-diagonal mass vanishes (the multiplier is
// then undefined); H = 0 reduces to zeroing the diagonal.
SymMatrix subproblem_solve(const SymMatrix& A, const SymMatrix& H);

// Starting point: classical-MDS rebuild of delta at the target rank,
// projected onto the constraint set so the trace starts feasible.
SymMatrix frmpa_init(const SymMatrix& delta, int rank, const SymMatrix& H);

SolveResult frmpa_run(const SymMatrix& delta, const FaceCertificate& cert,
                      const SolverConfig& cfg);

// Top-r eigenvalue mass of -JDJ over the top-(dim-1) mass, raw signed sums
// in descending order; a zero denominator reports 1.
double eigenratio(const SymMatrix& D, int r);

}  // namespace edm
