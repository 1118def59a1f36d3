#include "edm/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "edm/core.hpp"
#include "edm/linalg.hpp"
#include "edm/projections.hpp"
#include "edm/recovery.hpp"

namespace edm {

SymMatrix subproblem_solve(const SymMatrix& A, const SymMatrix& H) {
  if (A.dim() != H.dim())
    throw std::invalid_argument("subproblem_solve: dimension mismatch");
  const std::size_t m = A.dim();

  double h_norm_sq = 0.0, h_diag_sq = 0.0, cross = 0.0, cross_diag = 0.0;
  h_norm_sq = frob_inner(H, H);
  cross = frob_inner(A, H);
  for (std::size_t i = 0; i < m; ++i) {
    h_diag_sq += H(i, i) * H(i, i);
    cross_diag += A(i, i) * H(i, i);
  }

  double y = 0.0;
  if (h_norm_sq > 0.0) {
    const double den = h_norm_sq - h_diag_sq;  // <H - Diag(diag H), H>
    if (std::fabs(den) < 1e-14)
      throw std::runtime_error(
          "subproblem_solve: certificate has no off-diagonal mass; "
          "trace multiplier undefined");
    y = -(cross - cross_diag) / den;
  }

  SymMatrix D = lincomb(1.0, A, y, H);
  D.zero_diagonal();
  return D;
}

SymMatrix frmpa_init(const SymMatrix& delta, int rank, const SymMatrix& H) {
  const Matrix X = cmds_embed(delta, rank);
  return subproblem_solve(squared_distances(X), H);
}

namespace {

double half_dist_sq(const SymMatrix& A, const SymMatrix& B) {
  const SymMatrix diff = lincomb(1.0, A, -1.0, B);
  const double n = frob_norm(diff);
  return 0.5 * n * n;
}

}  // namespace

SolveResult frmpa_run(const SymMatrix& delta, const FaceCertificate& cert,
                      const SolverConfig& cfg) {
  if (cfg.rank < 1) throw std::invalid_argument("frmpa_run: rank must be >= 1");
  if (cfg.rho <= 0.0) throw std::invalid_argument("frmpa_run: rho must be > 0");
  if (cfg.max_iter < 1)
    throw std::invalid_argument("frmpa_run: max_iter must be >= 1");
  if (delta.dim() != cert.H.dim())
    throw std::invalid_argument("frmpa_run: delta and certificate disagree");
  if (cert.gale_dim > 0 && max_abs(cert.H) == 0.0)
    throw std::invalid_argument(
        "frmpa_run: inconsistent certificate (H = 0 with positive Gale "
        "dimension)");

  const int r = cfg.rank;
  const double rho = cfg.rho;
  const SymMatrix& H = cert.H;

  SolveResult out;
  out.D = frmpa_init(delta, r, H);

  // One spectral decomposition per iteration: the projection of -D used for
  // g(D) is exactly the one the next update needs.
  SymMatrix negD = lincomb(-1.0, out.D, 0.0, out.D);
  RankCutProjection proj = project_kplus_rank(negD, r);

  const auto record_of = [&](int iter, double f, double g, double prev_frho,
                             bool first) {
    IterRecord rec;
    rec.iter = iter;
    rec.f = f;
    rec.g = g;
    rec.f_rho = f + rho * g;
    rec.f_prog = first ? std::numeric_limits<double>::quiet_NaN()
                       : std::fabs(rec.f_rho - prev_frho) / (1.0 + prev_frho);
    return rec;
  };

  double f = half_dist_sq(out.D, delta);
  double g = 0.5 * proj.dist_sq;
  out.trace.records.push_back(record_of(0, f, g, 0.0, true));
  double prev_frho = f + rho * g;

  for (int k = 1; k <= cfg.max_iter; ++k) {
    // Majorized subproblem: shrink toward Delta minus the penalty pull, then
    // project onto the constraint set.
    const SymMatrix target =
        lincomb(1.0 / (1.0 + rho), delta, -rho / (1.0 + rho), proj.projected);
    out.D = subproblem_solve(target, H);

    negD = lincomb(-1.0, out.D, 0.0, out.D);
    proj = project_kplus_rank(negD, r);
    f = half_dist_sq(out.D, delta);
    g = 0.5 * proj.dist_sq;

    if (!std::isfinite(f) || !std::isfinite(g)) {
      out.trace.abort_reason = "non-finite objective at iteration " +
                               std::to_string(k);
      out.trace.iterations = k;
      out.trace.converged = false;
      return out;
    }

    const IterRecord rec = record_of(k, f, g, prev_frho, false);
    out.trace.records.push_back(rec);
    prev_frho = rec.f_rho;
    out.trace.iterations = k;

    if (rec.f_prog < cfg.f_prog_tol) {
      out.trace.converged = true;
      break;
    }
  }
  return out;
}

double eigenratio(const SymMatrix& D, int r) {
  const std::size_t m = D.dim();
  if (r < 0 || static_cast<std::size_t>(r) > m)
    throw std::invalid_argument("eigenratio: rank out of range");
  const Matrix J = centering_matrix(m).to_matrix();
  Matrix C = matmul(J, matmul(D.to_matrix(), J));
  for (std::size_t i = 0; i < C.size(); ++i) C.data()[i] = -C.data()[i];
  const std::vector<double> lam =
      linalg::eigvals_sym(SymMatrix::from_dense(C));  // descending

  double num = 0.0, den = 0.0;
  for (int i = 0; i < r; ++i) num += lam[i];
  for (std::size_t i = 0; i + 1 < m; ++i) den += lam[i];
  if (den == 0.0) return 1.0;
  return num / den;
}

}  // namespace edm
