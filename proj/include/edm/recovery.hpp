// Source recovery from a solved squared-distance matrix: classical MDS
// embedding, Procrustes alignment onto the known anchors, and the error
// metrics reported by the experiment harness.
#pragma once

#include <optional>
#include <vector>

#include "edm/matrix.hpp"

namespace edm {

struct CmdsDiagnostics {
  int clamped_negative = 0;  // negative eigenvalues among the top r
  int zero_filled = 0;       // coordinates filled with zeros
};

// Classical MDS at rank r: eigendecompose -1/2 J D J and scale the top
// positive eigenvectors; eigenvalues within 1e-12 of the spectral radius
// count as zero. Missing positive directions are zero-filled and reported
// through diag. Output rows are centered.
Matrix cmds_embed(const SymMatrix& D, int r, CmdsDiagnostics* diag = nullptr);

struct AlignmentResult {
  Matrix aligned;                    // every input row mapped
  Matrix rotation;                   // r x r orthogonal, reflections allowed
  std::vector<double> translation;   // length r
  bool degenerate = false;           // rank-deficient cross-covariance
};

// Rigid alignment: finds the orthogonal R and translation t minimizing
// sum_i ||p_i R + t - a_i||^2 over the first target_anchors.rows() rows of
// points, then applies the map to all rows (so trailing rows, e.g. the
// source estimate, ride along).
AlignmentResult procrustes_align(const Matrix& points,
                                 const Matrix& target_anchors);

// Squared Euclidean position error ||est - truth||^2.
double position_error(const std::vector<double>& est,
                      const std::vector<double>& truth);

// ||est - truth|| / ||truth||; throws std::domain_error when the truth is at
// the origin.
double relative_error(const std::vector<double>& est,
                      const std::vector<double>& truth);

// Embed + align in one step: returns the aligned source estimate (last row).
std::vector<double> recover_source(const SymMatrix& D, const Matrix& anchors,
                                   int r, Matrix* aligned_points = nullptr,
                                   bool* degenerate = nullptr,
                                   CmdsDiagnostics* diag = nullptr);

struct SolutionReport {
  std::vector<double> estimated_source;
  Matrix aligned_points;  // (n+1) x r, anchors then source
  std::optional<double> err;   // squared position error (needs ground truth)
  std::optional<double> c_re;  // relative error (needs nonzero ground truth)
  double eigenratio = 0.0;
  double runtime_seconds = 0.0;
  int iterations = 0;
  bool converged = false;
};

}  // namespace edm
