// Facial reduction for the localization model: from the anchor geometry,
// build the Gale-space certificate H that exposes the smallest face of the
// squared-distance cone containing every feasible matrix.
#pragma once

#include <string>

#include "edm/matrix.hpp"

namespace edm {

struct FaceCertificate {
  SymMatrix H;      // (n+1)x(n+1); last row and column identically zero
  Matrix Z1;        // n x gale_dim, orthonormal columns
  int gale_dim = 0; // detected null dimension of the projected Gram matrix
  int detected_affine_rank = 0;
  double rank_gap = 0.0;  // smallest kept eigenvalue minus largest dropped |.|
  bool rank_mismatch = false;
  std::string warning;  // nonempty when detected affine rank != r
};

// Y = -1/2 V^T Dbar V where Dbar holds squared anchor distances; (n-1)x(n-1),
// PSD with rank equal to the affine rank of the anchor set.
SymMatrix projected_gram(const Matrix& anchors);

struct GaleInfo {
  int expected = 0;
  int detected = 0;
  double rank_gap = 0.0;
  bool mismatch = false;
  std::string warning;
};

// Z1 = V U with U an orthonormal basis of the detected null space of the
// projected Gram matrix. Eigenvalues lambda <= 1e-8 * max(1, lambda_max)
// count as zero; a count different from n-1-r is reported through info (and
// the certificate warning), never silently adjusted.
Matrix gale_basis(const Matrix& anchors, int r, GaleInfo* info = nullptr);

// Full certificate: H's leading n x n block is -1/2 Z1 Z1^T. For n = r+1 the
// null space is empty and H = 0, which is still a valid (trivial) certificate.
FaceCertificate exposing_vector(const Matrix& anchors, int r);

struct ExposureCheck {
  bool feasible = false;
  double inner_product = 0.0;
};

// Membership of D in the exposed face: feasible iff
// |<D, H>| <= 1e-8 * ||D||_F * ||H||_F.
ExposureCheck verify_exposure(const FaceCertificate& cert, const SymMatrix& D);

}  // namespace edm
