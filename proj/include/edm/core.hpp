// Core geometric objects: the kappa map between Gram and squared-distance
// form, centering/basis/Householder constructions, the diagonal-plus-trace
// constraint map, and localization problem instances.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edm/matrix.hpp"

namespace edm {

// K(Y)_ij = Y_ii + Y_jj - 2 Y_ij: Gram matrix to squared distances.
SymMatrix kappa_map(const SymMatrix& Y);

// J_m = I - ee^T/m.
SymMatrix centering_matrix(std::size_t m);

// m x (m-1) orthonormal basis of {e}^perp: V^T V = I, V^T e = 0, V V^T = J_m.
Matrix build_V(std::size_t m);

// Symmetric orthogonal Q = I - y y^T/(m + sqrt(m)), y = (1,...,1, sqrt(m)+1):
// Q^2 = I and Q maps the last unit vector to -e/sqrt(m).
SymMatrix householder_Q(std::size_t m);

// B(D) = [diag(D); <D, H>], length dim+1.
std::vector<double> b_apply(const SymMatrix& D, const SymMatrix& H);

// B*(y) = Diag(y_1..y_dim) + y_{dim+1} * H.
SymMatrix b_adjoint(const std::vector<double>& y, const SymMatrix& H);

// A localization instance: n anchor rows in R^r, an optional true source, and
// the (n+1)x(n+1) squared-dissimilarity matrix whose last index is the source.
struct Instance {
  Matrix anchors;                  // n x r
  std::vector<double> true_source; // empty when unknown
  int r = 0;
  SymMatrix delta;                 // (n+1) x (n+1)

  std::size_t n() const { return anchors.rows(); }
};

// Builds delta from exact anchor geometry plus measured source-anchor
// distances (plain, not squared); negative measurements clamp to zero before
// squaring. Requires n >= r+1 and one measurement per anchor.
Instance assemble_instance(const Matrix& anchors,
                           const std::vector<double>& source_distances, int r,
                           const std::vector<double>* true_source = nullptr);

// Structural checks shared by assembly and deserialization; throws on
// violation (square/symmetric delta, zero diagonal, nonnegative entries,
// anchor block consistent with the anchor geometry, n >= r+1).
void validate_instance(const Instance& inst);

nlohmann::json matrix_to_json(const Matrix& A);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

}  // namespace edm
