// Thin wrappers over LAPACK for the three factorizations the project needs.
// Eigenvalues come back in descending order throughout; everything downstream
// assumes that convention.
#pragma once

#include <vector>

#include "edm/matrix.hpp"

namespace edm::linalg {

struct EigSym {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]
};

EigSym eig_sym(const SymMatrix& A);
std::vector<double> eigvals_sym(const SymMatrix& A);  // descending

struct SvdResult {
  Matrix U;
  std::vector<double> singular_values;  // descending (LAPACK convention)
  Matrix Vt;
};

SvdResult svd(const Matrix& A);

// Solves A x = b for square A by LU with partial pivoting.
std::vector<double> solve_linear(const Matrix& A, std::vector<double> b);

}  // namespace edm::linalg
