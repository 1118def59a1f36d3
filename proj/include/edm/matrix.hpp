// Dense row-major matrices plus a symmetric wrapper with a strict
// symmetrization policy. Elementwise arithmetic funnels through the kernel
// layer; factorizations live in linalg.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace edm {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return a_.size(); }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// Symmetric matrix stored dense for easy LAPACK interop. Mutation goes
// through set() so both triangles stay in sync.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim, double fill = 0.0)
      : dim_(dim), a_(dim * dim, fill) {}

  // Accepts a square matrix whose asymmetry max|a_ij - a_ji| is at most
  // 1e-12 * max|entry| and stores (A + A^T)/2; throws otherwise.
  static SymMatrix from_dense(const Matrix& A);
  static SymMatrix identity(std::size_t n);

  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * dim_ + j];
  }
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * dim_ + j] = v;
    a_[j * dim_ + i] = v;
  }

  std::size_t dim() const { return dim_; }
  const double* data() const { return a_.data(); }
  // Direct buffer access for LAPACK fills; the caller maintains symmetry.
  double* raw() { return a_.data(); }
  std::size_t size() const { return a_.size(); }

  Matrix to_matrix() const;
  std::vector<double> diagonal() const;
  void zero_diagonal();
  double trace() const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> a_;
};

Matrix matmul(const Matrix& A, const Matrix& B);
Matrix transpose(const Matrix& A);

double frob_inner(const SymMatrix& A, const SymMatrix& B);
double frob_norm(const SymMatrix& A);
double frob_norm(const Matrix& A);
double max_abs(const SymMatrix& A);
double max_abs(const Matrix& A);

// C <- ca*A + cb*B (dimensions must agree)
SymMatrix lincomb(double ca, const SymMatrix& A, double cb, const SymMatrix& B);

// Squared pairwise distances of the rows of P (n x d) -> n x n.
SymMatrix squared_distances(const Matrix& P);

// Whitespace-delimited text: one row per line.
void write_matrix_text(std::ostream& os, const Matrix& A);
Matrix read_matrix_text(std::istream& is);
Matrix read_matrix_text_file(const std::string& path);
void write_matrix_text_file(const std::string& path, const Matrix& A);

}  // namespace edm
