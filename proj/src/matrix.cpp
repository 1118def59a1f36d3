#include "edm/matrix.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "edm/kernels.hpp"

namespace edm {

Matrix Matrix::identity(std::size_t n) {
  Matrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix I(n);
  for (std::size_t i = 0; i < n; ++i) I.set(i, i, 1.0);
  return I;
}

SymMatrix SymMatrix::from_dense(const Matrix& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("SymMatrix::from_dense: matrix not square");
  const std::size_t n = A.rows();
  double asym = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      scale = std::max(scale, std::fabs(A(i, j)));
      if (j > i) asym = std::max(asym, std::fabs(A(i, j) - A(j, i)));
    }
  if (asym > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "SymMatrix::from_dense: asymmetry " << asym
        << " exceeds 1e-12 * max|entry| = " << 1e-12 * scale;
    throw std::invalid_argument(msg.str());
  }
  SymMatrix S(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      S.set(i, j, 0.5 * (A(i, j) + A(j, i)));
  return S;
}

Matrix SymMatrix::to_matrix() const {
  Matrix A(dim_, dim_);
  for (std::size_t i = 0; i < size(); ++i) A.data()[i] = a_[i];
  return A;
}

std::vector<double> SymMatrix::diagonal() const {
  std::vector<double> d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i);
  return d;
}

void SymMatrix::zero_diagonal() {
  for (std::size_t i = 0; i < dim_; ++i) a_[i * dim_ + i] = 0.0;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows())
    throw std::invalid_argument("matmul: inner dimensions disagree");
  Matrix C(A.rows(), B.cols());
  // ikj order keeps the inner update a strided axpy over a row of B.
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const double aik = A(i, k);
      if (aik == 0.0) continue;
      kernels::axpy(aik, B.data() + k * B.cols(), C.data() + i * C.cols(),
                    B.cols());
    }
  return C;
}

Matrix transpose(const Matrix& A) {
  Matrix T(A.cols(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
  return T;
}

double frob_inner(const SymMatrix& A, const SymMatrix& B) {
  if (A.dim() != B.dim())
    throw std::invalid_argument("frob_inner: dimensions disagree");
  return kernels::dot(A.data(), B.data(), A.size());
}

double frob_norm(const SymMatrix& A) {
  return std::sqrt(kernels::dot(A.data(), A.data(), A.size()));
}

double frob_norm(const Matrix& A) {
  return std::sqrt(kernels::dot(A.data(), A.data(), A.size()));
}

double max_abs(const SymMatrix& A) {
  double m = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i)
    m = std::max(m, std::fabs(A.data()[i]));
  return m;
}

double max_abs(const Matrix& A) {
  double m = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i)
    m = std::max(m, std::fabs(A.data()[i]));
  return m;
}

SymMatrix lincomb(double ca, const SymMatrix& A, double cb, const SymMatrix& B) {
  if (A.dim() != B.dim())
    throw std::invalid_argument("lincomb: dimensions disagree");
  SymMatrix C(A.dim());
  kernels::combine(ca, A.data(), cb, B.data(), 0.0, C.raw(), C.size());
  return C;
}

SymMatrix squared_distances(const Matrix& P) {
  const std::size_t n = P.rows();
  SymMatrix D(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < P.cols(); ++k) {
        const double d = P(i, k) - P(j, k);
        s += d * d;
      }
      D.set(i, j, s);
    }
  return D;
}

void write_matrix_text(std::ostream& os, const Matrix& A) {
  os << std::setprecision(17);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (j) os << ' ';
      os << A(i, j);
    }
    os << '\n';
  }
}

Matrix read_matrix_text(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("read_matrix_text: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("read_matrix_text: empty input");
  Matrix A(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) A(i, j) = rows[i][j];
  return A;
}

Matrix read_matrix_text_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_matrix_text(f);
}

void write_matrix_text_file(const std::string& path, const Matrix& A) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  write_matrix_text(f, A);
}

}  // namespace edm
