#include "edm/core.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace edm {

SymMatrix kappa_map(const SymMatrix& Y) {
  const std::size_t n = Y.dim();
  SymMatrix D(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      D.set(i, j, Y(i, i) + Y(j, j) - 2.0 * Y(i, j));
  return D;
}

SymMatrix centering_matrix(std::size_t m) {
  if (m == 0) throw std::invalid_argument("centering_matrix: m must be >= 1");
  SymMatrix J(m);
  const double c = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      J.set(i, j, (i == j ? 1.0 : 0.0) - c);
  return J;
}

Matrix build_V(std::size_t m) {
  if (m == 0) throw std::invalid_argument("build_V: m must be >= 1");
  const double rm = std::sqrt(static_cast<double>(m));
  Matrix V(m, m - 1);
  const double c = 1.0 / (static_cast<double>(m) + rm);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    V(0, j) = -1.0 / rm;
    for (std::size_t i = 1; i < m; ++i)
      V(i, j) = (i == j + 1 ? 1.0 : 0.0) - c;
  }
  return V;
}

SymMatrix householder_Q(std::size_t m) {
  if (m == 0) throw std::invalid_argument("householder_Q: m must be >= 1");
  const double rm = std::sqrt(static_cast<double>(m));
  std::vector<double> y(m, 1.0);
  y[m - 1] = rm + 1.0;
  SymMatrix Q(m);
  const double c = 1.0 / (static_cast<double>(m) + rm);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      Q.set(i, j, (i == j ? 1.0 : 0.0) - c * y[i] * y[j]);
  return Q;
}

std::vector<double> b_apply(const SymMatrix& D, const SymMatrix& H) {
  if (D.dim() != H.dim())
    throw std::invalid_argument("b_apply: dimension mismatch");
  std::vector<double> out(D.dim() + 1);
  for (std::size_t i = 0; i < D.dim(); ++i) out[i] = D(i, i);
  out[D.dim()] = frob_inner(D, H);
  return out;
}

SymMatrix b_adjoint(const std::vector<double>& y, const SymMatrix& H) {
  if (y.size() != H.dim() + 1)
    throw std::invalid_argument("b_adjoint: expected dim+1 multipliers");
  SymMatrix A = lincomb(y.back(), H, 0.0, H);
  for (std::size_t i = 0; i < H.dim(); ++i) A.set(i, i, A(i, i) + y[i]);
  return A;
}

Instance assemble_instance(const Matrix& anchors,
                           const std::vector<double>& source_distances, int r,
                           const std::vector<double>* true_source) {
  const std::size_t n = anchors.rows();
  if (r < 1) throw std::invalid_argument("assemble_instance: r must be >= 1");
  if (anchors.cols() != static_cast<std::size_t>(r))
    throw std::invalid_argument("assemble_instance: anchors must have r columns");
  if (n < static_cast<std::size_t>(r) + 1)
    throw std::invalid_argument("assemble_instance: need n >= r+1 anchors");
  if (source_distances.size() != n)
    throw std::invalid_argument(
        "assemble_instance: one source distance per anchor required");

  Instance inst;
  inst.anchors = anchors;
  inst.r = r;
  if (true_source) {
    if (true_source->size() != static_cast<std::size_t>(r))
      throw std::invalid_argument("assemble_instance: true_source must be in R^r");
    inst.true_source = *true_source;
  }

  inst.delta = SymMatrix(n + 1);
  const SymMatrix anchor_sq = squared_distances(anchors);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      inst.delta.set(i, j, anchor_sq(i, j));
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::max(source_distances[i], 0.0);  // clamp bad draws
    if (!std::isfinite(d))
      throw std::invalid_argument("assemble_instance: non-finite distance");
    inst.delta.set(i, n, d * d);
  }
  validate_instance(inst);
  return inst;
}

void validate_instance(const Instance& inst) {
  const std::size_t n = inst.n();
  if (inst.r < 1) throw std::invalid_argument("instance: r must be >= 1");
  if (inst.anchors.cols() != static_cast<std::size_t>(inst.r))
    throw std::invalid_argument("instance: anchors must have r columns");
  if (n < static_cast<std::size_t>(inst.r) + 1)
    throw std::invalid_argument("instance: need n >= r+1 anchors");
  if (inst.delta.dim() != n + 1)
    throw std::invalid_argument("instance: delta must be (n+1)x(n+1)");
  if (!inst.true_source.empty() &&
      inst.true_source.size() != static_cast<std::size_t>(inst.r))
    throw std::invalid_argument("instance: true_source must be in R^r");

  const double scale = std::max(1.0, max_abs(inst.delta));
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::fabs(inst.delta(i, i)) > 1e-12 * scale)
      throw std::invalid_argument("instance: delta diagonal must be zero");
    for (std::size_t j = i; j <= n; ++j) {
      const double v = inst.delta(i, j);
      if (!std::isfinite(v))
        throw std::invalid_argument("instance: non-finite delta entry");
      if (v < 0.0)
        throw std::invalid_argument("instance: delta entries must be nonnegative");
    }
  }
  const SymMatrix anchor_sq = squared_distances(inst.anchors);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double want = anchor_sq(i, j);
      if (std::fabs(inst.delta(i, j) - want) > 1e-10 * std::max(1.0, want)) {
        std::ostringstream msg;
        msg << "instance: anchor block of delta disagrees with anchor geometry "
               "at ("
            << i << "," << j << "): " << inst.delta(i, j) << " vs " << want;
        throw std::invalid_argument(msg.str());
      }
    }
}

nlohmann::json matrix_to_json(const Matrix& A) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix json must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  Matrix A(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw std::invalid_argument("matrix json has ragged rows");
    for (std::size_t c = 0; c < cols; ++c) A(i, c) = j[i][c].get<double>();
  }
  return A;
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["r"] = inst.r;
  j["anchors"] = matrix_to_json(inst.anchors);
  if (inst.true_source.empty())
    j["true_source"] = nullptr;
  else
    j["true_source"] = inst.true_source;
  j["delta"] = matrix_to_json(inst.delta.to_matrix());
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  inst.r = j.at("r").get<int>();
  inst.anchors = matrix_from_json(j.at("anchors"));
  if (j.contains("true_source") && !j.at("true_source").is_null())
    inst.true_source = j.at("true_source").get<std::vector<double>>();
  inst.delta = SymMatrix::from_dense(matrix_from_json(j.at("delta")));
  validate_instance(inst);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  f >> j;
  return instance_from_json(j);
}

void save_instance(const std::string& path, const Instance& inst) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << instance_to_json(inst).dump(2) << '\n';
}

}  // namespace edm
