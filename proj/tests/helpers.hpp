// Shared fixtures for the unit tests.
#pragma once

#include <vector>

#include "edm/matrix.hpp"
#include "edm/rng.hpp"

namespace testutil {

// Five demo anchors in the plane plus a source; small integers so every
// derived quantity is easy to check by hand.
inline edm::Matrix demo_anchors() {
  edm::Matrix P(5, 2);
  const double pts[5][2] = {{6, 4}, {0, -10}, {5, -3}, {1, -4}, {3, -3}};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 2; ++j) P(i, j) = pts[i][j];
  return P;
}

inline std::vector<double> demo_source() { return {-2.0, 3.0}; }

// Full 6x6 squared-distance matrix of the demo anchors plus source.
inline edm::SymMatrix demo_full_edm() {
  const edm::Matrix A = demo_anchors();
  edm::Matrix all(6, 2);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 2; ++j) all(i, j) = A(i, j);
  all(5, 0) = -2.0;
  all(5, 1) = 3.0;
  return edm::squared_distances(all);
}

// Squared-distance matrix of an arbitrary anchor set plus one source row.
inline edm::SymMatrix full_edm(const edm::Matrix& anchors,
                               const std::vector<double>& src) {
  edm::Matrix all(anchors.rows() + 1, anchors.cols());
  for (std::size_t i = 0; i < anchors.rows(); ++i)
    for (std::size_t j = 0; j < anchors.cols(); ++j) all(i, j) = anchors(i, j);
  for (std::size_t j = 0; j < anchors.cols(); ++j)
    all(anchors.rows(), j) = src[j];
  return edm::squared_distances(all);
}

inline edm::Matrix random_points(std::size_t n, std::size_t r,
                                 std::uint64_t seed, double lo = -10.0,
                                 double hi = 10.0) {
  edm::rng::Xoshiro256pp gen(seed);
  edm::Matrix P(n, r);
  for (std::size_t i = 0; i < P.size(); ++i) P.data()[i] = gen.uniform(lo, hi);
  return P;
}

// Random symmetric matrix with zero diagonal.
inline edm::SymMatrix random_hollow(std::size_t n, std::uint64_t seed,
                                    double scale = 5.0) {
  edm::rng::Xoshiro256pp gen(seed);
  edm::SymMatrix S(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      S.set(i, j, gen.uniform(-scale, scale));
  return S;
}

// Random symmetric matrix, diagonal included.
inline edm::SymMatrix random_sym(std::size_t n, std::uint64_t seed,
                                 double scale = 2.0) {
  edm::rng::Xoshiro256pp gen(seed);
  edm::SymMatrix S(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) S.set(i, j, gen.uniform(-scale, scale));
  return S;
}

}  // namespace testutil
