#include <doctest.h>

#include <cmath>
#include <cstddef>

#include "edm/core.hpp"
#include "edm/facial.hpp"
#include "edm/linalg.hpp"
#include "edm/projections.hpp"
#include "edm/rng.hpp"
#include "helpers.hpp"

using edm::SymMatrix;

namespace {

double inner(const SymMatrix& A, const SymMatrix& B) {
  return edm::frob_inner(A, B);
}

// A generic member of the rank-r conditional cone, made by projecting a
// random symmetric matrix.
SymMatrix random_member(std::uint64_t seed, std::size_t n, int r) {
  return edm::project_kplus_rank(testutil::random_sym(n, seed), r).projected;
}

// Independent J D J used to cross-check the library's internal centering.
SymMatrix center_conj(const SymMatrix& D) {
  const edm::Matrix J = edm::centering_matrix(D.dim()).to_matrix();
  return SymMatrix::from_dense(
      edm::matmul(edm::matmul(J, D.to_matrix()), J));
}

}  // namespace

TEST_CASE("project_psd_rank truncates the spectrum") {
  SymMatrix A(3);
  A.set(0, 0, 3.0);
  A.set(1, 1, 1.0);
  A.set(2, 2, -2.0);
  const SymMatrix P = edm::project_psd_rank(A, 1);
  CHECK(P(0, 0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(P(1, 1) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  CHECK(P(2, 2) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  CHECK(edm::max_abs(edm::lincomb(1.0, P, 0.0, P)) == doctest::Approx(3.0));

  // A rank-2 PSD matrix is a fixed point at r = 2.
  const edm::Matrix Z = testutil::random_points(5, 2, 11);
  SymMatrix G(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i; j < 5; ++j)
      G.set(i, j, Z(i, 0) * Z(j, 0) + Z(i, 1) * Z(j, 1));
  const SymMatrix PG = edm::project_psd_rank(G, 2);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(PG(i, j) == doctest::Approx(G(i, j)).epsilon(1e-9).scale(1.0));
}

TEST_CASE("a negated squared-distance matrix is a fixed point") {
  const SymMatrix D = testutil::demo_full_edm();
  const SymMatrix negD = edm::lincomb(-1.0, D, 0.0, D);
  const auto proj = edm::project_kplus_rank(negD, 2);
  CHECK(proj.dist_sq == doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      CHECK(proj.projected(i, j) ==
            doctest::Approx(negD(i, j)).epsilon(1e-9).scale(1.0));
  CHECK(edm::g_value(D, 2) == doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
}

TEST_CASE("projection dominates sampled cone members") {
  for (int c = 0; c < 5; ++c) {
    const SymMatrix D = testutil::random_sym(6, 100 + c, 3.0);
    const auto proj = edm::project_kplus_rank(D, 2);
    const SymMatrix resid = edm::lincomb(1.0, D, -1.0, proj.projected);
    const double best = edm::frob_norm(resid);
    CHECK(best * best == doctest::Approx(proj.dist_sq).epsilon(1e-9));

    edm::rng::Xoshiro256pp gen(500 + c);
    for (int s = 0; s < 200; ++s) {
      SymMatrix M = random_member(gen.next(), 6, 2);
      // Also try rescaled copies of the projection itself; the nearest point
      // must beat every one of them.
      if (s % 4 == 0)
        M = edm::lincomb(gen.uniform(0.0, 2.0), proj.projected, 0.0, M);
      const SymMatrix diff = edm::lincomb(1.0, D, -1.0, M);
      CHECK(edm::frob_norm(diff) >= best - 1e-9 * (1.0 + best));
    }
  }
}

TEST_CASE("residual is orthogonal to the projection") {
  for (int c = 0; c < 20; ++c) {
    const std::size_t n = 4 + c % 5;
    const SymMatrix D = testutil::random_sym(n, 900 + c, 4.0);
    const auto proj = edm::project_kplus_rank(D, 2);
    const SymMatrix resid = edm::lincomb(1.0, D, -1.0, proj.projected);
    const double nd = edm::frob_norm(D);
    CHECK(std::fabs(inner(resid, proj.projected)) <= 1e-9 * nd * nd);
  }
}

TEST_CASE("projection is idempotent") {
  for (int c = 0; c < 10; ++c) {
    const SymMatrix D = testutil::random_sym(6, 40 + c, 2.0);
    const auto once = edm::project_kplus_rank(D, 2);
    const auto twice = edm::project_kplus_rank(once.projected, 2);
    CHECK(twice.dist_sq <= 1e-18 * (1.0 + edm::frob_norm(D)));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        CHECK(twice.projected(i, j) ==
              doctest::Approx(once.projected(i, j)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("full-rank cut keeps every positive centered eigenvalue") {
  const SymMatrix D = testutil::random_sym(5, 7, 3.0);
  const auto full = edm::project_kplus_rank(D, 5);
  // Manual reference: project JDJ onto the PSD cone without a rank cap.
  const SymMatrix C = center_conj(D);
  const auto eig = edm::linalg::eig_sym(C);
  SymMatrix rebuilt(5);
  for (std::size_t k = 0; k < 5; ++k) {
    if (eig.values[k] <= 0.0) continue;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i; j < 5; ++j)
        rebuilt.set(i, j, rebuilt(i, j) + eig.values[k] * eig.vectors(i, k) *
                                              eig.vectors(j, k));
  }
  const SymMatrix want =
      edm::lincomb(1.0, rebuilt, 1.0, edm::lincomb(1.0, D, -1.0, C));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(full.projected(i, j) ==
            doctest::Approx(want(i, j)).epsilon(1e-9).scale(1.0));
}

TEST_CASE("penalty values: hand case and the norm-splitting identity") {
  SymMatrix negI(3);
  for (std::size_t i = 0; i < 3; ++i) negI.set(i, i, -1.0);
  CHECK(edm::g_value(negI, 1) == doctest::Approx(0.5).epsilon(1e-12));

  for (int c = 0; c < 50; ++c) {
    const std::size_t n = 4 + c % 6;
    const int r = 2 + c % 2;
    const SymMatrix D = testutil::random_sym(n, 1300 + c, 3.0);
    const SymMatrix negD = edm::lincomb(-1.0, D, 0.0, D);
    const double nrm = edm::frob_norm(D);
    const double lhs = edm::h_value(D, r);
    const double rhs = 0.5 * nrm * nrm - edm::g_value(negD, r);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("majorization is tight at the anchor and dominates elsewhere") {
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = 4 + c % 5;
    const int r = 2;
    const SymMatrix A = testutil::random_sym(n, 2000 + c, 3.0);
    const SymMatrix D = testutil::random_sym(n, 3000 + c, 3.0);
    const double gA = edm::g_value(A, r);
    const double gD = edm::g_value(D, r);
    const double scale = 1.0 + std::fabs(gD);
    CHECK(edm::g_majorization(A, A, r) == doctest::Approx(gA).epsilon(1e-10));
    CHECK(edm::g_majorization(D, A, r) >= gD - 1e-10 * scale);
  }

  // Anchored at a cone member the majorization collapses to a half squared
  // distance.
  const SymMatrix A = testutil::demo_full_edm();
  const SymMatrix D = testutil::random_sym(6, 4242, 3.0);
  const SymMatrix diff = edm::lincomb(1.0, D, -1.0, A);
  const double nd = edm::frob_norm(diff);
  CHECK(edm::g_majorization(D, A, 2) ==
        doctest::Approx(0.5 * nd * nd).epsilon(1e-9));
}

TEST_CASE("h admits its projection as a subgradient") {
  for (int c = 0; c < 50; ++c) {
    const std::size_t n = 5;
    const SymMatrix X = testutil::random_sym(n, 5000 + c, 3.0);
    const SymMatrix Y = testutil::random_sym(n, 6000 + c, 3.0);
    const auto proj = edm::project_kplus_rank(X, 2);
    const SymMatrix step = edm::lincomb(1.0, Y, -1.0, X);
    const double lower =
        edm::h_value(X, 2) + inner(proj.projected, step);
    const double hy = edm::h_value(Y, 2);
    CHECK(hy >= lower - 1e-10 * (1.0 + std::fabs(hy)));
  }
}

TEST_CASE("spectrum bookkeeping is consistent") {
  const SymMatrix D = testutil::random_sym(7, 99, 3.0);
  const auto proj = edm::project_kplus_rank(D, 2);
  const SymMatrix C = center_conj(D);
  const auto lam = edm::linalg::eigvals_sym(C);
  REQUIRE(proj.spectrum_used.size() == 7);
  double kept_sq = 0.0;
  int kept = 0;
  for (std::size_t k = 0; k < 7; ++k) {
    CHECK(proj.spectrum_used[k].first ==
          doctest::Approx(lam[k]).epsilon(1e-9).scale(1.0));
    if (proj.spectrum_used[k].second) {
      CHECK(proj.spectrum_used[k].first > 0.0);
      CHECK(k < 2);  // descending order: kept entries lead
      kept_sq += lam[k] * lam[k];
      ++kept;
    }
  }
  CHECK(kept <= 2);
  const double total = edm::frob_norm(C);
  CHECK(kept_sq + proj.dist_sq == doctest::Approx(total * total).epsilon(1e-9));
}
