#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "edm/experiments.hpp"
#include "edm/facial.hpp"
#include "edm/recovery.hpp"
#include "edm/rng.hpp"
#include "edm/solver.hpp"
#include "helpers.hpp"

using edm::ExperimentSpec;
using edm::Instance;
using edm::Matrix;
using edm::SymMatrix;

TEST_CASE("default_spec pins the published configurations") {
  const auto e1 = edm::default_spec("e1");
  CHECK(e1.ns == std::vector<int>{5});
  CHECK(e1.r == 2);
  CHECK(e1.noise == edm::NoiseKind::gaussian);
  CHECK(e1.noise_param == doctest::Approx(std::sqrt(0.1)));
  CHECK(e1.trials == 1);
  CHECK(e1.seed == 1729);

  const auto e2 = edm::default_spec("e2");
  CHECK(e2.ns == std::vector<int>{5});
  CHECK(e2.noise_param == doctest::Approx(90.0));

  const auto e3 = edm::default_spec("e3");
  CHECK(e3.noise_param == doctest::Approx(0.1));
  CHECK(e3.trials == 100);

  const auto e4 = edm::default_spec("e4");
  CHECK(e4.ns == std::vector<int>{4, 5, 8, 10});
  CHECK(e4.noise_param == doctest::Approx(std::sqrt(20.0)));

  const auto e5 = edm::default_spec("e5");
  CHECK(e5.ns == std::vector<int>{10});
  CHECK(e5.r == 3);
  CHECK(e5.noise == edm::NoiseKind::multiplicative_uniform);
  CHECK(e5.noise_param == doctest::Approx(0.2));

  const auto e6 = edm::default_spec("e6");
  CHECK(e6.ns == std::vector<int>{5});
  CHECK(e6.r == 3);
  CHECK(e6.noise_param == doctest::Approx(std::sqrt(0.1)));

  CHECK_THROWS_AS(edm::default_spec("e7"), std::invalid_argument);
  CHECK_THROWS_AS(edm::default_spec(""), std::invalid_argument);
}

TEST_CASE("generate is bitwise deterministic per (seed, id, trial)") {
  const ExperimentSpec spec = edm::default_spec("e3");
  const Instance a = edm::generate(spec, 5, 7);
  const Instance b = edm::generate(spec, 5, 7);
  REQUIRE(a.delta.dim() == b.delta.dim());
  for (std::size_t i = 0; i < a.delta.dim(); ++i)
    for (std::size_t j = 0; j < a.delta.dim(); ++j)
      CHECK(a.delta(i, j) == b.delta(i, j));
  for (std::size_t i = 0; i < a.anchors.size(); ++i)
    CHECK(a.anchors.data()[i] == b.anchors.data()[i]);

  // Different trials draw different geometry.
  const Instance c = edm::generate(spec, 5, 8);
  bool differs = false;
  for (std::size_t i = 0; i < a.anchors.size(); ++i)
    if (a.anchors.data()[i] != c.anchors.data()[i]) differs = true;
  CHECK(differs);

  // Different seeds differ too.
  ExperimentSpec other = spec;
  other.seed = 1730;
  const Instance d = edm::generate(other, 5, 7);
  differs = false;
  for (std::size_t i = 0; i < a.anchors.size(); ++i)
    if (a.anchors.data()[i] != d.anchors.data()[i]) differs = true;
  CHECK(differs);
}

TEST_CASE("replayed measurements reproduce the published study") {
  ExperimentSpec spec = edm::default_spec("e1");
  spec.replay = true;
  const Instance inst = edm::generate(spec, 5, 0);
  REQUIRE(inst.n() == 5);
  REQUIRE(inst.true_source.size() == 2);
  CHECK(inst.true_source[0] == -2.0);
  CHECK(inst.true_source[1] == 3.0);
  const double meas[5] = {8.0051, 13.0112, 9.1138, 7.7924, 8.0210};
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(inst.delta(i, 5) == meas[i] * meas[i]);  // exact squares

  // Demo anchors are the fixed published geometry.
  const Matrix want = testutil::demo_anchors();
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(inst.anchors.data()[i] == want.data()[i]);
}

TEST_CASE("zero noise reproduces exact squared distances") {
  ExperimentSpec spec = edm::default_spec("e1");
  spec.noise_param = 0.0;
  const Instance inst = edm::generate(spec, 5, 0);
  // Source (-2, 3) against anchor (6, 4): 8^2 + 1^2 = 65.
  CHECK(inst.delta(0, 5) == doctest::Approx(65.0).epsilon(1e-12));

  ExperimentSpec e5 = edm::default_spec("e5");
  e5.noise_param = 0.0;
  const Instance m = edm::generate(e5, 10, 0);
  const SymMatrix full = testutil::full_edm(m.anchors, m.true_source);
  for (std::size_t i = 0; i < 10; ++i)
    CHECK(m.delta(i, 10) ==
          doctest::Approx(full(i, 10)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("anchor block always carries the exact geometry") {
  for (const char* id : {"e2", "e3", "e4", "e5", "e6"}) {
    const ExperimentSpec spec = edm::default_spec(id);
    const Instance inst = edm::generate(spec, spec.ns.front(), 3);
    const SymMatrix want = edm::squared_distances(inst.anchors);
    for (std::size_t i = 0; i < inst.n(); ++i)
      for (std::size_t j = 0; j < inst.n(); ++j)
        CHECK(inst.delta(i, j) == want(i, j));
  }
}

TEST_CASE("fixed geometries for the tower and tetrahedron layouts") {
  const Instance e2 = edm::generate(edm::default_spec("e2"), 5, 0);
  const double s3 = std::sqrt(3.0);
  CHECK(e2.anchors(1, 0) == 3000 * s3);
  CHECK(e2.anchors(2, 1) == 6000.0);
  CHECK(e2.anchors(4, 0) == -3000 * s3);
  CHECK(e2.true_source[0] == 1000.0);
  CHECK(e2.true_source[1] == 2000.0);

  const Instance e6 = edm::generate(edm::default_spec("e6"), 5, 0);
  CHECK(e6.anchors(0, 0) == 1.0);
  CHECK(e6.anchors(1, 1) == 2.0);
  CHECK(e6.anchors(3, 2) == 2.0);
  CHECK(e6.true_source == std::vector<double>{-1.0, 1.0, 1.0});

  ExperimentSpec inside = edm::default_spec("e6");
  inside.inside = true;
  const Instance e6i = edm::generate(inside, 5, 0);
  CHECK(e6i.true_source == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("multiplicative noise stays inside its band") {
  const ExperimentSpec spec = edm::default_spec("e5");
  for (int trial = 0; trial < 5; ++trial) {
    const Instance inst = edm::generate(spec, 10, trial);
    const SymMatrix full = testutil::full_edm(inst.anchors, inst.true_source);
    for (std::size_t i = 0; i < 10; ++i) {
      const double exact = std::sqrt(full(i, 10));
      const double noisy = std::sqrt(inst.delta(i, 10));
      CHECK(noisy >= exact * (1.0 - spec.noise_param) - 1e-9);
      CHECK(noisy <= exact * (1.0 + spec.noise_param) + 1e-9);
    }
  }
}

TEST_CASE("wrong anchor count for a fixed layout throws") {
  CHECK_THROWS_AS(edm::generate(edm::default_spec("e1"), 6, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(edm::generate(edm::default_spec("e6"), 4, 0),
                  std::invalid_argument);
}

TEST_CASE("gauss_newton_oracle nails noiseless instances") {
  ExperimentSpec spec = edm::default_spec("e1");
  spec.noise_param = 0.0;
  const Instance inst = edm::generate(spec, 5, 0);
  const auto res = edm::gauss_newton_oracle(inst);
  REQUIRE(res.estimate.size() == 2);
  CHECK(res.estimate[0] == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(res.estimate[1] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(res.objective <= 1e-12);
  CHECK(res.iterations > 0);

  // Deterministic: repeat bitwise.
  const auto res2 = edm::gauss_newton_oracle(inst);
  CHECK(res.estimate[0] == res2.estimate[0]);
  CHECK(res.estimate[1] == res2.estimate[1]);
  CHECK(res.iterations == res2.iterations);
}

TEST_CASE("solver and oracle agree on noiseless data") {
  ExperimentSpec spec = edm::default_spec("e3");
  spec.noise_param = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const Instance inst = edm::generate(spec, 5, trial);
    const auto cert = edm::exposing_vector(inst.anchors, inst.r);
    const auto sol = edm::frmpa_run(inst.delta, cert, edm::SolverConfig{});
    const auto est = edm::recover_source(sol.D, inst.anchors, inst.r);
    const auto oracle = edm::gauss_newton_oracle(inst);
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(est[k] == doctest::Approx(oracle.estimate[k]).epsilon(1e-4));
  }
}

TEST_CASE("run_experiment emits paired rows in trial order") {
  ExperimentSpec spec = edm::default_spec("e4");
  spec.trials = 2;
  const auto result = edm::run_experiment(spec, edm::SolverConfig{});
  REQUIRE(result.rows.size() == 16);  // 4 sizes x 2 trials x 2 methods

  std::size_t k = 0;
  for (int n : {4, 5, 8, 10}) {
    for (int trial = 0; trial < 2; ++trial) {
      const auto& fr = result.rows[k++];
      const auto& orc = result.rows[k++];
      CHECK(fr.method == "FRMPA");
      CHECK(orc.method == "oracle");
      CHECK(fr.n == n);
      CHECK(orc.n == n);
      CHECK(fr.trial == trial);
      CHECK(orc.trial == trial);
      CHECK(fr.experiment == "e4");
      CHECK(fr.eigenratio.has_value());
      CHECK_FALSE(orc.eigenratio.has_value());
      CHECK(fr.err.has_value());
      CHECK(orc.err.has_value());
      CHECK(fr.time_s >= 0.0);
      CHECK(fr.r == 2);
    }
  }
  CHECK(result.agg.mean_err_frmpa > 0.0);
  CHECK(result.agg.mean_err_oracle >= 0.0);

  // Reruns agree on everything except wall time.
  const auto again = edm::run_experiment(spec, edm::SolverConfig{});
  REQUIRE(again.rows.size() == result.rows.size());
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    CHECK(result.rows[i].err.value() == again.rows[i].err.value());
    CHECK(result.rows[i].iters == again.rows[i].iters);
  }
}

TEST_CASE("CSV schema is stable") {
  ExperimentSpec spec = edm::default_spec("e1");
  spec.replay = true;
  const auto result = edm::run_experiment(spec, edm::SolverConfig{});
  std::ostringstream os;
  edm::write_bench_csv(os, result.rows);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header ==
        "experiment,trial,method,n,r,noise,err,c_re,eigenratio,time_s,iters,"
        "converged");
  std::string row;
  int rows = 0;
  while (std::getline(is, row)) {
    if (row.empty()) continue;
    ++rows;
    // Twelve fields means eleven commas.
    CHECK(std::count(row.begin(), row.end(), ',') == 11);
  }
  CHECK(rows == 2);
}

TEST_CASE("JSON export carries provenance metadata") {
  ExperimentSpec spec = edm::default_spec("e1");
  spec.replay = true;
  const auto result = edm::run_experiment(spec, edm::SolverConfig{});
  const auto j = edm::bench_to_json(result, spec, edm::SolverConfig{});
  CHECK(j["metadata"]["experiment"] == "e1");
  CHECK(j["metadata"]["generator"] == std::string(edm::rng::kGeneratorName));
  CHECK(j["metadata"]["seed"] == 1729);
  CHECK(j["metadata"]["replay"] == true);
  CHECK(j["metadata"]["n"] == std::vector<int>{5});
  CHECK(j["metadata"]["solver"]["rho"] == 0.1);
  CHECK(j["metadata"]["kernel_backend"].is_string());
  CHECK(j["aggregates"].contains("frac_eigenratio_ge_09"));
  CHECK(j["rows"].size() == 2);
}
