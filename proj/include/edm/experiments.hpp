// Experiment harness: deterministic instance generators for the six
// benchmark families, a Gauss-Newton least-squares oracle for cross-checking,
// and the bench runner that emits one row per (trial, method).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edm/core.hpp"
#include "edm/solver.hpp"

namespace edm {

enum class NoiseKind { gaussian, multiplicative_uniform };

struct ExperimentSpec {
  std::string id;        // "e1".."e6"
  std::vector<int> ns;   // anchor counts to sweep
  int r = 2;
  NoiseKind noise = NoiseKind::gaussian;
  double noise_param = 0.0;  // stddev for gaussian, eta for multiplicative
  int trials = 100;
  std::uint64_t seed = 1729;
  bool replay = false;   // e1 only: use the published measurement vector
  bool inside = false;   // e6 only: place the source at the origin
};

// Canonical configuration for each experiment id; throws on unknown ids.
ExperimentSpec default_spec(const std::string& id);

// Deterministic: the instance depends only on (seed, id, trial, n, flags).
// Anchor geometry is exact; noise perturbs only the source measurements.
Instance generate(const ExperimentSpec& spec, int n, int trial);

struct OracleResult {
  std::vector<double> estimate;
  double objective = 0.0;  // sum of squared plain-distance residuals
  int iterations = 0;      // Gauss-Newton steps across all restarts
};

// Least-squares reference: minimize sum_i (||x - a_i|| - delta_i)^2 by
// Gauss-Newton from uniform restarts in the anchor bounding box; divergent
// starts are discarded. Deterministic for a fixed seed.
OracleResult gauss_newton_oracle(const Instance& inst, int restarts = 20,
                                 std::uint64_t seed = 1729);

struct BenchRow {
  std::string experiment;
  int trial = 0;
  std::string method;  // "FRMPA" or "oracle"
  int n = 0;
  int r = 0;
  double noise = 0.0;
  std::optional<double> err;         // squared position error
  std::optional<double> c_re;        // relative error
  std::optional<double> eigenratio;  // FRMPA rows only
  double time_s = 0.0;
  int iters = 0;
  bool converged = false;
};

struct BenchAggregates {
  double mean_err_frmpa = 0.0;
  double mean_err_oracle = 0.0;
  double mean_time_frmpa = 0.0;
  double mean_time_oracle = 0.0;
  double frac_eigenratio_ge_09 = 0.0;  // among FRMPA rows
};

struct BenchResult {
  std::vector<BenchRow> rows;
  BenchAggregates agg;
};

BenchResult run_experiment(const ExperimentSpec& spec, const SolverConfig& cfg);

// CSV schema: experiment,trial,method,n,r,noise,err,c_re,eigenratio,time_s,
// iters,converged — optional fields print as empty cells.
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);
nlohmann::json bench_to_json(const BenchResult& result,
                             const ExperimentSpec& spec,
                             const SolverConfig& cfg);

}  // namespace edm
