// Command-line front end: expose / solve / certify / bench / oracle.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "edm/analysis.hpp"
#include "edm/core.hpp"
#include "edm/experiments.hpp"
#include "edm/facial.hpp"
#include "edm/kernels.hpp"
#include "edm/projections.hpp"
#include "edm/recovery.hpp"
#include "edm/rng.hpp"
#include "edm/solver.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open " + out_path);
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

json meta_block(std::uint64_t seed) {
  return json{{"generator", edm::rng::kGeneratorName},
              {"kernel_backend", edm::kernels::backend_name()},
              {"seed", seed}};
}

// Anchors come either as a JSON array of rows or as whitespace text.
edm::Matrix load_points(const std::string& path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    json j;
    f >> j;
    if (j.is_object() && j.contains("anchors"))
      return edm::matrix_from_json(j["anchors"]);
    return edm::matrix_from_json(j);
  }
  return edm::read_matrix_text_file(path);
}

json certificate_json(const edm::FaceCertificate& cert) {
  return json{{"H", edm::matrix_to_json(cert.H.to_matrix())},
              {"Z1", edm::matrix_to_json(cert.Z1)},
              {"gale_dim", cert.gale_dim},
              {"detected_affine_rank", cert.detected_affine_rank},
              {"rank_gap", cert.rank_gap},
              {"rank_mismatch", cert.rank_mismatch},
              {"warning", cert.warning}};
}

void write_trace_csv(const std::string& path, const edm::SolverTrace& trace) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "iter,f,g,f_rho,f_prog\n" << std::setprecision(17);
  for (const edm::IterRecord& rec : trace.records) {
    f << rec.iter << ',' << rec.f << ',' << rec.g << ',' << rec.f_rho << ',';
    if (rec.iter > 0) f << rec.f_prog;
    f << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-source localization via facially reduced "
               "squared-distance matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1729;
  std::string out_path;
  std::string format = "csv";
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // ---- expose ----------------------------------------------------------
  auto* expose = app.add_subcommand(
      "expose", "Build the face certificate from anchor geometry");
  std::string anchors_path;
  int expose_rank = 2;
  expose->add_option("--anchors", anchors_path,
                     "anchor file (JSON rows or whitespace text)")
      ->required();
  expose->add_option("--rank", expose_rank, "embedding dimension r");

  // ---- solve -----------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Run the penalty solver");
  std::string instance_path;
  std::string trace_path;
  edm::SolverConfig cfg;
  std::optional<int> rank_override;
  solve->add_option("--instance", instance_path, "instance JSON")->required();
  solve->add_option("--rho", cfg.rho, "penalty parameter");
  solve->add_option("--tol", cfg.f_prog_tol, "relative progress tolerance");
  solve->add_option("--max-iter", cfg.max_iter, "iteration cap");
  solve->add_option("--rank",
                    [&rank_override](const std::vector<std::string>& vals) {
                      rank_override = std::stoi(vals.front());
                      return true;
                    },
                    "rank override (default: instance r)");
  solve->add_option("--trace", trace_path, "write per-iteration CSV here");

  // ---- certify ---------------------------------------------------------
  auto* certify = app.add_subcommand(
      "certify", "Nondegeneracy certificate at a feasible point");
  std::string cert_instance_path;
  std::string solution_path;
  edm::SolverConfig cert_cfg;
  certify->add_option("--instance", cert_instance_path, "instance JSON")
      ->required();
  certify->add_option("--solution", solution_path,
                      "solution JSON from `solve` (default: solve internally)");
  certify->add_option("--rho", cert_cfg.rho, "penalty parameter");
  certify->add_option("--tol", cert_cfg.f_prog_tol, "progress tolerance");
  certify->add_option("--max-iter", cert_cfg.max_iter, "iteration cap");

  // ---- bench -----------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Run an experiment family");
  std::string experiment;
  std::optional<int> bench_trials;
  std::optional<double> noise_std, eta;
  std::vector<int> bench_ns;
  bool replay = false, inside = false;
  edm::SolverConfig bench_cfg;
  bench->add_option("--experiment", experiment, "one of e1..e6")
      ->required()
      ->check(CLI::IsMember({"e1", "e2", "e3", "e4", "e5", "e6"}));
  bench
      ->add_option("--trials",
                   [&bench_trials](const std::vector<std::string>& vals) {
                     bench_trials = std::stoi(vals.front());
                     return true;
                   },
                   "trials per n");
  bench
      ->add_option("--noise-std",
                   [&noise_std](const std::vector<std::string>& vals) {
                     noise_std = std::stod(vals.front());
                     return true;
                   },
                   "gaussian measurement stddev");
  bench
      ->add_option("--eta",
                   [&eta](const std::vector<std::string>& vals) {
                     eta = std::stod(vals.front());
                     return true;
                   },
                   "multiplicative noise level");
  bench->add_option("--n", bench_ns, "anchor counts (overrides defaults)");
  bench->add_flag("--replay", replay, "e1: use the published measurements");
  bench->add_flag("--inside", inside, "e6: source at the origin");
  bench->add_option("--rho", bench_cfg.rho, "penalty parameter");
  bench->add_option("--tol", bench_cfg.f_prog_tol, "progress tolerance");
  bench->add_option("--max-iter", bench_cfg.max_iter, "iteration cap");

  // ---- oracle ----------------------------------------------------------
  auto* oracle = app.add_subcommand(
      "oracle", "Gauss-Newton least-squares reference estimate");
  std::string oracle_instance_path;
  int restarts = 20;
  oracle->add_option("--instance", oracle_instance_path, "instance JSON")
      ->required();
  oracle->add_option("--restarts", restarts, "number of uniform restarts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (expose->parsed()) {
      const edm::Matrix anchors = load_points(anchors_path);
      const edm::FaceCertificate cert =
          edm::exposing_vector(anchors, expose_rank);
      json j = certificate_json(cert);
      j["metadata"] = meta_block(seed);
      if (!cert.warning.empty()) std::cerr << "warning: " << cert.warning << '\n';
      emit(out_path, j.dump(2));
    } else if (solve->parsed()) {
      const edm::Instance inst = edm::load_instance(instance_path);
      cfg.rank = rank_override.value_or(inst.r);
      const edm::FaceCertificate cert =
          edm::exposing_vector(inst.anchors, cfg.rank);
      const edm::SolveResult sol = edm::frmpa_run(inst.delta, cert, cfg);
      if (!trace_path.empty()) write_trace_csv(trace_path, sol.trace);

      json j;
      j["D"] = edm::matrix_to_json(sol.D.to_matrix());
      j["iterations"] = sol.trace.iterations;
      j["converged"] = sol.trace.converged;
      const edm::IterRecord& last = sol.trace.records.back();
      j["f"] = last.f;
      j["g"] = last.g;
      j["f_rho"] = last.f_rho;
      j["eigenratio"] = edm::eigenratio(sol.D, cfg.rank);
      if (!sol.trace.abort_reason.empty())
        j["abort_reason"] = sol.trace.abort_reason;
      edm::Matrix aligned;
      const std::vector<double> est =
          edm::recover_source(sol.D, inst.anchors, cfg.rank, &aligned);
      j["estimated_source"] = est;
      if (!inst.true_source.empty()) {
        j["err"] = edm::position_error(est, inst.true_source);
        double tn = 0.0;
        for (double v : inst.true_source) tn += v * v;
        if (tn > 0.0) j["c_re"] = edm::relative_error(est, inst.true_source);
      }
      j["metadata"] = meta_block(seed);
      j["metadata"]["solver"] = {{"rho", cfg.rho},
                                 {"f_prog_tol", cfg.f_prog_tol},
                                 {"max_iter", cfg.max_iter},
                                 {"rank", cfg.rank}};
      emit(out_path, j.dump(2));
    } else if (certify->parsed()) {
      const edm::Instance inst = edm::load_instance(cert_instance_path);
      cert_cfg.rank = inst.r;
      const edm::FaceCertificate cert =
          edm::exposing_vector(inst.anchors, cert_cfg.rank);
      edm::SymMatrix D(0);
      if (!solution_path.empty()) {
        std::ifstream f(solution_path);
        if (!f) throw std::runtime_error("cannot open " + solution_path);
        json j;
        f >> j;
        D = edm::SymMatrix::from_dense(edm::matrix_from_json(j.at("D")));
      } else {
        D = edm::frmpa_run(inst.delta, cert, cert_cfg).D;
      }
      // The certificate needs an exactly feasible point; polish first.
      D = edm::project_to_feasible(D, cert.H);
      const edm::NondegeneracyReport rep = edm::build_M(D, cert.H);
      json j;
      j["l"] = rep.l;
      j["l_q"] = rep.l_q;
      j["smallest_singular_value"] = rep.smallest_singular_value;
      j["largest_singular_value"] = rep.largest_singular_value;
      j["invertible"] = rep.invertible;
      j["boundary"] = rep.boundary;
      j["M"] = edm::matrix_to_json(rep.M);
      j["certificate"] = certificate_json(cert);
      j["metadata"] = meta_block(seed);
      emit(out_path, j.dump(2));
    } else if (bench->parsed()) {
      edm::ExperimentSpec spec = edm::default_spec(experiment);
      spec.seed = seed;
      if (bench_trials) spec.trials = *bench_trials;
      if (!bench_ns.empty()) spec.ns = bench_ns;
      if (noise_std) {
        spec.noise = edm::NoiseKind::gaussian;
        spec.noise_param = *noise_std;
      }
      if (eta) {
        spec.noise = edm::NoiseKind::multiplicative_uniform;
        spec.noise_param = *eta;
      }
      spec.replay = replay;
      spec.inside = inside;
      const edm::BenchResult result = edm::run_experiment(spec, bench_cfg);
      if (format == "json") {
        emit(out_path, edm::bench_to_json(result, spec, bench_cfg).dump(2));
      } else {
        std::ostringstream os;
        edm::write_bench_csv(os, result.rows);
        emit(out_path, os.str());
      }
    } else if (oracle->parsed()) {
      const edm::Instance inst = edm::load_instance(oracle_instance_path);
      const edm::OracleResult res =
          edm::gauss_newton_oracle(inst, restarts, seed);
      json j;
      j["estimate"] = res.estimate;
      j["objective"] = res.objective;
      j["iterations"] = res.iterations;
      if (!inst.true_source.empty())
        j["err"] = edm::position_error(res.estimate, inst.true_source);
      j["metadata"] = meta_block(seed);
      j["metadata"]["restarts"] = restarts;
      emit(out_path, j.dump(2));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
