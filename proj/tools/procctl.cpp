// procctl — process-matrix simulation and Krotov pulse optimization.
//
// Exit codes: 0 success, 1 bad configuration / usage, 2 oracle validation
// failure (simulate), 3 optimizer aborted on a monotonicity failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "procctl/config.hpp"
#include "procctl/io.hpp"
#include "procctl/krotov.hpp"
#include "procctl/rydberg.hpp"

#include <Eigen/Core>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace procctl;

namespace {

void configure_threads() {
  if (const char* env = std::getenv("PROCCTL_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

RunConfig load_config(const std::string& path) {
  json doc = read_json_file(path);
  return parse_run_config(doc, fs::path(path).parent_path());
}

int run_simulate(const std::string& config_path, int oracle_samples_override) {
  RunConfig cfg = load_config(config_path);
  if (oracle_samples_override >= 0) cfg.oracle_samples = oracle_samples_override;
  fs::create_directories(cfg.output_dir);

  OperatorBasis basis = OperatorBasis::gell_mann(cfg.model.dim);
  ProcessMatrix chi0 = initial_process(basis);
  Trajectory traj =
      propagate(cfg.model, cfg.guess, cfg.grid, Direction::Forward, chi0.m, basis);

  ProcessMatrix chi_f{traj.points.back()};
  write_trajectory_csv(cfg.output_dir / "trajectory.csv", traj, &cfg.objective.target,
                       cfg.objective.w0);
  write_json_file(cfg.output_dir / "process_final.json",
                  process_matrix_to_json(chi_f, cfg.model.dim, basis.kind()));
  write_pulse_csv(cfg.output_dir / "pulses.csv", cfg.guess, cfg.grid);

  double f = fidelity(chi_f, cfg.objective.target, cfg.objective.w0);
  std::cout << "t_f = " << format_double(cfg.grid.t_f) << " ns, "
            << cfg.grid.n_steps << " steps\n"
            << "trace = " << format_double(chi_f.trace_real())
            << ", min eigenvalue = " << format_double(chi_f.min_eigenvalue())
            << ", hermiticity error = " << format_double(chi_f.hermiticity_error())
            << "\nF = " << format_double(f) << "\n";

  if (cfg.oracle_samples > 0) {
    ValidationReport report = validate_against_state_equation(
        cfg.model, cfg.guess, cfg.grid, cfg.oracle_samples, basis, cfg.oracle_seed,
        cfg.oracle_tolerance);
    std::cout << "oracle: " << report.samples
              << " samples, max trace distance = "
              << format_double(report.max_trace_distance)
              << (report.passed() ? " (pass)" : " (FAIL)") << "\n";
    if (!report.passed()) return 2;
  }
  return 0;
}

int run_optimize(const std::string& config_path, const std::string& resume_path) {
  RunConfig cfg = load_config(config_path);
  fs::create_directories(cfg.output_dir);

  OperatorBasis basis = OperatorBasis::gell_mann(cfg.model.dim);

  std::optional<ResumeState> resume;
  if (!resume_path.empty())
    resume = checkpoint_from_json(read_json_file(resume_path), cfg.grid);

  fs::path ckpt_path = cfg.output_dir / "checkpoint.json";
  CheckpointHook hook = [&](const KrotovRun& run) {
    write_json_file(ckpt_path, checkpoint_to_json(run));
  };

  KrotovRun run = optimize(cfg.model, cfg.grid, cfg.guess, cfg.objective, cfg.krotov,
                           basis, hook, resume);

  write_convergence_csv(cfg.output_dir / "convergence.csv", run.trace);
  write_pulse_csv(cfg.output_dir / "pulses.csv", run.fields, cfg.grid);
  for (const auto& field : run.fields)
    write_spectrum_csv(cfg.output_dir / ("spectrum_" + field.name + ".csv"),
                       pulse_spectrum(field, cfg.grid));
  ProcessMatrix chi_f{run.forward.points.back()};
  write_json_file(cfg.output_dir / "process_final.json",
                  process_matrix_to_json(chi_f, cfg.model.dim, basis.kind()));
  write_json_file(ckpt_path, checkpoint_to_json(run));

  const IterationRecord& last = run.trace.back();
  std::cout << "iterations = " << last.n << ", J = " << format_double(last.j)
            << ", F = " << format_double(last.f)
            << ", J_f = " << format_double(last.j_f) << "\n"
            << (run.converged        ? "converged\n"
                : run.aborted_nonmonotonic ? "aborted: nonmonotonic-abort\n"
                                           : "iteration limit reached\n");
  return run.aborted_nonmonotonic ? 3 : 0;
}

int run_target(const std::string& spec, const std::string& out_path,
               const std::string& omega0_mode) {
  RydbergParams params;
  if (omega0_mode == "literal")
    params.omega0_mode = Omega0Mode::Literal;
  else if (omega0_mode != "absorbed")
    throw std::invalid_argument("--omega0-mode: expected absorbed|literal");
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  ProcessMatrix target = build_target_from_spec(spec, params, basis);
  json j = process_matrix_to_json(target, 4, basis.kind());
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out_path, j);
  return 0;
}

int run_preset(const std::string& scenario_name, const std::string& out_path,
               const std::string& omega0_mode, double dt_ns) {
  RydbergParams params;
  if (omega0_mode == "literal")
    params.omega0_mode = Omega0Mode::Literal;
  else if (omega0_mode != "absorbed")
    throw std::invalid_argument("--omega0-mode: expected absorbed|literal");
  json j = preset_config(scenario_kind_from_string(scenario_name), params, dt_ns);
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out_path, j);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  configure_threads();

  CLI::App app{"Process-matrix dynamics and Krotov pulse optimization"};
  app.require_subcommand(1);

  std::string config_path, resume_path, spec, out_path;
  std::string omega0_mode = "absorbed";
  std::string scenario_name;
  double dt_ns = 1.0;
  int oracle_samples = -1;

  CLI::App* sim = app.add_subcommand("simulate", "Propagate the process matrix");
  sim->add_option("config", config_path, "Run config JSON")->required();
  sim->add_option("--oracle-samples", oracle_samples,
                  "Override state-equation oracle sample count (0 disables)");

  CLI::App* opt = app.add_subcommand("optimize", "Run the Krotov optimizer");
  opt->add_option("config", config_path, "Run config JSON")->required();
  opt->add_option("--resume", resume_path, "Checkpoint JSON to resume from");

  CLI::App* tgt = app.add_subcommand("target", "Build a target process matrix");
  tgt->add_option("spec", spec,
                  "gate:identity | gate:phase:<angle|pi> | decoherence:tf=<ns> | "
                  "depolarizing:tf=<ns>")
      ->required();
  tgt->add_option("-o,--output", out_path, "Output file (default stdout)");
  tgt->add_option("--omega0-mode", omega0_mode, "absorbed|literal");

  CLI::App* pre = app.add_subcommand("preset", "Emit a canonical scenario config");
  pre->add_option("scenario", scenario_name,
                  "gate-simulation | decoherence-suppression | passive-environment")
      ->required();
  pre->add_option("-o,--output", out_path, "Output file (default stdout)");
  pre->add_option("--omega0-mode", omega0_mode, "absorbed|literal");
  pre->add_option("--dt", dt_ns, "Grid spacing in ns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) return run_simulate(config_path, oracle_samples);
    if (opt->parsed()) return run_optimize(config_path, resume_path);
    if (tgt->parsed()) return run_target(spec, out_path, omega0_mode);
    if (pre->parsed()) return run_preset(scenario_name, out_path, omega0_mode, dt_ns);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
