#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "procctl/control_fields.hpp"
#include "procctl/krotov.hpp"
#include "procctl/operator_basis.hpp"
#include "procctl/process_dynamics.hpp"

namespace procctl {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

/// Process-matrix file: {schema, dim, basis, matrix: {re, im}}.
nlohmann::json process_matrix_to_json(const ProcessMatrix& chi, int dim, BasisKind basis);
ProcessMatrix process_matrix_from_json(const nlohmann::json& j, int* dim_out = nullptr,
                                       BasisKind* basis_out = nullptr);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Pulse CSV: t_ns, one column per field (rad/ns). Midpoint times.
void write_pulse_csv(const std::filesystem::path& path, const ControlFieldSet& fields,
                     const TimeGrid& grid);

/// Spectrum CSV: omega_rad_per_ns,magnitude.
void write_spectrum_csv(const std::filesystem::path& path,
                        const std::vector<SpectrumPoint>& spectrum);

/// Convergence CSV: n,J,F,J_f,A_n,retries.
void write_convergence_csv(const std::filesystem::path& path,
                           const std::vector<IterationRecord>& trace);

/// Per-grid-point scalar diagnostics: t_ns,trace_re,min_eigenvalue,
/// hermiticity_error[,fidelity].
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          const ProcessMatrix* target, double w0);

/// Versioned checkpoint holding fields, references, A^(n) and the trace.
nlohmann::json checkpoint_to_json(const KrotovRun& run);
ResumeState checkpoint_from_json(const nlohmann::json& j, const TimeGrid& grid);

} // namespace procctl
