#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "procctl/control_fields.hpp"
#include "procctl/objectives.hpp"
#include "procctl/process_dynamics.hpp"

namespace procctl {

struct KrotovConfig {
  int max_iters = 6000;
  double j_tolerance = 1e-10;
  double zeta_a = 0.0;
  double zeta_b = 0.0;
  std::optional<double> a_override; // fixed Abar, bypasses the ansatz
  int retry_limit = 5;
  // A rejected step whose monotonicity violation is below this is the
  // discretization noise floor: treated as convergence at the previous
  // iterate, so the accepted J sequence stays non-increasing.
  double stall_tolerance = 1e-7;
  int checkpoint_every = 100;
  int fixed_point_max_passes = 50;
  double fixed_point_tol = 1e-10;
};

struct IterationRecord {
  int n = 0;
  double j = 0.0;
  double f = 0.0;
  double j_f = 0.0;
  double a_n = 0.0;
  int retries = 0;
};

struct KrotovRun {
  int iterations = 0;
  ControlFieldSet fields;
  Trajectory forward;          // chi^(n) trajectory for the final fields
  double a_n = 0.0;            // ansatz value carried into the next iteration
  std::vector<IterationRecord> trace;
  bool converged = false;
  bool aborted_nonmonotonic = false;
};

/// sigma(t) = -Abar e^{zeta_B (t_f - t)}; always <= 0 for Abar >= 0.
double sigma_schedule(double t, double t_f, double a_bar, double zeta_b);

/// A = [dF + 2 Re<<dchi_f|Lambda_f>>] / <<dchi_f|dchi_f>>, then
/// Abar = max{zeta_A, 2A + zeta_A}. A zero update direction returns zeta_A.
double compute_a_ansatz(double delta_f, const Mat& delta_chi_f, const Mat& lambda_f);
double a_bar_from(double a, double zeta_a);

/// Backward costate sweep: Lambda(t_f) from the fidelity gradient, then
/// propagation by the adjoint generator at the current fields.
Trajectory backward_sweep(const LindbladModel& model, const ControlFieldSet& fields,
                          const TimeGrid& grid, const ProcessMatrix& chi_f,
                          const Objective& objective, const OperatorBasis& basis);

struct UpdateResult {
  ControlFieldSet fields;
  Trajectory forward;
  int max_fixed_point_passes = 0;
};

/// Sequential (immediate-feedback) forward update: at each midpoint the field
/// solves the implicit update equation by fixed-point iteration against the
/// freshly propagated chi^(n+1).
UpdateResult update_sweep(const LindbladModel& model, const TimeGrid& grid,
                          const ControlFieldSet& fields, const Trajectory& forward_prev,
                          const Trajectory& backward, double a_bar, double zeta_b,
                          const OperatorBasis& basis, const KrotovConfig& config);

using CheckpointHook = std::function<void(const KrotovRun&)>;

/// Resumable optimizer state: fields, the carried ansatz A^(n), and the
/// trace (whose last record pins J and F of the last accepted iteration).
struct ResumeState {
  ControlFieldSet fields;
  double a_n = 0.0;
  std::vector<IterationRecord> trace;
};

/// Full monotonically convergent loop with rejection-and-retry on
/// monotonicity failures. Deterministic: resuming from a checkpoint
/// reproduces the uninterrupted run bit-exactly.
KrotovRun optimize(const LindbladModel& model, const TimeGrid& grid,
                   const ControlFieldSet& guess, const Objective& objective,
                   const KrotovConfig& config, const OperatorBasis& basis,
                   const CheckpointHook& checkpoint = {},
                   const std::optional<ResumeState>& resume = std::nullopt);

} // namespace procctl
