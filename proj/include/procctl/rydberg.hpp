#pragma once

#include <string>

#include "procctl/control_fields.hpp"
#include "procctl/objectives.hpp"
#include "procctl/process_dynamics.hpp"

namespace procctl {

enum class Omega0Mode {
  Absorbed, // secondary rotating frame removes the -2*omega0 term on |1>
  Literal,  // keep the paper-frame entry; numerically stiff
};

/// 88Sr+ four-level parameters; basis states ordered {|0>,|1>,|i>,|r>}.
struct RydbergParams {
  double delta_p = 40.0 * kPi * 1e-3;  // rad/ns
  double delta_s = -40.0 * kPi * 1e-3; // rad/ns, default -delta_p
  double tau_i = 35.0;                 // ns
  double tau_r = 2300.0;               // ns
  double peak = 94.0 * kPi * 1e-3;     // E_m, rad/ns
  Omega0Mode omega0_mode = Omega0Mode::Absorbed;
  double omega0 = 2.0 * kPi * 299792.458 / 674e-3; // rad/ns, 2*pi*c/674nm
};

/// Rotating-frame Hamiltonian at given Rabi frequencies (rad/ns, hbar = 1).
Mat rydberg_hamiltonian(const RydbergParams& params, double omega_p, double omega_s);

/// diag(1, e^{i omega0 t mod 2pi}, 1, 1) in literal mode, identity otherwise.
Mat literal_frame_unitary(const RydbergParams& params, double t);

/// Maps a literal-frame target into the omega0-absorbed working frame by
/// conjugation with the lifted frame unitary at t_f; exact because the
/// omega0 term commutes with drift and controls and the jump phases cancel.
ProcessMatrix to_working_frame(const ProcessMatrix& target, const RydbergParams& params,
                               double t_f, const OperatorBasis& basis);

/// Drift + control split of the Hamiltonian plus the two decay channels
/// |i> -> |1> (rate 1/tau_i) and |r> -> |1> (rate 1/tau_r); jump-operator
/// rotating-frame phases dropped (dissipator-invariant).
LindbladModel rydberg_model(const RydbergParams& params);

enum class ScenarioKind { GateSimulation, DecoherenceSuppression, PassiveEnvironment };

ScenarioKind scenario_kind_from_string(const std::string& s);
std::string to_string(ScenarioKind kind);

struct Scenario {
  LindbladModel model;
  TimeGrid grid;
  ControlFieldSet guess;
  Objective objective;
};

/// Assembles model, grid, Blackman guess pulses (pump k=4 l=8, Stokes
/// k=2 l=4, g=0.16, weights 0.01) and the scenario target. dt_ns sets the
/// grid spacing (default 1 ns).
Scenario scenario(ScenarioKind kind, const RydbergParams& params,
                  const OperatorBasis& basis, double dt_ns = 1.0);

} // namespace procctl
