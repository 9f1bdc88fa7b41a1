#pragma once

#include "procctl/control_fields.hpp"
#include "procctl/operator_basis.hpp"
#include "procctl/process_dynamics.hpp"
#include "procctl/types.hpp"

namespace procctl {

/// Adjoint variable Lambda; general complex, no Hermiticity imposed.
struct CostateMatrix {
  Mat m;
};

struct Objective {
  double w0 = 1.0;
  ProcessMatrix target;
};

/// Hilbert-Schmidt inner product <<A|B>> = Tr[A^dag B].
inline cx hs_inner(const Mat& a, const Mat& b) { return (a.adjoint() * b).trace(); }

/// F = -w0 Tr[chi^dag Xi] / sqrt(Tr[chi^dag chi] Tr[Xi^dag Xi]); in [-w0, 0]
/// for PSD inputs.
double fidelity(const ProcessMatrix& chi, const ProcessMatrix& target, double w0);

/// Lambda(t_f) per the normalized-overlap gradient; satisfies
/// F(chi+d) - F(chi) ~ -2 Re<<d|Lambda>> and Re<<chi|Lambda>> = 0.
CostateMatrix costate_boundary(const ProcessMatrix& chi_f, const ProcessMatrix& target,
                               double w0);

/// Rank-1 target [Xi]_ab = Tr[U C_a^dag] Tr[U C_b^dag]^* for a unitary gate.
ProcessMatrix gate_target(const Mat& u, const OperatorBasis& basis);

/// Target for free (unitary) evolution under a drift Hamiltonian:
/// gate_target(exp(-i H_s t_f)).
ProcessMatrix decoherence_suppression_target(double t_f, const Mat& h_drift,
                                             const OperatorBasis& basis);

/// Depolarizing channel on span{|1>,|i>} (identity on {|0>,|r>}) embedded in
/// dim 4, built as a Kraus sum; cross-checked against the closed form on
/// construction.
ProcessMatrix depolarizing_target(double p, const OperatorBasis& basis);

/// Closed-form depolarizing target (test oracle for the Kraus construction).
Mat depolarizing_target_closed_form(double p);

/// p(t) = (1 - e^{-6 t / tau_i}) / 2.
double error_probability(double t, double tau_i);

/// J = F(chi_f) + J_f(fields).
double total_objective(const ProcessMatrix& chi_f, const ControlFieldSet& fields,
                       const TimeGrid& grid, const Objective& objective);

} // namespace procctl
