#pragma once

#include <utility>
#include <vector>

#include "procctl/control_fields.hpp"
#include "procctl/operator_basis.hpp"
#include "procctl/types.hpp"

namespace procctl {

/// The dynamical variable chi(t): N^2 x N^2 Hermitian PSD with Tr = N.
struct ProcessMatrix {
  Mat m;

  double hermiticity_error() const;
  double min_eigenvalue() const;
  double trace_real() const { return m.trace().real(); }
};

struct LindbladModel {
  int dim = 0;
  Mat drift;                 // H_drift, rad/ns (hbar = 1)
  std::vector<Mat> controls; // H_m
  struct Jump {
    Mat op;
    double rate; // 1/ns
  };
  std::vector<Jump> jumps;

  void validate() const;
};

/// GKSL flow G(X) = -i[H(eps),X] + sum_a rate_a (L_a X L_a^dag - {L_a^dag L_a, X}/2)
/// with H(eps) = drift + sum_m eps_m * controls[m], applied matrix-free.
/// Works in any space: pass bare N x N operators for density-matrix evolution
/// or lifted N^2 x N^2 operators for process-matrix evolution.
class GkslAction {
public:
  GkslAction(Mat drift, std::vector<Mat> controls,
             std::vector<std::pair<Mat, double>> jumps);

  int space_dim() const { return static_cast<int>(drift_.rows()); }

  Mat hamiltonian(const std::vector<double>& eps) const;
  Mat apply(const Mat& x, const std::vector<double>& eps) const;
  Mat apply_adjoint(const Mat& x, const std::vector<double>& eps) const;

  /// exp(dt*G) x (or exp(dt*G^dag) x), converged to machine precision.
  /// Scaled Taylor for moderate ||dt*G||; dense Pade expm beyond that.
  Mat step(const Mat& x, const std::vector<double>& eps, double dt, bool adjoint) const;

  /// Dense flow superoperator G in row-major vectorization
  /// (vec index of (i,j) is i*D + j, so A X B lifts to kron(A, B^T)).
  Mat dense_flow(const std::vector<double>& eps) const;

private:
  double flow_norm_bound(const std::vector<double>& eps) const;

  Mat drift_;
  std::vector<Mat> controls_;
  struct JumpData {
    Mat op;
    Mat op_adj;
    Mat ldl; // L^dag L
    double rate;
  };
  std::vector<JumpData> jumps_;
};

/// Lifts a model into the Liouville representation of the given basis,
/// ready to drive the process-matrix equation.
GkslAction lift_model(const LindbladModel& model, const OperatorBasis& basis);

/// Dense generator snapshot at fixed field values, convention
/// d vec(chi)/dt = -(i/hbar) K vec(chi) with row-major vectorization.
struct GeneratorSnapshot {
  Mat k; // N^4 x N^4

  Mat flow() const { return cx(0, -1) * k; }
};

GeneratorSnapshot build_generator(const LindbladModel& model,
                                  const std::vector<double>& field_values,
                                  const OperatorBasis& basis);

/// chi(0): identity process, chi_ab = Tr[C_a^dag] Tr[C_b^dag]^*
/// (= N delta_{a,N^2} delta_{b,N^2} for a traceless basis with I/sqrt(N) last).
ProcessMatrix initial_process(const OperatorBasis& basis);

enum class Direction { Forward, BackwardAdjoint };

struct Trajectory {
  TimeGrid grid;
  std::vector<Mat> points;    // size n_steps+1, indexed by grid point
  std::vector<Mat> midpoints; // size n_steps (forward only)
};

/// Piecewise-constant-generator propagation; fields evaluated at interval
/// midpoints. Forward evolves chi by exp(dt*G); backward-adjoint evolves
/// the costate from t_f down to 0 by exp(dt*G^dag) per step, which keeps
/// <<Lambda(t)|chi(t)>> exactly constant for paired sweeps.
Trajectory propagate(const LindbladModel& model, const ControlFieldSet& fields,
                     const TimeGrid& grid, Direction direction, const Mat& initial,
                     const OperatorBasis& basis);

/// E(rho) = sum_{l,m} chi_lm C_l rho C_m^dag.
Mat apply_process(const ProcessMatrix& chi, const Mat& rho, const OperatorBasis& basis);

/// 0.5 * ||A - B||_1 for Hermitian A, B.
double trace_distance(const Mat& a, const Mat& b);

/// Random density matrix (Ginibre), deterministic in the seed.
Mat random_density_matrix(int dim, unsigned seed);

struct ValidationReport {
  int samples = 0;
  double max_trace_distance = 0.0;
  double tolerance = 1e-6;
  bool passed() const { return max_trace_distance < tolerance; }
};

/// Cross-validates the process-matrix propagation against direct
/// density-matrix Lindblad integration for random initial states.
ValidationReport validate_against_state_equation(const LindbladModel& model,
                                                 const ControlFieldSet& fields,
                                                 const TimeGrid& grid, int samples,
                                                 const OperatorBasis& basis,
                                                 unsigned seed = 12345,
                                                 double tolerance = 1e-6);

/// Choi-Jamiolkowski density matrix S^dag chi S / N.
Mat to_choi(const ProcessMatrix& chi, const Mat& change);

} // namespace procctl
