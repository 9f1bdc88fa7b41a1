#include "procctl/objectives.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace procctl {

double fidelity(const ProcessMatrix& chi, const ProcessMatrix& target, double w0) {
  double nx = std::real(hs_inner(chi.m, chi.m));
  double nt = std::real(hs_inner(target.m, target.m));
  if (nx <= 0.0 || nt <= 0.0)
    throw std::invalid_argument("degenerate-input: zero-norm process matrix");
  double overlap = std::real(hs_inner(chi.m, target.m));
  return -w0 * overlap / std::sqrt(nx * nt);
}

CostateMatrix costate_boundary(const ProcessMatrix& chi_f, const ProcessMatrix& target,
                               double w0) {
  double nx = std::real(hs_inner(chi_f.m, chi_f.m));
  double nt = std::real(hs_inner(target.m, target.m));
  if (nx <= 0.0 || nt <= 0.0)
    throw std::invalid_argument("degenerate-input: zero-norm process matrix");
  cx overlap = hs_inner(chi_f.m, target.m);
  CostateMatrix lam;
  lam.m = (w0 / 2.0) *
          (target.m / std::sqrt(nx * nt) - overlap * chi_f.m / std::sqrt(nx * nx * nx * nt));
  return lam;
}

ProcessMatrix gate_target(const Mat& u, const OperatorBasis& basis) {
  const int n = basis.dim();
  if (u.rows() != n || u.cols() != n)
    throw std::invalid_argument("dimension-error: gate shape does not match basis");
  if ((u * u.adjoint() - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("invalid-target: operator is not unitary");
  const int nn = basis.size();
  Vec coeff(nn);
  for (int a = 0; a < nn; ++a) coeff(a) = (u * basis.element(a).adjoint()).trace();
  ProcessMatrix chi;
  chi.m = coeff * coeff.adjoint();
  return chi;
}

ProcessMatrix decoherence_suppression_target(double t_f, const Mat& h_drift,
                                             const OperatorBasis& basis) {
  Mat u = (cx(0, -1) * t_f * h_drift).exp();
  return gate_target(u, basis);
}

double error_probability(double t, double tau_i) {
  if (t < 0.0) throw std::domain_error("error_probability: t must be nonnegative");
  return (1.0 - std::exp(-6.0 * t / tau_i)) / 2.0;
}

Mat depolarizing_target_closed_form(double p) {
  // Paper-index table translated to this basis ordering: the six operators
  // spanning the channel are the first/second/third diagonal Gell-Mann
  // elements (13, 14, 15 here), the symmetric and antisymmetric elements of
  // the (|1>,|i>) pair (4 and 10 here), and the identity (16). Entries below
  // are the "upper" half; the full matrix is m + m^T.
  const int d1 = 12, d2 = 13, sym = 3, anti = 9, d3 = 14, id = 15; // 0-based
  Mat m = Mat::Zero(16, 16);
  m(id, id) = (4.0 - 3.0 * p) / 2.0;
  m(sym, sym) = 2.0 * p / 6.0;
  m(d1, d1) = p / 6.0;
  m(d2, d2) = 3.0 * p / 6.0;
  m(d3, d3) = p / 6.0;
  m(anti, anti) = 2.0 * p / 6.0;
  m(d1, sym) = 2.0 * p / 6.0;
  m(d1, anti) = 2.0 * p / 6.0;
  const double s6 = std::sqrt(6.0) * p / 9.0;
  m(sym, d3) = -s6;
  m(d1, d3) = -s6;
  m(anti, d3) = -s6;
  m(d2, id) = 3.0 * s6;
  const double s2 = std::sqrt(2.0) * p / 3.0;
  m(sym, id) = s2;
  m(d1, id) = s2;
  m(d2, d3) = -s2;
  m(anti, id) = s2;
  const double s3 = std::sqrt(3.0) * p / 9.0;
  m(d1, d2) = s3;
  m(d2, sym) = s3;
  m(d3, id) = -3.0 * s3;
  m(d2, anti) = s3;
  return m + m.transpose().eval();
}

ProcessMatrix depolarizing_target(double p, const OperatorBasis& basis) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("domain-error: p outside [0,1]");
  if (basis.dim() != 4)
    throw std::invalid_argument("dimension-error: depolarizing target is defined for dim 4");
  const int n = 4;
  // states ordered {|0>,|1>,|i>,|r>}; the channel acts on span{|1>,|i>}
  Mat passive = Mat::Zero(n, n);
  passive(0, 0) = 1.0;
  passive(3, 3) = 1.0;
  Mat s1 = passive, s2 = passive, s3 = passive;
  s1(1, 2) = 1.0;
  s1(2, 1) = 1.0;
  s2(1, 2) = cx(0, -1);
  s2(2, 1) = cx(0, 1);
  s3(1, 1) = 1.0;
  s3(2, 2) = -1.0;

  std::vector<Mat> kraus;
  kraus.push_back(std::sqrt(1.0 - p) * Mat::Identity(n, n));
  for (const Mat* s : {&s1, &s2, &s3}) kraus.push_back(std::sqrt(p / 3.0) * (*s));

  const int nn = basis.size();
  ProcessMatrix chi;
  chi.m = Mat::Zero(nn, nn);
  for (const auto& a : kraus) {
    Vec coeff(nn);
    for (int i = 0; i < nn; ++i) coeff(i) = (a * basis.element(i).adjoint()).trace();
    chi.m += coeff * coeff.adjoint();
  }

  if (basis.kind() == BasisKind::GellMann) {
    Mat closed = depolarizing_target_closed_form(p);
    if ((chi.m - closed).cwiseAbs().maxCoeff() > 1e-10)
      throw std::logic_error("depolarizing_target: Kraus sum disagrees with closed form");
  }
  return chi;
}

double total_objective(const ProcessMatrix& chi_f, const ControlFieldSet& fields,
                       const TimeGrid& grid, const Objective& objective) {
  return fidelity(chi_f, objective.target, objective.w0) + field_cost(fields, grid);
}

} // namespace procctl
