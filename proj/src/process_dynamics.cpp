#include "procctl/process_dynamics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace procctl {

double ProcessMatrix::hermiticity_error() const {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double ProcessMatrix::min_eigenvalue() const {
  Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void LindbladModel::validate() const {
  auto check_herm = [](const Mat& h, const char* what) {
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument(std::string("LindbladModel: ") + what + " not Hermitian");
  };
  if (drift.rows() != dim || drift.cols() != dim)
    throw std::invalid_argument("dimension-error: drift shape");
  check_herm(drift, "drift");
  for (const auto& c : controls) {
    if (c.rows() != dim || c.cols() != dim)
      throw std::invalid_argument("dimension-error: control shape");
    check_herm(c, "control operator");
  }
  for (const auto& j : jumps) {
    if (j.op.rows() != dim || j.op.cols() != dim)
      throw std::invalid_argument("dimension-error: jump shape");
    if (j.rate < 0.0) throw std::invalid_argument("LindbladModel: negative rate");
  }
}

GkslAction::GkslAction(Mat drift, std::vector<Mat> controls,
                       std::vector<std::pair<Mat, double>> jumps)
    : drift_(std::move(drift)), controls_(std::move(controls)) {
  jumps_.reserve(jumps.size());
  for (auto& [op, rate] : jumps) {
    JumpData j;
    j.op_adj = op.adjoint();
    j.ldl = j.op_adj * op;
    j.op = std::move(op);
    j.rate = rate;
    jumps_.push_back(std::move(j));
  }
}

Mat GkslAction::hamiltonian(const std::vector<double>& eps) const {
  if (eps.size() != controls_.size())
    throw std::invalid_argument("GkslAction: field count mismatch");
  Mat h = drift_;
  for (std::size_t m = 0; m < controls_.size(); ++m) h += eps[m] * controls_[m];
  return h;
}

Mat GkslAction::apply(const Mat& x, const std::vector<double>& eps) const {
  Mat h = hamiltonian(eps);
  Mat out = cx(0, -1) * (h * x - x * h);
  for (const auto& j : jumps_)
    out += j.rate * (j.op * x * j.op_adj - 0.5 * (j.ldl * x + x * j.ldl));
  return out;
}

Mat GkslAction::apply_adjoint(const Mat& x, const std::vector<double>& eps) const {
  Mat h = hamiltonian(eps);
  Mat out = cx(0, 1) * (h * x - x * h);
  for (const auto& j : jumps_)
    out += j.rate * (j.op_adj * x * j.op - 0.5 * (j.ldl * x + x * j.ldl));
  return out;
}

double GkslAction::flow_norm_bound(const std::vector<double>& eps) const {
  double b = 2.0 * hamiltonian(eps).norm();
  for (const auto& j : jumps_)
    b += j.rate * (j.op.norm() * j.op_adj.norm() + j.ldl.norm());
  return b;
}

Mat GkslAction::step(const Mat& x, const std::vector<double>& eps, double dt,
                     bool adjoint) const {
  const double bound = std::abs(dt) * flow_norm_bound(eps);
  const int substeps = std::max(1, static_cast<int>(std::ceil(bound / 4.0)));
  if (substeps > 64) {
    // stiff diagonal (e.g. literal omega0): dense exponential once per step
    Mat g = dense_flow(eps);
    if (adjoint) g.adjointInPlace();
    Mat u = (dt * g).exp();
    const int d = space_dim();
    Mat v = x.transpose().reshaped(d * d, 1); // row-major vec
    Mat w = u * v;
    return w.reshaped(d, d).transpose();
  }
  const double h = dt / substeps;
  Mat y = x;
  for (int s = 0; s < substeps; ++s) {
    Mat acc = y;
    Mat term = y;
    for (int j = 1; j <= 80; ++j) {
      term = adjoint ? apply_adjoint(term, eps) : apply(term, eps);
      term *= h / j;
      acc += term;
      if (term.norm() <= 1e-16 * acc.norm()) break;
    }
    y = std::move(acc);
  }
  return y;
}

Mat GkslAction::dense_flow(const std::vector<double>& eps) const {
  const int d = space_dim();
  Mat id = Mat::Identity(d, d);
  Mat h = hamiltonian(eps);
  Mat g = cx(0, -1) * (Eigen::kroneckerProduct(h, id).eval() -
                       Eigen::kroneckerProduct(id, h.transpose()).eval());
  for (const auto& j : jumps_) {
    g += j.rate * (Eigen::kroneckerProduct(j.op, j.op.conjugate()).eval() -
                   0.5 * Eigen::kroneckerProduct(j.ldl, id).eval() -
                   0.5 * Eigen::kroneckerProduct(id, j.ldl.transpose()).eval());
  }
  return g;
}

GkslAction lift_model(const LindbladModel& model, const OperatorBasis& basis) {
  model.validate();
  if (model.dim != basis.dim())
    throw std::invalid_argument("dimension-error: model and basis dims differ");
  std::vector<Mat> controls;
  controls.reserve(model.controls.size());
  for (const auto& c : model.controls) controls.push_back(lift_operator(c, basis));
  std::vector<std::pair<Mat, double>> jumps;
  jumps.reserve(model.jumps.size());
  for (const auto& j : model.jumps)
    jumps.emplace_back(lift_operator(j.op, basis), j.rate);
  return GkslAction(lift_operator(model.drift, basis), std::move(controls),
                    std::move(jumps));
}

GeneratorSnapshot build_generator(const LindbladModel& model,
                                  const std::vector<double>& field_values,
                                  const OperatorBasis& basis) {
  GkslAction lifted = lift_model(model, basis);
  GeneratorSnapshot snap;
  snap.k = cx(0, 1) * lifted.dense_flow(field_values);
  return snap;
}

ProcessMatrix initial_process(const OperatorBasis& basis) {
  const int nn = basis.size();
  Vec coeff(nn);
  for (int a = 0; a < nn; ++a) coeff(a) = std::conj(basis.element(a).adjoint().trace());
  ProcessMatrix chi;
  chi.m = coeff * coeff.adjoint();
  return chi;
}

namespace {

std::vector<double> fields_at(const ControlFieldSet& fields, int k) {
  std::vector<double> eps(fields.size());
  for (std::size_t m = 0; m < fields.size(); ++m) {
    double v = fields[m].samples[k];
    if (!std::isfinite(v)) throw std::runtime_error("numeric-error: non-finite field value");
    eps[m] = v;
  }
  return eps;
}

} // namespace

Trajectory propagate(const LindbladModel& model, const ControlFieldSet& fields,
                     const TimeGrid& grid, Direction direction, const Mat& initial,
                     const OperatorBasis& basis) {
  if (grid.n_steps < 1) throw std::invalid_argument("invalid-grid: zero steps");
  for (const auto& f : fields)
    if (static_cast<int>(f.samples.size()) != grid.n_steps)
      throw std::invalid_argument("invalid-grid: field sampling does not match grid");
  GkslAction lifted = lift_model(model, basis);
  if (initial.rows() != lifted.space_dim() || initial.cols() != lifted.space_dim())
    throw std::invalid_argument("dimension-error: initial matrix dimension");

  Trajectory traj;
  traj.grid = grid;
  traj.points.resize(grid.n_steps + 1);
  const double dt = grid.dt();
  if (direction == Direction::Forward) {
    traj.midpoints.resize(grid.n_steps);
    traj.points[0] = initial;
    for (int k = 0; k < grid.n_steps; ++k) {
      auto eps = fields_at(fields, k);
      traj.midpoints[k] = lifted.step(traj.points[k], eps, 0.5 * dt, false);
      traj.points[k + 1] = lifted.step(traj.points[k], eps, dt, false);
    }
  } else {
    traj.points[grid.n_steps] = initial;
    for (int k = grid.n_steps - 1; k >= 0; --k) {
      auto eps = fields_at(fields, k);
      traj.points[k] = lifted.step(traj.points[k + 1], eps, dt, true);
    }
  }
  return traj;
}

Mat apply_process(const ProcessMatrix& chi, const Mat& rho, const OperatorBasis& basis) {
  const int n = basis.dim();
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("dimension-error: state shape does not match basis");
  const int nn = basis.size();
  if (chi.m.rows() != nn || chi.m.cols() != nn)
    throw std::invalid_argument("dimension-error: process matrix shape");
  Mat out = Mat::Zero(n, n);
  for (int l = 0; l < nn; ++l) {
    // right factor sum_m chi_lm C_m^dag computed once per row
    Mat right = Mat::Zero(n, n);
    for (int m = 0; m < nn; ++m) right += chi.m(l, m) * basis.element(m).adjoint();
    out += basis.element(l) * rho * right;
  }
  return out;
}

double trace_distance(const Mat& a, const Mat& b) {
  Mat d = a - b;
  d = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Mat random_density_matrix(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cx(gauss(rng), gauss(rng));
  Mat rho = a * a.adjoint();
  return rho / rho.trace();
}

ValidationReport validate_against_state_equation(const LindbladModel& model,
                                                 const ControlFieldSet& fields,
                                                 const TimeGrid& grid, int samples,
                                                 const OperatorBasis& basis,
                                                 unsigned seed, double tolerance) {
  ValidationReport report;
  report.samples = samples;
  report.tolerance = tolerance;

  ProcessMatrix chi0 = initial_process(basis);
  Trajectory chi_traj = propagate(model, fields, grid, Direction::Forward, chi0.m, basis);

  std::vector<std::pair<Mat, double>> jumps;
  for (const auto& j : model.jumps) jumps.emplace_back(j.op, j.rate);
  GkslAction state(model.drift, model.controls, std::move(jumps));

  const double dt = grid.dt();
  for (int s = 0; s < samples; ++s) {
    Mat rho0 = random_density_matrix(model.dim, seed + static_cast<unsigned>(s));
    Mat rho = rho0;
    for (int k = 0; k <= grid.n_steps; ++k) {
      ProcessMatrix chik{chi_traj.points[k]};
      Mat via_process = apply_process(chik, rho0, basis);
      report.max_trace_distance =
          std::max(report.max_trace_distance, trace_distance(via_process, rho));
      if (k < grid.n_steps) rho = state.step(rho, fields_at(fields, k), dt, false);
    }
  }
  return report;
}

Mat to_choi(const ProcessMatrix& chi, const Mat& change) {
  const int nn = static_cast<int>(chi.m.rows());
  double n = std::sqrt(static_cast<double>(nn));
  return change.adjoint() * chi.m * change / n;
}

} // namespace procctl
