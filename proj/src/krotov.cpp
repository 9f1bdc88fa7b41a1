#include "procctl/krotov.hpp"

#include <cmath>
#include <stdexcept>

namespace procctl {

double sigma_schedule(double t, double t_f, double a_bar, double zeta_b) {
  return -a_bar * std::exp(zeta_b * (t_f - t));
}

double compute_a_ansatz(double delta_f, const Mat& delta_chi_f, const Mat& lambda_f) {
  double denom = std::real(hs_inner(delta_chi_f, delta_chi_f));
  if (denom <= 0.0) return 0.0; // no update direction
  double num = delta_f + 2.0 * std::real(hs_inner(delta_chi_f, lambda_f));
  return num / denom;
}

double a_bar_from(double a, double zeta_a) {
  return std::max(zeta_a, 2.0 * a + zeta_a);
}

Trajectory backward_sweep(const LindbladModel& model, const ControlFieldSet& fields,
                          const TimeGrid& grid, const ProcessMatrix& chi_f,
                          const Objective& objective, const OperatorBasis& basis) {
  CostateMatrix lam_f = costate_boundary(chi_f, objective.target, objective.w0);
  return propagate(model, fields, grid, Direction::BackwardAdjoint, lam_f.m, basis);
}

UpdateResult update_sweep(const LindbladModel& model, const TimeGrid& grid,
                          const ControlFieldSet& fields, const Trajectory& forward_prev,
                          const Trajectory& backward, double a_bar, double zeta_b,
                          const OperatorBasis& basis, const KrotovConfig& config) {
  GkslAction lifted = lift_model(model, basis);
  std::vector<Mat> h_lift;
  h_lift.reserve(model.controls.size());
  for (const auto& c : model.controls) h_lift.push_back(lift_operator(c, basis));

  const int n_steps = grid.n_steps;
  const double dt = grid.dt();
  const std::size_t n_fields = fields.size();

  UpdateResult result;
  result.fields = fields;
  result.forward.grid = grid;
  result.forward.points.resize(n_steps + 1);
  result.forward.midpoints.resize(n_steps);
  result.forward.points[0] = forward_prev.points[0];

  for (int k = 0; k < n_steps; ++k) {
    const double t_mid = grid.midpoint(k);
    const double sigma = sigma_schedule(t_mid, grid.t_f, a_bar, zeta_b);
    const Mat lam_mid = 0.5 * (backward.points[k] + backward.points[k + 1]);

    // right-hand side of the implicit update equation at this midpoint
    auto update_rhs = [&](const std::vector<double>& e) {
      Mat chi_mid = lifted.step(result.forward.points[k], e, 0.5 * dt, false);
      std::vector<double> out(n_fields);
      for (std::size_t m = 0; m < n_fields; ++m) {
        const Mat comm = h_lift[m] * chi_mid - chi_mid * h_lift[m];
        double grad = std::imag((lam_mid.adjoint() * comm).trace());
        if (sigma != 0.0) {
          Mat dchi = chi_mid - forward_prev.midpoints[k];
          grad += 0.5 * sigma * std::imag((dchi.adjoint() * comm).trace());
        }
        double fm = fields[m].shape.eval_mid(grid, k);
        out[m] = fields[m].reference[k] + fm / fields[m].weight * grad;
      }
      return out;
    };

    std::vector<double> eps(n_fields);
    for (std::size_t m = 0; m < n_fields; ++m) eps[m] = fields[m].samples[k];

    // Solve eps = rhs(eps) by Newton on the residual with a halving line
    // search; plain Picard iteration is not contractive for large sigma.
    bool converged = false;
    std::vector<double> rhs = update_rhs(eps);
    auto res_norm = [&](const std::vector<double>& e, const std::vector<double>& r) {
      double s = 0.0;
      for (std::size_t m = 0; m < n_fields; ++m) s += (e[m] - r[m]) * (e[m] - r[m]);
      return std::sqrt(s);
    };
    for (int pass = 0; pass < config.fixed_point_max_passes; ++pass) {
      Eigen::VectorXd res(n_fields);
      for (std::size_t m = 0; m < n_fields; ++m) res(m) = eps[m] - rhs[m];
      if (res.lpNorm<Eigen::Infinity>() < config.fixed_point_tol) {
        converged = true;
        result.max_fixed_point_passes = std::max(result.max_fixed_point_passes, pass + 1);
        break;
      }
      // finite-difference Jacobian of the residual
      Eigen::MatrixXd jac(n_fields, n_fields);
      for (std::size_t m = 0; m < n_fields; ++m) {
        double h = 1e-7 * std::max(1.0, std::abs(eps[m]));
        std::vector<double> ep = eps;
        ep[m] += h;
        std::vector<double> rp = update_rhs(ep);
        for (std::size_t l = 0; l < n_fields; ++l)
          jac(l, m) = ((l == m ? 1.0 : 0.0)) - (rp[l] - rhs[l]) / h;
      }
      Eigen::VectorXd delta = jac.fullPivLu().solve(res);
      double base = res.norm();
      double alpha = 1.0;
      std::vector<double> eps_new(n_fields);
      std::vector<double> rhs_new;
      for (int ls = 0; ls < 30; ++ls) {
        for (std::size_t m = 0; m < n_fields; ++m) eps_new[m] = eps[m] - alpha * delta(m);
        rhs_new = update_rhs(eps_new);
        if (res_norm(eps_new, rhs_new) < base || alpha < 1e-6) break;
        alpha *= 0.5;
      }
      eps = std::move(eps_new);
      rhs = std::move(rhs_new);
    }
    if (!converged)
      throw std::runtime_error("step-failure: field fixed point did not converge (grid too coarse?)");

    for (std::size_t m = 0; m < n_fields; ++m) result.fields[m].samples[k] = eps[m];
    result.forward.midpoints[k] = lifted.step(result.forward.points[k], eps, 0.5 * dt, false);
    result.forward.points[k + 1] = lifted.step(result.forward.points[k], eps, dt, false);
  }
  return result;
}

KrotovRun optimize(const LindbladModel& model, const TimeGrid& grid,
                   const ControlFieldSet& guess, const Objective& objective,
                   const KrotovConfig& config, const OperatorBasis& basis,
                   const CheckpointHook& checkpoint,
                   const std::optional<ResumeState>& resume) {
  KrotovRun run;
  double f_prev, j_prev;
  int start_iter;
  if (resume) {
    if (resume->trace.empty())
      throw std::invalid_argument("resume state has an empty trace");
    run.fields = resume->fields;
    for (auto& f : run.fields) f.reference = f.samples;
    run.a_n = resume->a_n;
    run.trace = resume->trace;
    run.iterations = run.trace.back().n;
    f_prev = run.trace.back().f;
    j_prev = run.trace.back().j;
    start_iter = run.iterations + 1;
  } else {
    run.fields = guess;
    for (auto& f : run.fields) f.reference = f.samples;
    run.a_n = 0.0; // A^(0)
    start_iter = 1;
  }

  ProcessMatrix chi0 = initial_process(basis);
  run.forward = propagate(model, run.fields, grid, Direction::Forward, chi0.m, basis);

  if (!resume) {
    f_prev = fidelity(ProcessMatrix{run.forward.points[grid.n_steps]},
                      objective.target, objective.w0);
    j_prev = f_prev; // J_f = 0 at the guess
    run.trace.push_back({0, j_prev, f_prev, 0.0, 0.0, 0});
  }

  for (int n = start_iter; n <= config.max_iters; ++n) {
    ProcessMatrix chi_f{run.forward.points[grid.n_steps]};
    Trajectory backward = backward_sweep(model, run.fields, grid, chi_f, objective, basis);
    const Mat& lambda_f = backward.points[grid.n_steps];

    double a_bar = config.a_override ? *config.a_override
                                     : a_bar_from(run.a_n, config.zeta_a);
    int retries = 0;
    const int escalation_limit = config.retry_limit + 60;
    while (true) {
      UpdateResult upd = update_sweep(model, grid, run.fields, run.forward, backward,
                                      a_bar, config.zeta_b, basis, config);

      ProcessMatrix chi_f_new{upd.forward.points[grid.n_steps]};
      double f_new = fidelity(chi_f_new, objective.target, objective.w0);
      double jf_new = field_cost(upd.fields, grid);
      double j_new = f_new + jf_new;
      double a_new = compute_a_ansatz(f_new - f_prev, chi_f_new.m - chi_f.m, lambda_f);

      if (j_new <= j_prev + config.j_tolerance) {
        run.fields = std::move(upd.fields);
        for (auto& f : run.fields) f.reference = f.samples;
        run.forward = std::move(upd.forward);
        run.a_n = a_new;
        run.iterations = n;
        run.trace.push_back({n, j_new, f_new, jf_new, a_new, retries});
        double dj = j_new - j_prev;
        f_prev = f_new;
        j_prev = j_new;
        if (std::abs(dj) < config.j_tolerance) run.converged = true;
        break;
      }
      if (j_new - j_prev < config.stall_tolerance) {
        // violation at the discretization noise floor: converged at the
        // previous iterate, discard this update
        run.converged = true;
        break;
      }
      // monotonicity failure: repeat with the just-computed ansatz; if that
      // stalls, escalate Abar (a large enough Abar damps the update toward
      // the reference fields, where J -> F^(n) <= J^(n) holds)
      ++retries;
      if (retries > escalation_limit) {
        run.aborted_nonmonotonic = true;
        run.trace.push_back({n, j_new, f_new, jf_new, a_new, retries});
        if (checkpoint) checkpoint(run);
        return run;
      }
      if (retries <= config.retry_limit && !config.a_override)
        a_bar = a_bar_from(a_new, config.zeta_a);
      else
        a_bar = std::max(2.0 * a_bar, 1e-3);
    }

    if (checkpoint && config.checkpoint_every > 0 && n % config.checkpoint_every == 0)
      checkpoint(run);
    if (run.converged) break;
  }
  if (checkpoint) checkpoint(run);
  return run;
}

} // namespace procctl
