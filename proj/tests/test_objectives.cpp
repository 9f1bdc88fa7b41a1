#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "procctl/objectives.hpp"
#include "procctl/operator_basis.hpp"
#include "procctl/process_dynamics.hpp"
#include "procctl/rydberg.hpp"

using namespace procctl;

namespace {

Mat random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cx(nd(rng), nd(rng));
  return 0.5 * (a + a.adjoint()).eval();
}

} // namespace

TEST_CASE("fidelity of the identity process against the identity target is -w0") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  ProcessMatrix chi = initial_process(basis);
  ProcessMatrix target = gate_target(Mat::Identity(4, 4), basis);
  CHECK(fidelity(chi, target, 1.0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fidelity(chi, target, 0.5) == doctest::Approx(-0.5).epsilon(1e-12));
  // Normalization makes F scale-invariant in both arguments.
  ProcessMatrix scaled{3.7 * chi.m};
  CHECK(fidelity(scaled, target, 1.0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("fidelity rejects zero-norm inputs") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  ProcessMatrix zero{Mat::Zero(16, 16)};
  ProcessMatrix chi = initial_process(basis);
  CHECK_THROWS_WITH_AS(fidelity(zero, chi, 1.0), doctest::Contains("degenerate-input"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(fidelity(chi, zero, 1.0), doctest::Contains("degenerate-input"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(costate_boundary(zero, chi, 1.0), doctest::Contains("degenerate-input"),
                       std::invalid_argument);
}

TEST_CASE("costate boundary: orthogonality and vanishing at aligned states") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  std::mt19937_64 rng(41);
  ProcessMatrix chi{random_hermitian(16, rng)};
  ProcessMatrix target{random_hermitian(16, rng)};
  CostateMatrix lam = costate_boundary(chi, target, 1.0);
  // Re<<chi_f|Lambda>> = 0 always (F is norm-independent along chi).
  CHECK(std::abs(std::real(hs_inner(chi.m, lam.m))) < 1e-12);

  // chi proportional to the target: both real and imaginary overlap vanish.
  ProcessMatrix aligned{2.5 * target.m};
  CostateMatrix lam2 = costate_boundary(aligned, target, 1.0);
  CHECK(std::abs(hs_inner(aligned.m, lam2.m)) < 1e-12);
}

TEST_CASE("costate boundary matches the finite-difference gradient of F") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  std::mt19937_64 rng(42);
  ProcessMatrix chi{random_hermitian(16, rng) + 20.0 * Mat::Identity(16, 16)};
  ProcessMatrix target = depolarizing_target(0.3, basis);
  CostateMatrix lam = costate_boundary(chi, target, 1.0);
  double f0 = fidelity(chi, target, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    Mat dir = random_hermitian(16, rng);
    const double h = 1e-6;
    ProcessMatrix chi_p{chi.m + h * dir};
    double df = fidelity(chi_p, target, 1.0) - f0;
    double predicted = -2.0 * h * std::real(hs_inner(dir, lam.m));
    CHECK(df == doctest::Approx(predicted).epsilon(1e-5));
  }
}

TEST_CASE("gate targets are rank-1 with trace N") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  // Phase gate diag(1,1,1,e^{i pi}) lifted: Xi = c c^dag with Tr Xi = sum |c_a|^2
  // = Tr[U U^dag] = 4 (basis orthonormality / completeness).
  Mat u = Mat::Identity(4, 4);
  u(3, 3) = std::exp(cx(0, kPi));
  ProcessMatrix xi = gate_target(u, basis);
  CHECK(std::real(xi.m.trace()) == doctest::Approx(4.0).epsilon(1e-12));
  Eigen::SelfAdjointEigenSolver<Mat> es(xi.m);
  int rank = 0;
  for (int i = 0; i < 16; ++i)
    if (es.eigenvalues()(i) > 1e-10) ++rank;
  CHECK(rank == 1);
  CHECK(es.eigenvalues()(15) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("gate_target rejects non-unitary and wrongly shaped operators") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  Mat not_unitary = 2.0 * Mat::Identity(4, 4);
  CHECK_THROWS_WITH_AS(gate_target(not_unitary, basis), doctest::Contains("invalid-target"),
                       std::invalid_argument);
  CHECK_THROWS_AS(gate_target(Mat::Identity(3, 3), basis), std::invalid_argument);
}

TEST_CASE("decoherence suppression target at t_f = 0 is the identity target") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  std::mt19937_64 rng(7);
  Mat h = random_hermitian(4, rng); // any drift
  ProcessMatrix xi0 = decoherence_suppression_target(0.0, h, basis);
  ProcessMatrix id = gate_target(Mat::Identity(4, 4), basis);
  CHECK((xi0.m - id.m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("decoherence suppression target for a diagonal drift matches the closed form") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  Eigen::Vector4d diag_h(0.0, 0.0, 0.4, -0.3);
  Mat h = diag_h.cast<cx>().asDiagonal();
  double t_f = 5.0;
  Mat u = Mat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) u(i, i) = std::exp(cx(0, -t_f * diag_h(i)));
  ProcessMatrix expect = gate_target(u, basis);
  ProcessMatrix got = decoherence_suppression_target(t_f, h, basis);
  CHECK((got.m - expect.m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("depolarizing target: identity at p = 0, Kraus sum matches closed form") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  ProcessMatrix xi0 = depolarizing_target(0.0, basis);
  ProcessMatrix id = gate_target(Mat::Identity(4, 4), basis);
  CHECK((xi0.m - id.m).cwiseAbs().maxCoeff() < 1e-12);

  for (double p : {0.1, 0.25, 0.5, 1.0}) {
    ProcessMatrix xi = depolarizing_target(p, basis);
    CHECK((xi.m - depolarizing_target_closed_form(p)).cwiseAbs().maxCoeff() < 1e-10);
    // A Kraus-sum process matrix is Hermitian PSD with trace sum_k Tr[A_k A_k^dag].
    CHECK((xi.m - xi.m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> es(xi.m);
    CHECK(es.eigenvalues()(0) > -1e-12);
  }
  CHECK(std::real(depolarizing_target_closed_form(0.5)(15, 15)) ==
        doctest::Approx(2.5).epsilon(1e-14));
  CHECK_THROWS_AS(depolarizing_target(-0.1, basis), std::domain_error);
  CHECK_THROWS_AS(depolarizing_target(1.5, basis), std::domain_error);
}

TEST_CASE("error probability p(t)") {
  CHECK(error_probability(0.0, 35.0) == 0.0);
  // p(900 ns) with tau_i = 35 ns saturates at 1/2 to machine precision.
  CHECK(error_probability(900.0, 35.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(error_probability(35.0 * std::log(4.0) / 6.0, 35.0) ==
        doctest::Approx(0.375).epsilon(1e-12));
  CHECK_THROWS_AS(error_probability(-1.0, 35.0), std::domain_error);
}

TEST_CASE("total objective combines fidelity and field cost") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  TimeGrid grid(10.0, 5);
  ControlFieldSet fields;
  fields.push_back(guess_pulse("f", ShapeFunction::constant(1.0), 0.2, 0.01, grid));
  Objective obj;
  obj.w0 = 1.0;
  obj.target = gate_target(Mat::Identity(4, 4), basis);
  ProcessMatrix chi = initial_process(basis);
  // Fields equal their reference, so J_f = 0 and J = F = -w0.
  CHECK(total_objective(chi, fields, grid, obj) == doctest::Approx(-1.0).epsilon(1e-12));
  // w0 = 0 removes the fidelity term entirely.
  obj.w0 = 0.0;
  CHECK(total_objective(chi, fields, grid, obj) == 0.0);
  // Displacing one sample adds w (delta^2 / f) dt.
  fields[0].samples[2] += 0.3;
  double expected = 0.01 * (0.3 * 0.3 / 1.0) * grid.dt();
  CHECK(total_objective(chi, fields, grid, obj) == doctest::Approx(expected).epsilon(1e-12));
}
