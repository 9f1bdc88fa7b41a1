#include <cmath>

#include <doctest.h>

#include "procctl/rydberg.hpp"

using namespace procctl;

TEST_CASE("rydberg hamiltonian at zero fields (absorbed frame)") {
  RydbergParams params;
  Mat h = rydberg_hamiltonian(params, 0.0, 0.0);
  // diag(0, 0, Delta_p, Delta_p + Delta_s) with Delta_s = -Delta_p.
  CHECK(std::abs(h(0, 0)) < 1e-15);
  CHECK(std::abs(h(1, 1)) < 1e-15);
  CHECK(std::real(h(2, 2)) == doctest::Approx(40.0 * kPi * 1e-3).epsilon(1e-14));
  CHECK(std::abs(h(3, 3)) < 1e-15);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(h(i, j)) < 1e-15);
}

TEST_CASE("rydberg hamiltonian couplings and hermiticity") {
  RydbergParams params;
  double wp = 0.11, ws = -0.07;
  Mat h = rydberg_hamiltonian(params, wp, ws);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  // Pump couples |0> <-> |i| with Omega_p/2; Stokes couples |i> <-> |r>.
  CHECK(std::real(h(0, 2)) == doctest::Approx(wp / 2.0).epsilon(1e-14));
  CHECK(std::real(h(2, 3)) == doctest::Approx(-ws / 2.0).epsilon(1e-14));
  CHECK(std::abs(h(0, 1)) < 1e-15);
  CHECK(std::abs(h(0, 3)) < 1e-15);
  CHECK(std::abs(h(1, 2)) < 1e-15);
  CHECK(std::abs(h(1, 3)) < 1e-15);
}

TEST_CASE("literal mode keeps the -omega0 entry on |1>") {
  RydbergParams params;
  params.omega0_mode = Omega0Mode::Literal;
  Mat h = rydberg_hamiltonian(params, 0.0, 0.0);
  CHECK(std::real(h(1, 1)) == doctest::Approx(-params.omega0).epsilon(1e-14));
  CHECK(params.omega0 == doctest::Approx(2.0 * kPi * 299792.458 / 674e-3).epsilon(1e-14));
}

TEST_CASE("model decay channels") {
  RydbergParams params;
  LindbladModel model = rydberg_model(params);
  model.validate();
  REQUIRE(model.jumps.size() == 2);
  CHECK(model.jumps[0].rate == doctest::Approx(1.0 / 35.0).epsilon(1e-14));
  CHECK(model.jumps[1].rate == doctest::Approx(1.0 / 2300.0).epsilon(1e-14));
  // L^dag L for |i> -> |1> is |i><i| (index 2); for |r> -> |1> it is |r><r|.
  Mat p_i = model.jumps[0].op.adjoint() * model.jumps[0].op;
  Mat p_r = model.jumps[1].op.adjoint() * model.jumps[1].op;
  Mat e_i = Mat::Zero(4, 4);
  e_i(2, 2) = 1.0;
  Mat e_r = Mat::Zero(4, 4);
  e_r(3, 3) = 1.0;
  CHECK((p_i - e_i).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((p_r - e_r).cwiseAbs().maxCoeff() < 1e-15);
  // Both decay into |1> (index 1).
  CHECK(std::abs(model.jumps[0].op(1, 2)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(model.jumps[1].op(1, 3)) == doctest::Approx(1.0).epsilon(1e-14));
  REQUIRE(model.controls.size() == 2);
}

TEST_CASE("model drift stays in the absorbed frame even in literal mode") {
  // The omega0 term commutes with drift and controls and cancels in the
  // dissipators, so the dynamics run in the absorbed frame; the literal
  // frame only changes the target via to_working_frame.
  RydbergParams absorbed;
  RydbergParams literal = absorbed;
  literal.omega0_mode = Omega0Mode::Literal;
  LindbladModel m1 = rydberg_model(absorbed);
  LindbladModel m2 = rydberg_model(literal);
  CHECK((m1.drift - m2.drift).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("scenario assembly: grids, guesses, targets") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  RydbergParams params;

  Scenario s1 = scenario(ScenarioKind::GateSimulation, params, basis, 1.0);
  CHECK(s1.grid.t_f == 900.0);
  CHECK(s1.grid.n_steps == 900);
  REQUIRE(s1.guess.size() == 2);
  CHECK(s1.guess[0].name == "pump");
  CHECK(s1.guess[1].name == "stokes");
  CHECK(s1.guess[0].weight == doctest::Approx(0.01));
  // Guess peaks at E_m (Blackman shapes reach 1).
  double peak = 94.0 * kPi * 1e-3;
  double max_p = 0.0, max_s = 0.0;
  for (double v : s1.guess[0].samples) max_p = std::max(max_p, v);
  for (double v : s1.guess[1].samples) max_s = std::max(max_s, v);
  CHECK(max_p == doctest::Approx(peak).epsilon(1e-4));
  CHECK(max_s == doctest::Approx(peak).epsilon(1e-4));
  // Gate target: pi phase on |1>, trivial on the passive subspace.
  Mat u = Mat::Identity(4, 4);
  u(1, 1) = -1.0;
  ProcessMatrix xi = gate_target(u, basis);
  CHECK((s1.objective.target.m - xi.m).cwiseAbs().maxCoeff() < 1e-12);

  Scenario s2 = scenario(ScenarioKind::DecoherenceSuppression, params, basis, 1.0);
  CHECK(s2.grid.t_f == 500.0);
  ProcessMatrix xi2 =
      decoherence_suppression_target(500.0, rydberg_hamiltonian(params, 0.0, 0.0), basis);
  CHECK((s2.objective.target.m - xi2.m).cwiseAbs().maxCoeff() < 1e-12);

  Scenario s3 = scenario(ScenarioKind::PassiveEnvironment, params, basis, 1.0);
  CHECK(s3.grid.t_f == 900.0);
  double p = error_probability(900.0, params.tau_i);
  ProcessMatrix xi3 = depolarizing_target(p, basis);
  CHECK((s3.objective.target.m - xi3.m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("to_working_frame: identity in absorbed mode, exact conjugation in literal") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  RydbergParams absorbed;
  RydbergParams literal = absorbed;
  literal.omega0_mode = Omega0Mode::Literal;
  double t_f = 900.0;

  ProcessMatrix xi = depolarizing_target(0.3, basis);
  ProcessMatrix same = to_working_frame(xi, absorbed, t_f, basis);
  CHECK((same.m - xi.m).cwiseAbs().maxCoeff() == 0.0);

  ProcessMatrix rotated = to_working_frame(xi, literal, t_f, basis);
  // Conjugation by a lifted unitary: preserves trace, Hermiticity, spectrum.
  CHECK(rotated.m.trace().real() == doctest::Approx(xi.m.trace().real()).epsilon(1e-12));
  CHECK((rotated.m - rotated.m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat> e1(xi.m), e2(rotated.m);
  CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  // Frame unitary is diag(1, e^{i omega0 t mod 2pi}, 1, 1).
  Mat w = literal_frame_unitary(literal, t_f);
  CHECK(std::abs(w(0, 0) - cx(1, 0)) < 1e-15);
  double theta = std::fmod(literal.omega0 * t_f, 2.0 * kPi);
  CHECK(std::abs(w(1, 1) - std::exp(cx(0, theta))) < 1e-15);
  // Applying the inverse conjugation recovers the original target.
  Mat wl = lift_operator(w, basis);
  Mat back = wl * rotated.m * wl.adjoint();
  CHECK((back - xi.m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("literal-mode scenarios conjugate gate targets but not the decoherence target") {
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  RydbergParams absorbed;
  RydbergParams literal = absorbed;
  literal.omega0_mode = Omega0Mode::Literal;

  Scenario g_abs = scenario(ScenarioKind::GateSimulation, absorbed, basis, 10.0);
  Scenario g_lit = scenario(ScenarioKind::GateSimulation, literal, basis, 10.0);
  ProcessMatrix expect = to_working_frame(g_abs.objective.target, literal, 900.0, basis);
  CHECK((g_lit.objective.target.m - expect.m).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((g_lit.objective.target.m - g_abs.objective.target.m).cwiseAbs().maxCoeff() > 1e-3);

  // The decoherence-suppression objective is frame-invariant (the frame
  // conjugations of chi and target cancel in the normalized overlap).
  Scenario d_abs = scenario(ScenarioKind::DecoherenceSuppression, absorbed, basis, 10.0);
  Scenario d_lit = scenario(ScenarioKind::DecoherenceSuppression, literal, basis, 10.0);
  CHECK((d_lit.objective.target.m - d_abs.objective.target.m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scenario kind string round trip") {
  for (ScenarioKind k : {ScenarioKind::GateSimulation, ScenarioKind::DecoherenceSuppression,
                         ScenarioKind::PassiveEnvironment})
    CHECK(scenario_kind_from_string(to_string(k)) == k);
  CHECK_THROWS(scenario_kind_from_string("nonsense"));
}
