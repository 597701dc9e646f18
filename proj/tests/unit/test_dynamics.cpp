#include <doctest.h>

#include <cmath>

#include "g2flow/dynamics.hpp"
#include "g2flow/harness.hpp"
#include "oracles.hpp"

using namespace g2flow;

namespace {

// Independent Navier-Stokes tendency: P[nu Lap u - u.grad u], assembled from
// the generic operators rather than the solver's fused product pipeline.
// Oracle for the alpha = 0 velocity-form RHS.
Field ns_rhs_oracle(const Field& u, double nu, TransformPlan& plan) {
  const auto& g = u.grid();
  const int d = g.dim;
  const PhysicalField up = to_physical(u, plan);
  const PhysicalField jac = to_physical(gradient(u), plan);

  PhysicalField conv;
  conv.grid = u.grid_ptr();
  conv.ncomp = d;
  conv.values.resize(static_cast<std::size_t>(d) * g.mode_count());
  for (int c = 0; c < d; ++c) {
    for (std::size_t x = 0; x < g.mode_count(); ++x) {
      double acc = 0.0;
      for (int a = 0; a < d; ++a) acc += up.data(a)[x] * jac.data(c * d + a)[x];
      conv.data(c)[x] = acc;
    }
  }
  Field rhs = laplacian(u);
  scale(rhs, nu);
  axpy(-1.0, dealias(to_spectral(conv, plan)), rhs);
  rhs = leray_project(rhs);
  zero_mean_mode(rhs);
  symmetrize_hermitian(rhs);
  return rhs;
}

SolverParams small_params(double alpha, double nu = 0.1) {
  SolverParams p;
  p.alpha = alpha;
  p.nu = nu;
  p.dt = 1e-3;
  p.t_end = 0.1;
  p.sample_every = 10;
  return p;
}

}  // namespace

TEST_CASE("velocity_from_vorticity inverts curl") {
  GridPtr g = make_grid(3, 16);
  // omega = (0, 0, cos x) -> u = (0, sin x, 0)
  Field omega = Field::vector(g);
  omega.data(2)[g->flat_index(1, 0, 0)] = Complex{0.5, 0.0};
  omega.data(2)[g->flat_index(g->n - 1, 0, 0)] = Complex{0.5, 0.0};
  Field u = velocity_from_vorticity(omega);
  Field expected = Field::vector(g);
  expected.data(1)[g->flat_index(1, 0, 0)] = Complex{0.0, -0.5};
  expected.data(1)[g->flat_index(g->n - 1, 0, 0)] = Complex{0.0, 0.5};
  CHECK(l2_distance(u, expected) < 1e-14);

  CHECK(max_abs_coefficient(velocity_from_vorticity(Field::vector(g))) == 0.0);
}

TEST_CASE("curl(velocity_from_vorticity(omega)) = omega on random data") {
  for (int dim : {2, 3}) {
    GridPtr g = make_grid(dim, 16);
    for (int trial = 0; trial < 10; ++trial) {
      Field u = random_divfree_field(g, 1000 + trial, -2.0, 5, 1.0);
      Field omega = curl(u);
      Field u_back = velocity_from_vorticity(omega);
      CHECK(l2_distance(u_back, u) <= 1e-12 * std::max(1.0, l2_norm(u)));
      CHECK(divergence_defect(u_back) <= 1e-12);
      CHECK(l2_distance(curl(u_back), omega) <= 1e-12 * std::max(1.0, l2_norm(omega)));
    }
  }
}

TEST_CASE("velocity_from_vorticity rejects a nonzero mean mode") {
  GridPtr g = make_grid(2, 16);
  Field omega = Field::scalar(g);
  omega.data(0)[0] = Complex{1.0, 0.0};
  CHECK_THROWS_AS(velocity_from_vorticity(omega), std::invalid_argument);
}

TEST_CASE("rhs_velocity_form: zero state, and Taylor-Green reduces to -2 nu u0") {
  GridPtr g = make_grid(2, 32);
  for (double alpha : {0.0, 0.1, 0.7}) {
    Solver solver(g, small_params(alpha));
    SimState zero = solver.make_state(Field::vector(g));
    CHECK(max_abs_coefficient(solver.rhs_velocity_form(zero)) == 0.0);

    // Both nonlinear terms are gradients for the vortex; the projected
    // tendency is purely linear: d/dt v = -2 nu u0 at t = 0.
    Field u0 = taylor_green(g, 1.0);
    SimState s = solver.make_state(u0);
    Field rhs = solver.rhs_velocity_form(s);
    Field expected = u0;
    scale(expected, -2.0 * solver.params().nu);
    CHECK(l2_distance(rhs, expected) <= 1e-12 * l2_norm(expected));
  }
}

TEST_CASE("alpha = 0 velocity-form RHS matches the independent NS oracle") {
  for (int dim : {2, 3}) {
    GridPtr g = make_grid(dim, dim == 2 ? 32 : 16);
    Solver solver(g, small_params(0.0, 0.17));
    for (int trial = 0; trial < 5; ++trial) {
      Field u = random_divfree_field(g, 2200 + trial, -2.0, 5, 1.0 + 0.5 * trial);
      SimState s = solver.make_state(u);
      Field rhs = solver.rhs_velocity_form(s);
      Field expected = ns_rhs_oracle(u, 0.17, solver.plan());
      CHECK(l2_distance(rhs, expected) <= 1e-12 * std::max(1.0, l2_norm(expected)));
    }
  }
}

TEST_CASE("rhs_curl_form: zero state and single-mode linear dominance") {
  GridPtr g = make_grid(3, 16);
  SolverParams p = small_params(0.0, 1.0);
  p.formulation = Formulation::curl;
  Solver solver(g, p);

  SimState zero;
  zero.v = Field::vector(g);
  zero.u = Field::vector(g);
  CHECK(max_abs_coefficient(solver.rhs_curl_form(zero)) == 0.0);

  // single-mode vorticity: the nonlinearity only populates modes 0 and 2k,
  // so at mode k the tendency is exactly nu Lap omega = -|k|^2 omega
  Field u0 = Field::vector(g);
  u0.data(1)[g->flat_index(1, 0, 0)] = Complex{0.0, -0.5};
  u0.data(1)[g->flat_index(g->n - 1, 0, 0)] = Complex{0.0, 0.5};
  SimState s = solver.make_state(u0);
  Field rhs = solver.rhs_curl_form(s);
  const Complex at_k = rhs.data(2)[g->flat_index(1, 0, 0)];
  const Complex w_at_k = s.v.data(2)[g->flat_index(1, 0, 0)];
  CHECK(std::abs(at_k - (-1.0) * w_at_k) <= 1e-12 * std::abs(w_at_k));
  CHECK(hermitian_defect(rhs) <= 1e-13);
}

TEST_CASE("heat-equation limit: if_rk4 advances the linear part exactly") {
  GridPtr g = make_grid(2, 16);
  SolverParams p = small_params(0.3, 0.8);
  p.disable_nonlinearity = true;
  p.dt = 0.05;
  Solver solver(g, p);

  Field u0 = random_divfree_field(g, 99, -1.5, 5, 2.0);
  SimState s = solver.make_state(u0);
  const Field v_before = s.v;
  solver.step(s);

  for_each_mode(*g, [&](std::size_t idx, int, int, int) {
    const double k2 = g->k_squared[idx];
    const double factor = std::exp(-p.nu * k2 * p.dt / (1.0 + p.alpha * k2));
    for (int c = 0; c < 2; ++c) {
      const Complex expected = factor * v_before.data(c)[idx];
      CHECK(std::abs(s.v.data(c)[idx] - expected) <= 1e-15 * std::max(1.0, std::abs(expected)));
    }
  });
}

TEST_CASE("zero field stays zero under step") {
  GridPtr g = make_grid(2, 16);
  Solver solver(g, small_params(0.1));
  SimState s = solver.make_state(Field::vector(g));
  for (int i = 0; i < 5; ++i) solver.step(s);
  CHECK(max_abs_coefficient(s.v) == 0.0);
  CHECK(max_abs_coefficient(s.u) == 0.0);
}

TEST_CASE("Taylor-Green decays at exp(-2 nu t/(1+2 alpha)) under the full solver") {
  GridPtr g = make_grid(2, 32);
  SolverParams p;
  p.alpha = 0.1;
  p.nu = 0.1;
  p.dt = 1e-2;
  p.t_end = 0.5;
  p.sample_every = 10;
  const Field u0 = taylor_green(g, 1.0);
  Trajectory traj = simulate(u0, p);
  REQUIRE(traj.status == RunStatus::completed);

  const double u0_norm = l2_norm(u0);
  for (std::size_t j = 0; j < traj.times.size(); ++j) {
    const double decay = std::exp(-2.0 * p.nu * traj.times[j] / (1.0 + 2.0 * p.alpha));
    Field expected = u0;
    scale(expected, decay);
    CHECK(l2_distance(traj.velocity[j], expected) <= 1e-10 * decay * u0_norm);
  }
}

TEST_CASE("state invariant: u = helmholtz_solve(v, alpha) after every step") {
  GridPtr g = make_grid(2, 32);
  SolverParams p = small_params(0.25);
  Solver solver(g, p);
  SimState s = solver.make_state(random_divfree_field(g, 7, -2.0, 8, 1.0));
  for (int i = 0; i < 20; ++i) {
    solver.step(s);
    Field u_expected = helmholtz_solve(s.v, p.alpha);
    CHECK(l2_distance(s.u, u_expected) <= 1e-12 * std::max(1.0, l2_norm(u_expected)));
    CHECK(divergence_defect(s.u) <= 1e-12);
    CHECK(std::abs(s.u.data(0)[0]) == 0.0);
  }
}

TEST_CASE("simulate: t_end = 0 keeps only the initial state") {
  GridPtr g = make_grid(2, 16);
  SolverParams p = small_params(0.1);
  p.t_end = 0.0;
  Trajectory traj = simulate(taylor_green(g, 1.0), p);
  CHECK(traj.times.size() == 1);
  CHECK(traj.times[0] == 0.0);
  CHECK(traj.records.size() == 1);
}

TEST_CASE("simulate rejects non-divergence-free initial data") {
  GridPtr g = make_grid(2, 16);
  Field bad = Field::vector(g);
  // pure gradient mode: u_hat parallel to k
  bad.data(0)[g->flat_index(1, 0)] = Complex{0.5, 0.0};
  bad.data(0)[g->flat_index(g->n - 1, 0)] = Complex{0.5, 0.0};
  CHECK_THROWS_AS(simulate(bad, small_params(0.0)), std::invalid_argument);
}

TEST_CASE("simulate validates step-count compatibility") {
  GridPtr g = make_grid(2, 16);
  Field u0 = taylor_green(g, 0.1);
  SolverParams p = small_params(0.0);
  p.dt = 1e-3;
  p.t_end = 0.1005;  // not an integer number of steps
  CHECK_THROWS_AS(simulate(u0, p), std::invalid_argument);
  p.t_end = 0.1;
  p.sample_every = 7;  // does not divide 100
  CHECK_THROWS_AS(simulate(u0, p), std::invalid_argument);
}

TEST_CASE("small random data: both alpha = 0 and alpha = 1e-2 decay monotonically") {
  GridPtr g = make_grid(2, 32);
  const Field u0 = random_divfree_field(g, 404, -2.0, 6, 1e-3);
  for (double alpha : {0.0, 1e-2}) {
    SolverParams p = small_params(alpha);
    p.t_end = 0.2;
    Trajectory traj = simulate(u0, p);
    REQUIRE(traj.status == RunStatus::completed);
    for (std::size_t j = 1; j < traj.records.size(); ++j) {
      CHECK(traj.records[j].e_alpha <= traj.records[j - 1].e_alpha * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("discrete cancellation witnesses") {
  GridPtr g = make_grid(2, 32);
  TransformPlan plan(g);
  for (int trial = 0; trial < 8; ++trial) {
    const Field u = random_divfree_field(g, 3300 + trial, -2.0, 8, 1.0);
    const Field w = oracle::random_hermitian_field(g, 2, 4400 + trial, 8);

    // <u.grad w, w> = 0 for divergence-free u; the dealiased product keeps
    // the integration-by-parts cancellation exact
    const PhysicalField up = to_physical(u, plan);
    const PhysicalField jw = to_physical(gradient(w), plan);
    PhysicalField conv;
    conv.grid = g;
    conv.ncomp = 2;
    conv.values.resize(2 * g->mode_count());
    for (int c = 0; c < 2; ++c) {
      for (std::size_t x = 0; x < g->mode_count(); ++x) {
        conv.data(c)[x] = up.data(0)[x] * jw.data(c * 2 + 0)[x] +
                          up.data(1)[x] * jw.data(c * 2 + 1)[x];
      }
    }
    const double flux = l2_inner_product(dealias(to_spectral(conv, plan)), w);
    const double scale_bound = l2_norm(u) * l2_norm(w) * l2_norm(w);
    CHECK(std::abs(flux) <= 1e-10 * std::max(1.0, scale_bound));

    // P(sum_j u_j grad u_j) = P grad(|u|^2)/2 = 0 against any divergence-free
    // test field
    const Field phi = random_divfree_field(g, 5500 + trial, -2.0, 8, 1.0);
    const PhysicalField ju = to_physical(gradient(u), plan);
    PhysicalField gradterm;
    gradterm.grid = g;
    gradterm.ncomp = 2;
    gradterm.values.resize(2 * g->mode_count());
    for (int c = 0; c < 2; ++c) {
      for (std::size_t x = 0; x < g->mode_count(); ++x) {
        gradterm.data(c)[x] = up.data(0)[x] * ju.data(0 * 2 + c)[x] +
                              up.data(1)[x] * ju.data(1 * 2 + c)[x];
      }
    }
    const double proj =
        l2_inner_product(leray_project(dealias(to_spectral(gradterm, plan))), phi);
    CHECK(std::abs(proj) <= 1e-10 * std::max(1.0, l2_norm(u) * l2_norm(u) * l2_norm(phi)));
  }
}

TEST_CASE("curl-form trajectory equals curl of velocity-form trajectory") {
  for (int dim : {2, 3}) {
    GridPtr g = make_grid(dim, 16);
    const Field u0 = random_divfree_field(g, 606, -2.0, 4, 0.05);
    SolverParams p = small_params(0.1, 0.2);
    p.t_end = 0.1;

    Trajectory vel = simulate(u0, p);
    p.formulation = Formulation::curl;
    Trajectory crl = simulate(u0, p);
    REQUIRE(vel.status == RunStatus::completed);
    REQUIRE(crl.status == RunStatus::completed);
    REQUIRE(vel.times.size() == crl.times.size());

    for (std::size_t j = 0; j < vel.times.size(); ++j) {
      CHECK(l2_distance(vel.velocity[j], crl.velocity[j]) <= 1e-10);
    }
  }
}

TEST_CASE("determinism: identical runs produce bit-identical states") {
  GridPtr g = make_grid(3, 16);
  const Field u0 = random_divfree_field(g, 11, -2.0, 4, 0.5);
  SolverParams p = small_params(0.05);
  p.t_end = 0.05;
  p.sample_every = 10;
  Trajectory a = simulate(u0, p);
  Trajectory b = simulate(u0, p);
  REQUIRE(a.velocity.size() == b.velocity.size());
  const Field& fa = a.velocity.back();
  const Field& fb = b.velocity.back();
  for (std::size_t i = 0; i < fa.flat().size(); ++i) {
    CHECK(fa.flat()[i].real() == fb.flat()[i].real());
    CHECK(fa.flat()[i].imag() == fb.flat()[i].imag());
  }
}

TEST_CASE("blow-up is a recorded outcome, not an exception") {
  GridPtr g = make_grid(2, 16);
  Field u0 = random_divfree_field(g, 21, -2.0, 4, 1e8);
  SolverParams p;
  p.alpha = 0.0;
  p.nu = 1e-4;
  p.dt = 0.1;
  p.t_end = 10.0;
  p.sample_every = 1;
  Trajectory traj = simulate(u0, p);
  CHECK(traj.status == RunStatus::blew_up);
  CHECK(traj.blow_up_time > 0.0);
  CHECK(!traj.records.empty());
  CHECK(traj.cfl_violated);
}

TEST_CASE("imex_euler converges at first order on active dynamics") {
  GridPtr g = make_grid(2, 32);
  const Field u0 = random_divfree_field(g, 31, -2.0, 6, 1.0);
  SolverParams p = small_params(0.1, 0.2);
  p.integrator = Integrator::imex_euler;
  p.t_end = 0.1;

  // reference: if_rk4 at a finer dt
  SolverParams pref = p;
  pref.integrator = Integrator::if_rk4;
  pref.dt = 1.25e-4;
  pref.sample_every = 800;
  const Field ref = simulate(u0, pref).velocity.back();

  std::vector<double> errs;
  for (double dt : {1e-3, 5e-4, 2.5e-4}) {
    p.dt = dt;
    p.sample_every = static_cast<int>(std::llround(p.t_end / dt));
    errs.push_back(l2_distance(simulate(u0, p).velocity.back(), ref));
  }
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    const double ratio = errs[i] / errs[i + 1];
    CHECK(ratio > 1.7);  // first order: ratio ~ 2 under dt halving
    CHECK(ratio < 2.6);
  }
}

TEST_CASE("if_rk4 converges at fourth order on active dynamics") {
  GridPtr g = make_grid(2, 32);
  const Field u0 = random_divfree_field(g, 37, -2.0, 6, 2.0);
  SolverParams p = small_params(0.05, 0.05);
  p.t_end = 0.1;

  SolverParams pref = p;
  pref.dt = 6.25e-3 / 8.0;
  pref.sample_every = 128;
  const Field ref = simulate(u0, pref).velocity.back();

  std::vector<double> errs;
  for (double dt : {2.5e-2, 1.25e-2, 6.25e-3}) {
    p.dt = dt;
    p.sample_every = static_cast<int>(std::llround(p.t_end / dt));
    errs.push_back(l2_distance(simulate(u0, p).velocity.back(), ref));
  }
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    const double ratio = errs[i] / errs[i + 1];
    CHECK(ratio > 11.0);  // fourth order: ratio ~ 16 under dt halving
  }
}
