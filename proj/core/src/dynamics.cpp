#include "g2flow/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace g2flow {

namespace {

void apply_multiplier(Field& f, const std::vector<double>& m) {
  const std::size_t nm = f.grid().mode_count();
  for (int c = 0; c < f.ncomp(); ++c) {
    Complex* a = f.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) a[idx] *= m[idx];
  }
}

Field multiplied(const Field& f, const std::vector<double>& m) {
  Field out = f;
  apply_multiplier(out, m);
  return out;
}

}  // namespace

void SolverParams::validate() const {
  if (alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("SolverParams: alpha must lie in [0, 1]");
  }
  if (!(nu > 0.0)) throw std::invalid_argument("SolverParams: nu must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("SolverParams: dt must be positive");
  if (t_end < 0.0) throw std::invalid_argument("SolverParams: t_end must be >= 0");
  if (sample_every < 1) throw std::invalid_argument("SolverParams: sample_every must be >= 1");
  if (!(cfl_limit > 0.0)) throw std::invalid_argument("SolverParams: cfl_limit must be positive");
}

Field velocity_from_vorticity(const Field& omega) {
  const auto& g = omega.grid();
  const double max_coeff = max_abs_coefficient(omega);
  for (int c = 0; c < omega.ncomp(); ++c) {
    if (std::abs(omega.data(c)[0]) > 1e-12 * std::max(1.0, max_coeff)) {
      throw std::invalid_argument("velocity_from_vorticity: nonzero mean vorticity");
    }
  }

  if (g.dim == 2) {
    if (omega.ncomp() != 1) {
      throw std::invalid_argument("velocity_from_vorticity: 2D vorticity must be scalar");
    }
    Field u = Field::vector(omega.grid_ptr());
    const Complex* w = omega.data(0);
    for_each_mode(g, [&](std::size_t idx, int k0, int k1, int) {
      const double k2 = g.k_squared[idx];
      if (k2 == 0.0) return;
      const Complex s = Complex{0.0, 1.0} * w[idx] / k2;
      u.data(0)[idx] = static_cast<double>(k1) * s;
      u.data(1)[idx] = -static_cast<double>(k0) * s;
    });
    return u;
  }

  if (omega.ncomp() != 3) {
    throw std::invalid_argument("velocity_from_vorticity: 3D vorticity must have 3 components");
  }
  if (divergence_defect(omega) > 1e-8) {
    throw std::invalid_argument("velocity_from_vorticity: vorticity is not divergence-free");
  }
  Field u = Field::vector(omega.grid_ptr());
  for_each_mode(g, [&](std::size_t idx, int k0, int k1, int k2i) {
    const double k2 = g.k_squared[idx];
    if (k2 == 0.0) return;
    const Complex w0 = omega.data(0)[idx], w1 = omega.data(1)[idx], w2 = omega.data(2)[idx];
    const Complex s = Complex{0.0, 1.0} / k2;
    u.data(0)[idx] = s * (static_cast<double>(k1) * w2 - static_cast<double>(k2i) * w1);
    u.data(1)[idx] = s * (static_cast<double>(k2i) * w0 - static_cast<double>(k0) * w2);
    u.data(2)[idx] = s * (static_cast<double>(k0) * w1 - static_cast<double>(k1) * w0);
  });
  return u;
}

Solver::Solver(GridPtr grid, const SolverParams& params)
    : grid_(std::move(grid)), params_(params), plan_(grid_) {
  params_.validate();
  const auto& g = *grid_;
  const std::size_t nm = g.mode_count();
  linear_multiplier_.resize(nm);
  exp_half_.resize(nm);
  exp_full_.resize(nm);
  imex_denominator_.resize(nm);
  for (std::size_t idx = 0; idx < nm; ++idx) {
    const double k2 = g.k_squared[idx];
    const double L = -params_.nu * k2 / (1.0 + params_.alpha * k2);
    linear_multiplier_[idx] = L;
    exp_half_[idx] = std::exp(0.5 * params_.dt * L);
    exp_full_[idx] = std::exp(params_.dt * L);
    imex_denominator_[idx] = 1.0 / (1.0 - params_.dt * L);
  }
}

SimState Solver::make_state(const Field& u0) const {
  SimState s;
  s.time = 0.0;
  s.u = u0;
  if (params_.formulation == Formulation::velocity) {
    s.v = helmholtz_apply(u0, params_.alpha);
  } else {
    s.v = helmholtz_apply(curl(u0), params_.alpha);
  }
  return s;
}

Field Solver::velocity_of(const Field& v) const {
  if (params_.formulation == Formulation::velocity) {
    return helmholtz_solve(v, params_.alpha);
  }
  return velocity_from_vorticity(helmholtz_solve(v, params_.alpha));
}

Field Solver::nonlinear(const Field& v) {
  if (params_.disable_nonlinearity) {
    last_umax_ = 0.0;
    Field zero(v.grid_ptr(), v.ncomp());
    return zero;
  }
  if (params_.formulation == Formulation::velocity) return nonlinear_velocity_form(v);
  return nonlinear_curl_form(v);
}

Field Solver::nonlinear_velocity_form(const Field& v) {
  const auto& g = *grid_;
  const int d = g.dim;
  const std::size_t nm = g.mode_count();

  const Field u = helmholtz_solve(v, params_.alpha);

  std::vector<std::vector<double>> u_phys(d), v_phys(d);
  std::vector<std::vector<double>> du(static_cast<std::size_t>(d) * d),
      dv(static_cast<std::size_t>(d) * d);
  std::vector<Complex> scratch(nm);

  for (int c = 0; c < d; ++c) {
    u_phys[c].resize(nm);
    v_phys[c].resize(nm);
    plan_.to_physical(u.component(c), u_phys[c]);
    plan_.to_physical(v.component(c), v_phys[c]);
  }
  auto fill_jacobian = [&](const Field& f, std::vector<std::vector<double>>& out) {
    for (int c = 0; c < d; ++c) {
      const Complex* src = f.data(c);
      for (int a = 0; a < d; ++a) {
        for_each_mode(g, [&](std::size_t idx, int k0, int k1, int k2) {
          const int kk = (a == 0) ? k0 : (a == 1 ? k1 : k2);
          scratch[idx] = Complex{0.0, 1.0} * static_cast<double>(kk) * src[idx];
        });
        auto& slot = out[static_cast<std::size_t>(c) * d + a];
        slot.resize(nm);
        plan_.to_physical(scratch, slot);
      }
    }
  };
  fill_jacobian(u, du);
  fill_jacobian(v, dv);

  double umax2 = 0.0;
  for (std::size_t x = 0; x < nm; ++x) {
    double m2 = 0.0;
    for (int c = 0; c < d; ++c) m2 += u_phys[c][x] * u_phys[c][x];
    umax2 = std::max(umax2, m2);
  }
  last_umax_ = std::sqrt(umax2);

  // N_c = -[ (u.grad v)_c + sum_j v_j d_c u_j ]
  Field n_field(v.grid_ptr(), d);
  std::vector<double> prod(nm);
  for (int c = 0; c < d; ++c) {
    for (std::size_t x = 0; x < nm; ++x) {
      double acc = 0.0;
      for (int a = 0; a < d; ++a) acc += u_phys[a][x] * dv[static_cast<std::size_t>(c) * d + a][x];
      for (int j = 0; j < d; ++j) acc += v_phys[j][x] * du[static_cast<std::size_t>(j) * d + c][x];
      prod[x] = -acc;
    }
    plan_.to_spectral(prod, n_field.component(c));
  }

  dealias_in_place(n_field);
  n_field = leray_project(n_field);
  zero_mean_mode(n_field);
  symmetrize_hermitian(n_field);
  return n_field;
}

Field Solver::nonlinear_curl_form(const Field& v) {
  const auto& g = *grid_;
  const int d = g.dim;
  const std::size_t nm = g.mode_count();
  const int wc = v.ncomp();  // 1 in 2D (scalar vorticity), 3 in 3D

  const Field omega = helmholtz_solve(v, params_.alpha);
  const Field u = velocity_from_vorticity(omega);

  std::vector<std::vector<double>> u_phys(d), w_phys(wc);
  std::vector<std::vector<double>> dw(static_cast<std::size_t>(wc) * d),
      du(static_cast<std::size_t>(d) * d);
  std::vector<Complex> scratch(nm);

  for (int c = 0; c < d; ++c) {
    u_phys[c].resize(nm);
    plan_.to_physical(u.component(c), u_phys[c]);
  }
  for (int c = 0; c < wc; ++c) {
    w_phys[c].resize(nm);
    plan_.to_physical(v.component(c), w_phys[c]);
  }
  auto fill_jacobian = [&](const Field& f, int ncomp, std::vector<std::vector<double>>& out) {
    for (int c = 0; c < ncomp; ++c) {
      const Complex* src = f.data(c);
      for (int a = 0; a < d; ++a) {
        for_each_mode(g, [&](std::size_t idx, int k0, int k1, int k2) {
          const int kk = (a == 0) ? k0 : (a == 1 ? k1 : k2);
          scratch[idx] = Complex{0.0, 1.0} * static_cast<double>(kk) * src[idx];
        });
        auto& slot = out[static_cast<std::size_t>(c) * d + a];
        slot.resize(nm);
        plan_.to_physical(scratch, slot);
      }
    }
  };
  fill_jacobian(v, wc, dw);
  if (d == 3) fill_jacobian(u, d, du);

  double umax2 = 0.0;
  for (std::size_t x = 0; x < nm; ++x) {
    double m2 = 0.0;
    for (int c = 0; c < d; ++c) m2 += u_phys[c][x] * u_phys[c][x];
    umax2 = std::max(umax2, m2);
  }
  last_umax_ = std::sqrt(umax2);

  // N_c = -(u.grad w)_c + (w.grad u)_c; the stretching term vanishes in 2D.
  Field n_field(v.grid_ptr(), wc);
  std::vector<double> prod(nm);
  for (int c = 0; c < wc; ++c) {
    for (std::size_t x = 0; x < nm; ++x) {
      double acc = 0.0;
      for (int a = 0; a < d; ++a) acc -= u_phys[a][x] * dw[static_cast<std::size_t>(c) * d + a][x];
      if (d == 3) {
        for (int a = 0; a < d; ++a)
          acc += w_phys[a][x] * du[static_cast<std::size_t>(c) * d + a][x];
      }
      prod[x] = acc;
    }
    plan_.to_spectral(prod, n_field.component(c));
  }

  dealias_in_place(n_field);
  zero_mean_mode(n_field);
  symmetrize_hermitian(n_field);
  return n_field;
}

Field Solver::rhs_velocity_form(const SimState& state) {
  if (params_.formulation != Formulation::velocity) {
    throw std::logic_error("rhs_velocity_form: solver configured for the curl formulation");
  }
  Field out = nonlinear(state.v);
  const std::size_t nm = grid_->mode_count();
  for (int c = 0; c < out.ncomp(); ++c) {
    Complex* a = out.data(c);
    const Complex* vv = state.v.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) a[idx] += linear_multiplier_[idx] * vv[idx];
  }
  return out;
}

Field Solver::rhs_curl_form(const SimState& state) {
  if (params_.formulation != Formulation::curl) {
    throw std::logic_error("rhs_curl_form: solver configured for the velocity formulation");
  }
  Field out = nonlinear(state.v);
  const std::size_t nm = grid_->mode_count();
  for (int c = 0; c < out.ncomp(); ++c) {
    Complex* a = out.data(c);
    const Complex* vv = state.v.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) a[idx] += linear_multiplier_[idx] * vv[idx];
  }
  return out;
}

void Solver::step(SimState& state) {
  const double dt = params_.dt;
  Field& v = state.v;

  if (params_.integrator == Integrator::imex_euler) {
    Field n = nonlinear(v);
    state.cfl = dt * last_umax_ / (2.0 * std::numbers::pi / grid_->n);
    axpy(dt, n, v);
    apply_multiplier(v, imex_denominator_);
  } else {
    // Integrating-factor RK4: the diagonal linear part is advanced exactly,
    // the nonlinearity explicitly.
    Field a = nonlinear(v);
    state.cfl = dt * last_umax_ / (2.0 * std::numbers::pi / grid_->n);
    scale(a, dt);

    Field stage = v;
    axpy(0.5, a, stage);
    apply_multiplier(stage, exp_half_);
    Field b = nonlinear(stage);
    scale(b, dt);

    stage = multiplied(v, exp_half_);
    axpy(0.5, b, stage);
    Field c = nonlinear(stage);
    scale(c, dt);

    stage = multiplied(v, exp_full_);
    {
      Field ec = multiplied(c, exp_half_);
      axpy(1.0, ec, stage);
    }
    Field d = nonlinear(stage);
    scale(d, dt);

    apply_multiplier(v, exp_full_);
    apply_multiplier(a, exp_full_);
    axpy(1.0 / 6.0, a, v);
    axpy(1.0, c, b);
    apply_multiplier(b, exp_half_);
    axpy(2.0 / 6.0, b, v);
    axpy(1.0 / 6.0, d, v);
  }

  symmetrize_hermitian(v);
  zero_mean_mode(v);
  state.time += dt;
  state.u = velocity_of(v);
}

Trajectory simulate(const Field& u0_in, const SolverParams& params,
                    const MonitorConstants& monitors) {
  params.validate();
  GridPtr grid = u0_in.grid_ptr();
  if (!grid) throw std::invalid_argument("simulate: empty initial field");
  if (u0_in.ncomp() != grid->dim) {
    throw std::invalid_argument("simulate: initial data must be a velocity field");
  }
  if (divergence_defect(u0_in) > 1e-10) {
    throw std::invalid_argument("simulate: initial data is not divergence-free");
  }

  // Inputs are truncated to the dealias band and symmetrized; dynamics never
  // leave that subspace.
  Field u0 = dealias(u0_in);
  symmetrize_hermitian(u0);
  zero_mean_mode(u0);

  const long long n_steps = std::llround(params.t_end / params.dt);
  if (std::abs(static_cast<double>(n_steps) * params.dt - params.t_end) >
      1e-9 * std::max(1.0, params.t_end)) {
    throw std::invalid_argument("simulate: t_end must be an integer number of steps");
  }
  if (n_steps > 0 && n_steps % params.sample_every != 0) {
    throw std::invalid_argument("simulate: sample_every must divide the step count");
  }

  Solver solver(grid, params);
  SimState state = solver.make_state(u0);

  Trajectory out;
  out.grid = grid;
  out.params = params;

  auto sample = [&](double t) {
    out.times.push_back(t);
    out.velocity.push_back(state.u);
    out.records.push_back(instantaneous_record(state.u, t, params.alpha, params.nu, monitors,
                                               solver.plan(), state.cfl, params.cfl_limit));
  };

  sample(0.0);
  for (long long i = 1; i <= n_steps; ++i) {
    solver.step(state);
    state.time = static_cast<double>(i) * params.dt;
    out.max_cfl = std::max(out.max_cfl, state.cfl);

    if (!all_finite(state.v) || l2_norm(state.v) > 1e12) {
      out.status = RunStatus::blew_up;
      out.blow_up_time = state.time;
      break;
    }
    if (i % params.sample_every == 0) sample(state.time);
  }

  out.cfl_violated = out.max_cfl > params.cfl_limit;
  finalize_diagnostics(out.records, params.alpha, params.nu, monitors);
  return out;
}

}  // namespace g2flow
