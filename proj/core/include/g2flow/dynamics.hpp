#pragma once

#include <memory>
#include <string>
#include <vector>

#include "g2flow/diagnostics.hpp"
#include "g2flow/operators.hpp"
#include "g2flow/transform.hpp"

namespace g2flow {

enum class Formulation { velocity, curl };
enum class Integrator { if_rk4, imex_euler };

struct SolverParams {
  double alpha = 0.0;  // filter length^2, 0 <= alpha <= 1 (alpha = 0 is Navier-Stokes)
  double nu = 0.1;     // viscosity, > 0
  double dt = 1e-3;
  double t_end = 1.0;
  Formulation formulation = Formulation::velocity;
  Integrator integrator = Integrator::if_rk4;
  double cfl_limit = 0.5;
  int sample_every = 10;
  bool disable_nonlinearity = false;  // test hook: pure Stokes dynamics

  void validate() const;  // throws std::invalid_argument on a bad range
};

/// Evolved state. v is (1 - alpha Lap) u in the velocity formulation and
/// omega_alpha = (1 - alpha Lap) curl u in the curl formulation; u is the
/// cached velocity, refreshed after every step.
struct SimState {
  double time = 0.0;
  Field v;
  Field u;
  double cfl = 0.0;  // dt max|u| / (2pi/n) measured at the last step's start
};

enum class RunStatus { completed, blew_up };

struct Trajectory {
  GridPtr grid;
  SolverParams params;
  RunStatus status = RunStatus::completed;
  double blow_up_time = 0.0;  // meaningful when status == blew_up
  double max_cfl = 0.0;
  bool cfl_violated = false;

  std::vector<double> times;           // sample times
  std::vector<Field> velocity;         // sampled u (spectral)
  std::vector<DiagnosticsRecord> records;
};

/// Fourier Biot-Savart: u_k = (i k x w_k)/|k|^2; the 2D analogue takes the
/// scalar vorticity. Rejects a nonzero mean mode and (3D) a vorticity with
/// nonzero divergence.
Field velocity_from_vorticity(const Field& omega);

/// Time stepper for one grid and parameter set. Owns the transform plan and
/// scratch buffers: one Solver per worker thread.
class Solver {
 public:
  Solver(GridPtr grid, const SolverParams& params);

  const SolverParams& params() const { return params_; }
  TransformPlan& plan() { return plan_; }

  /// Initial evolved state from a divergence-free, mean-zero velocity.
  SimState make_state(const Field& u0) const;

  /// Velocity carried by an evolved variable.
  Field velocity_of(const Field& v) const;

  /// Full tendency dv/dt = P[nu Lap u - u.grad v - sum_j v_j grad u_j] of the
  /// evolved velocity-form variable (divergence-free, mean-zero).
  Field rhs_velocity_form(const SimState& state);

  /// Full tendency of omega_alpha: nu Lap omega - u.grad omega_alpha
  /// (+ omega_alpha.grad u in 3D).
  Field rhs_curl_form(const SimState& state);

  /// Advances one dt. The stiff multiplier -nu|k|^2/(1+alpha|k|^2) is treated
  /// exactly by the integrating factor under if_rk4; Hermitian symmetry is
  /// re-enforced afterwards.
  void step(SimState& state);

 private:
  Field nonlinear(const Field& v);
  Field nonlinear_velocity_form(const Field& v);
  Field nonlinear_curl_form(const Field& v);

  GridPtr grid_;
  SolverParams params_;
  TransformPlan plan_;
  std::vector<double> linear_multiplier_;  // -nu |k|^2 / (1 + alpha |k|^2)
  std::vector<double> exp_half_, exp_full_, imex_denominator_;
  double last_umax_ = 0.0;
};

/// Integrates the initial value problem, sampling every sample_every steps
/// (t = 0 and the final time included) and running the diagnostics ledger.
/// Rejects initial data that is not divergence-free to 1e-10. A blow-up
/// (NaN or any norm above 1e12) ends the run with status blew_up and the
/// ledger collected so far.
Trajectory simulate(const Field& u0, const SolverParams& params,
                    const MonitorConstants& monitors = MonitorConstants::defaults());

}  // namespace g2flow
