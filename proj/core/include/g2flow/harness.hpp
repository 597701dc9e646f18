#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "g2flow/dynamics.hpp"
#include "g2flow/initial.hpp"

namespace g2flow {

// Experiment drivers at desk scale: the alpha -> 0 sweep against the
// solver's own alpha = 0 run, local-existence-time probing, and analytic
// validation runs.

struct SweepRunSummary {
  double alpha = 0.0;
  RunStatus status = RunStatus::completed;
  double error = 0.0;  // sup over shared sample times of ||u_alpha - u_0||_L2
  double wall_seconds = 0.0;
  bool cond_held = true;
  bool gronwall_violation = false;
  bool finalbound_violation = false;
  double e_alpha_final = 0.0;
};

struct SweepReport {
  std::vector<double> alphas;  // strictly decreasing, all > 0
  std::vector<double> errors;
  std::vector<double> empirical_orders;  // log(e_i/e_{i+1}) / log(a_i/a_{i+1})
  std::vector<SweepRunSummary> runs;     // reference run first, alpha = 0
  std::vector<double> sample_times;
  std::vector<std::vector<double>> error_series;  // per alpha, per sample time
};

/// Runs the alpha = 0 reference plus one run per alpha from identical initial
/// data and parameters; members run as independent parallel jobs
/// (parallelism <= 0 means all available cores). A blow-up is recorded per
/// alpha and the sweep continues.
SweepReport run_alpha_sweep(const Field& u0, const std::vector<double>& alphas,
                            const SolverParams& base, int parallelism = 0,
                            const MonitorConstants& monitors = MonitorConstants::defaults());

struct ProbeRow {
  double amplitude = 0.0;
  std::string outcome;  // "completed" | "monitors_violated" | "blew_up"
  double predicted_time = 0.0;   // local_time_bound with the configured K
  double achieved_horizon = 0.0; // t_end when the run finished, else blow-up time
  bool horizon_ok = true;        // achieved >= min(predicted, t_end)
  bool cond_held = true;
  SmallnessReport smallness;
};

struct ProbeReport {
  std::vector<ProbeRow> rows;  // one per amplitude, increasing
  double first_failing_amplitude = 0.0;  // +inf when every row is clean
};

/// Scales base_field to each amplitude (L2 norm), evaluates the smallness
/// report, runs to t_end or failure, and compares the achieved horizon with
/// the local-existence prediction.
ProbeReport threshold_probe(const Field& base_field, const std::vector<double>& amplitudes,
                            double alpha, double nu, const SolverParams& base,
                            const MonitorConstants& monitors = MonitorConstants::defaults());

struct TaylorGreenValidation {
  double alpha = 0.0, nu = 0.0, dt = 0.0;
  int n = 0;
  double max_rel_error = 0.0;  // vs exp(-2 nu t / (1 + 2 alpha)) u0, in L2
  Trajectory trajectory;
};

/// 2D Taylor-Green regression: the solution stays proportional to the initial
/// vortex with decay rate 2 nu / (1 + 2 alpha).
TaylorGreenValidation validate_taylor_green(double alpha, double nu, int n, double dt,
                                            double t_end = 1.0, double amplitude = 1.0);

struct RefinementLevel {
  double dt = 0.0;
  double sample_spacing = 0.0;
  double h1_residual_max = 0.0;
  double h2_residual_max = 0.0;
  double formulation_gap = 0.0;   // velocity vs curl form, sup_t L2
  double error_vs_finest = 0.0;   // trajectory error against the finest level
};

struct RefinementReport {
  std::vector<RefinementLevel> levels;  // dt halved per level, sampling tied to dt
  std::vector<double> h1_orders, h2_orders, trajectory_orders;
};

/// Halves dt per level (sample spacing follows) and tabulates the identity
/// residuals, cross-formulation gap, and trajectory self-convergence.
RefinementReport refinement_study(const Field& u0, const SolverParams& base, int n_levels,
                                  const MonitorConstants& monitors = MonitorConstants::defaults());

// --- the standard verification suite ---------------------------------------

struct SuiteCase {
  std::string name;
  int dim = 2, n = 64;
  double alpha = 0.0, nu = 0.1, t_end = 1.0;
  bool use_taylor_green = false;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  double slope = -2.0;
  int k_max = 8;
};

/// Taylor-Green plus three seeded random fields (2D n=64 and 3D n=32), with
/// amplitudes small enough that the pointwise conditions hold throughout.
std::vector<SuiteCase> standard_suite();
Field make_suite_initial(const SuiteCase& c, const GridPtr& grid);
GridPtr make_suite_grid(const SuiteCase& c);

}  // namespace g2flow
