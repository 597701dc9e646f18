#include "g2flow/harness.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <semaphore>
#include <stdexcept>
#include <thread>

namespace g2flow {

namespace {

bool cond_held_throughout(const Trajectory& traj) {
  for (const auto& r : traj.records) {
    if (!r.cond_lip_ok || !r.cond_l3_ok) return false;
  }
  return true;
}

double wall_seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SweepReport run_alpha_sweep(const Field& u0, const std::vector<double>& alphas,
                            const SolverParams& base, int parallelism,
                            const MonitorConstants& monitors) {
  if (alphas.empty()) throw std::invalid_argument("run_alpha_sweep: empty alpha list");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0) || alphas[i] > 1.0) {
      throw std::invalid_argument("run_alpha_sweep: alphas must lie in (0, 1]");
    }
    if (i > 0 && !(alphas[i] < alphas[i - 1])) {
      throw std::invalid_argument("run_alpha_sweep: alphas must be strictly decreasing");
    }
  }

  const int max_jobs = parallelism > 0
                           ? parallelism
                           : std::max(1u, std::thread::hardware_concurrency());
  std::counting_semaphore<256> slots(std::min(max_jobs, 256));

  struct RunResult {
    Trajectory traj;
    double wall = 0.0;
  };
  auto run_one = [&](double alpha) {
    slots.acquire();
    const auto t0 = std::chrono::steady_clock::now();
    SolverParams p = base;
    p.alpha = alpha;
    RunResult r;
    r.traj = simulate(u0, p, monitors);
    r.wall = wall_seconds_since(t0);
    slots.release();
    return r;
  };

  std::vector<std::future<RunResult>> jobs;
  jobs.push_back(std::async(std::launch::async, run_one, 0.0));
  for (double a : alphas) jobs.push_back(std::async(std::launch::async, run_one, a));

  std::vector<RunResult> results;
  results.reserve(jobs.size());
  for (auto& j : jobs) results.push_back(j.get());

  const Trajectory& ref = results[0].traj;

  SweepReport report;
  report.alphas = alphas;
  report.sample_times = ref.times;
  report.runs.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Trajectory& traj = results[i].traj;
    SweepRunSummary s;
    s.alpha = i == 0 ? 0.0 : alphas[i - 1];
    s.status = traj.status;
    s.wall_seconds = results[i].wall;
    s.cond_held = cond_held_throughout(traj);
    s.gronwall_violation = gronwall_check(traj.records).any_violation();
    s.finalbound_violation = final_bound_check(traj.records, monitors.C_f).any_violation();
    s.e_alpha_final = traj.records.empty() ? 0.0 : traj.records.back().e_alpha;

    if (i > 0) {
      std::vector<double> series;
      double err = 0.0;
      if (traj.status == RunStatus::completed && traj.times.size() == ref.times.size()) {
        series.resize(ref.times.size());
        for (std::size_t j = 0; j < ref.times.size(); ++j) {
          series[j] = l2_distance(traj.velocity[j], ref.velocity[j]);
          err = std::max(err, series[j]);
        }
      } else {
        err = std::numeric_limits<double>::infinity();
      }
      s.error = err;
      report.errors.push_back(err);
      report.error_series.push_back(std::move(series));
    }
    report.runs.push_back(std::move(s));
  }

  for (std::size_t i = 0; i + 1 < report.errors.size(); ++i) {
    const double e0 = report.errors[i], e1 = report.errors[i + 1];
    const double order = (std::isfinite(e0) && std::isfinite(e1) && e0 > 0.0 && e1 > 0.0)
                             ? std::log(e0 / e1) / std::log(alphas[i] / alphas[i + 1])
                             : std::numeric_limits<double>::quiet_NaN();
    report.empirical_orders.push_back(order);
  }
  return report;
}

ProbeReport threshold_probe(const Field& base_field, const std::vector<double>& amplitudes,
                            double alpha, double nu, const SolverParams& base,
                            const MonitorConstants& monitors) {
  for (std::size_t i = 1; i < amplitudes.size(); ++i) {
    if (!(amplitudes[i] > amplitudes[i - 1])) {
      throw std::invalid_argument("threshold_probe: amplitudes must be increasing");
    }
  }
  const double base_norm = l2_norm(base_field);
  if (base_norm == 0.0) throw std::invalid_argument("threshold_probe: zero base field");

  ProbeReport report;
  report.first_failing_amplitude = std::numeric_limits<double>::infinity();

  for (double amp : amplitudes) {
    Field u0 = base_field;
    scale(u0, amp / base_norm);

    SolverParams p = base;
    p.alpha = alpha;
    p.nu = nu;

    ProbeRow row;
    row.amplitude = amp;
    row.smallness = check_smallness(u0, alpha, nu, monitors);
    row.predicted_time = local_time_bound(u0, alpha, nu, monitors.K);

    const Trajectory traj = simulate(u0, p, monitors);
    row.cond_held = cond_held_throughout(traj);
    if (traj.status == RunStatus::blew_up) {
      row.outcome = "blew_up";
      row.achieved_horizon = traj.blow_up_time;
    } else {
      row.outcome = row.cond_held ? "completed" : "monitors_violated";
      row.achieved_horizon = p.t_end;
    }
    row.horizon_ok =
        row.achieved_horizon + 1e-12 >= std::min(row.predicted_time, p.t_end);

    if ((row.outcome != "completed" || !row.horizon_ok) &&
        !std::isfinite(report.first_failing_amplitude)) {
      report.first_failing_amplitude = amp;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

TaylorGreenValidation validate_taylor_green(double alpha, double nu, int n, double dt,
                                            double t_end, double amplitude) {
  GridPtr grid = make_grid(2, n);
  const Field u0 = taylor_green(grid, amplitude);

  SolverParams p;
  p.alpha = alpha;
  p.nu = nu;
  p.dt = dt;
  p.t_end = t_end;
  const long long n_steps = std::llround(t_end / dt);
  p.sample_every = (n_steps % 10 == 0) ? 10 : 1;

  TaylorGreenValidation v;
  v.alpha = alpha;
  v.nu = nu;
  v.n = n;
  v.dt = dt;
  v.trajectory = simulate(u0, p);

  const double u0_norm = l2_norm(u0);
  for (std::size_t j = 0; j < v.trajectory.times.size(); ++j) {
    const double decay = std::exp(-2.0 * nu * v.trajectory.times[j] / (1.0 + 2.0 * alpha));
    Field expected = u0;
    scale(expected, decay);
    const double rel = l2_distance(v.trajectory.velocity[j], expected) / (decay * u0_norm);
    v.max_rel_error = std::max(v.max_rel_error, rel);
  }
  return v;
}

RefinementReport refinement_study(const Field& u0, const SolverParams& base, int n_levels,
                                  const MonitorConstants& monitors) {
  if (n_levels < 1) throw std::invalid_argument("refinement_study: need at least one level");

  RefinementReport report;
  std::vector<Trajectory> vel_runs;
  vel_runs.reserve(n_levels);

  for (int level = 0; level < n_levels; ++level) {
    SolverParams p = base;
    p.dt = base.dt / static_cast<double>(1 << level);
    // sample_every fixed: the sample spacing (and the ledger quadrature)
    // refines together with dt
    RefinementLevel row;
    row.dt = p.dt;
    row.sample_spacing = p.dt * p.sample_every;

    p.formulation = Formulation::velocity;
    Trajectory vel = simulate(u0, p, monitors);
    p.formulation = Formulation::curl;
    Trajectory crl = simulate(u0, p, monitors);

    for (std::size_t j = 0; j < vel.records.size(); ++j) {
      row.h1_residual_max = std::max(row.h1_residual_max, vel.records[j].h1_residual);
      if (j > 0 && j + 1 < vel.records.size()) {
        row.h2_residual_max = std::max(row.h2_residual_max, vel.records[j].h2_residual);
      }
    }
    if (vel.times.size() == crl.times.size()) {
      for (std::size_t j = 0; j < vel.times.size(); ++j) {
        row.formulation_gap =
            std::max(row.formulation_gap, l2_distance(vel.velocity[j], crl.velocity[j]));
      }
    }
    report.levels.push_back(row);
    vel_runs.push_back(std::move(vel));
  }

  // self-convergence: compare each level against the finest at shared times
  const Trajectory& finest = vel_runs.back();
  for (int level = 0; level + 1 < n_levels; ++level) {
    const Trajectory& coarse = vel_runs[level];
    const std::size_t stride = static_cast<std::size_t>(1) << (n_levels - 1 - level);
    double err = 0.0;
    for (std::size_t j = 0; j < coarse.times.size(); ++j) {
      const std::size_t jf = j * stride;
      if (jf < finest.times.size()) {
        err = std::max(err, l2_distance(coarse.velocity[j], finest.velocity[jf]));
      }
    }
    report.levels[level].error_vs_finest = err;
  }

  auto orders_of = [](auto getter, const std::vector<RefinementLevel>& lv, int upto) {
    std::vector<double> orders;
    for (int l = 0; l + 1 < upto; ++l) {
      const double a = getter(lv[l]), b = getter(lv[l + 1]);
      orders.push_back((a > 0.0 && b > 0.0) ? std::log2(a / b)
                                            : std::numeric_limits<double>::quiet_NaN());
    }
    return orders;
  };
  report.h1_orders = orders_of([](const RefinementLevel& l) { return l.h1_residual_max; },
                               report.levels, n_levels);
  report.h2_orders = orders_of([](const RefinementLevel& l) { return l.h2_residual_max; },
                               report.levels, n_levels);
  report.trajectory_orders = orders_of(
      [](const RefinementLevel& l) { return l.error_vs_finest; }, report.levels, n_levels - 1);
  return report;
}

std::vector<SuiteCase> standard_suite() {
  // Amplitudes sit well inside the pointwise-condition region for the default
  // monitor constants, so the Gronwall and final-bound checks are non-vacuous
  // on every member.
  std::vector<SuiteCase> suite;
  {
    SuiteCase c;
    c.name = "tg-2d-n64";
    c.dim = 2;
    c.n = 64;
    c.alpha = 0.1;
    c.nu = 0.1;
    c.t_end = 1.0;
    c.use_taylor_green = true;
    c.amplitude = 1e-3;
    suite.push_back(c);
  }
  {
    SuiteCase c;
    c.name = "rand-2d-n64";
    c.dim = 2;
    c.n = 64;
    c.alpha = 0.05;
    c.nu = 0.1;
    c.t_end = 1.0;
    c.amplitude = 1e-3;
    c.seed = 101;
    c.slope = -2.0;
    c.k_max = 8;
    suite.push_back(c);
  }
  {
    SuiteCase c;
    c.name = "rand-3d-n32-a";
    c.dim = 3;
    c.n = 32;
    c.alpha = 0.1;
    c.nu = 0.1;
    c.t_end = 0.5;
    c.amplitude = 1e-3;
    c.seed = 202;
    c.slope = -2.0;
    c.k_max = 4;
    suite.push_back(c);
  }
  {
    SuiteCase c;
    c.name = "rand-3d-n32-b";
    c.dim = 3;
    c.n = 32;
    c.alpha = 0.01;
    c.nu = 0.1;
    c.t_end = 0.5;
    c.amplitude = 1e-3;
    c.seed = 303;
    c.slope = -2.0;
    c.k_max = 4;
    suite.push_back(c);
  }
  return suite;
}

GridPtr make_suite_grid(const SuiteCase& c) { return make_grid(c.dim, c.n); }

Field make_suite_initial(const SuiteCase& c, const GridPtr& grid) {
  if (c.use_taylor_green) return taylor_green(grid, c.amplitude);
  return random_divfree_field(grid, c.seed, c.slope, c.k_max, c.amplitude);
}

}  // namespace g2flow
