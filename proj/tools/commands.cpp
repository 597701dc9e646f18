#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "g2flow/checkpoint.hpp"
#include "g2flow/harness.hpp"

namespace g2flow::cli {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw ConfigError("cannot write " + path);
  os << j.dump(2) << '\n';
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool wants(const RunConfig& c, const std::string& format) {
  return std::find(c.formats.begin(), c.formats.end(), format) != c.formats.end();
}

void write_trajectory_outputs(const RunConfig& config, const std::string& out_dir,
                              const Trajectory& traj, const std::string& stem) {
  if (wants(config, "csv")) {
    std::ofstream os(out_dir + "/" + stem + ".csv", std::ios::trunc);
    write_diagnostics_csv(os, traj.records);
  }
  if (wants(config, "jsonl")) {
    std::ofstream os(out_dir + "/" + stem + ".jsonl", std::ios::trunc);
    write_diagnostics_jsonl(os, traj.records);
  }
}

Json trajectory_summary(const Trajectory& traj) {
  Json j;
  j["status"] = traj.status == RunStatus::completed ? "completed" : "blew_up";
  if (traj.status == RunStatus::blew_up) j["blow_up_time"] = traj.blow_up_time;
  j["samples"] = traj.times.size();
  j["max_cfl"] = traj.max_cfl;
  j["cfl_violated"] = traj.cfl_violated;
  if (!traj.records.empty()) {
    const auto& last = traj.records.back();
    j["final"] = {{"time", last.time},
                  {"l2", last.norms.l2},
                  {"h1", last.norms.h1},
                  {"e_alpha", last.e_alpha},
                  {"f_value", last.f_value}};
    double h1_max = 0.0, h2_max = 0.0;
    bool cond = true, gron = true, fb = true;
    for (std::size_t i = 0; i < traj.records.size(); ++i) {
      const auto& r = traj.records[i];
      h1_max = std::max(h1_max, r.h1_residual);
      if (i > 0 && i + 1 < traj.records.size()) h2_max = std::max(h2_max, r.h2_residual);
      cond = cond && r.cond_lip_ok && r.cond_l3_ok;
      gron = gron && r.gronwall_ok;
      fb = fb && r.finalbound_ok;
    }
    j["identities"] = {{"h1_residual_max", h1_max},
                       {"h2_residual_max", h2_max},
                       {"cond_held", cond},
                       {"gronwall_ok", gron},
                       {"finalbound_ok", fb}};
  }
  return j;
}

}  // namespace

int cmd_simulate(const RunConfig& config, const std::string& out_dir, bool verbose) {
  ensure_dir(out_dir);
  GridPtr grid = make_config_grid(config);
  const Field u0 = make_initial_field(config, grid);
  if (verbose) {
    std::cerr << "simulate: " << config.dim << "D n=" << config.n
              << " alpha=" << config.solver.alpha << " nu=" << config.solver.nu
              << " t_end=" << config.solver.t_end << "\n";
  }

  const Trajectory traj = simulate(u0, config.solver, config.monitors);

  write_trajectory_outputs(config, out_dir, traj, "diagnostics");
  if (!traj.velocity.empty()) {
    save_checkpoint(out_dir + "/final.g2ck", traj.velocity.back(), config.solver.alpha,
                    config.solver.nu, traj.times.back());
  }
  if (wants(config, "json")) {
    Json j;
    j["config"] = config.to_json();
    j["run"] = trajectory_summary(traj);
    write_json_file(out_dir + "/run.json", j);
  }
  if (verbose) std::cerr << "simulate: wrote " << out_dir << "\n";
  return traj.status == RunStatus::blew_up ? 3 : 0;
}

int cmd_sweep(const RunConfig& config, const std::string& out_dir, bool verbose) {
  if (config.alphas.empty()) throw ConfigError("sweep requires a non-empty \"alphas\" list");
  ensure_dir(out_dir);
  GridPtr grid = make_config_grid(config);
  const Field u0 = make_initial_field(config, grid);
  if (verbose) std::cerr << "sweep: " << config.alphas.size() << " alphas\n";

  const SweepReport report =
      run_alpha_sweep(u0, config.alphas, config.solver, config.parallelism, config.monitors);

  Json j;
  j["config"] = config.to_json();
  j["alphas"] = report.alphas;
  j["errors"] = report.errors;
  j["empirical_orders"] = report.empirical_orders;
  Json runs = Json::array();
  for (const auto& r : report.runs) {
    runs.push_back({{"alpha", r.alpha},
                    {"status", r.status == RunStatus::completed ? "completed" : "blew_up"},
                    {"error", r.error},
                    {"cond_held", r.cond_held},
                    {"gronwall_violation", r.gronwall_violation},
                    {"finalbound_violation", r.finalbound_violation},
                    {"e_alpha_final", r.e_alpha_final}});
  }
  j["runs"] = runs;
  write_json_file(out_dir + "/sweep_report.json", j);

  // wall-clock times go to a sidecar so the report proper stays byte-identical
  // across reruns
  Json timing;
  for (const auto& r : report.runs) {
    timing.push_back({{"alpha", r.alpha}, {"wall_seconds", r.wall_seconds}});
  }
  write_json_file(out_dir + "/sweep_timing.json", timing);

  if (wants(config, "csv")) {
    std::ofstream os(out_dir + "/sweep_errors.csv", std::ios::trunc);
    os << "time";
    for (double a : report.alphas) os << ",err_alpha_" << fmt17(a);
    os << '\n';
    for (std::size_t t = 0; t < report.sample_times.size(); ++t) {
      os << fmt17(report.sample_times[t]);
      for (const auto& series : report.error_series) {
        os << ',' << (t < series.size() ? fmt17(series[t]) : "inf");
      }
      os << '\n';
    }
  }
  return 0;
}

int cmd_probe(const RunConfig& config, const std::string& out_dir, bool verbose) {
  if (config.amplitudes.empty()) {
    throw ConfigError("probe requires a non-empty \"amplitudes\" list");
  }
  ensure_dir(out_dir);
  GridPtr grid = make_config_grid(config);
  const Field base = make_initial_field(config, grid);
  if (verbose) std::cerr << "probe: " << config.amplitudes.size() << " amplitudes\n";

  const ProbeReport report = threshold_probe(base, config.amplitudes, config.solver.alpha,
                                             config.solver.nu, config.solver, config.monitors);

  Json j;
  j["config"] = config.to_json();
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row;
    row["amplitude"] = r.amplitude;
    row["outcome"] = r.outcome;
    row["predicted_time"] = std::isfinite(r.predicted_time) ? Json(r.predicted_time)
                                                            : Json("infinity");
    row["achieved_horizon"] = r.achieved_horizon;
    row["horizon_ok"] = r.horizon_ok;
    row["cond_held"] = r.cond_held;
    row["smallness"] = {{"small1_ok", r.smallness.small1_ok},
                        {"small2_ok", {r.smallness.small2_ok[0], r.smallness.small2_ok[1],
                                       r.smallness.small2_ok[2]}},
                        {"hyplocal_ok", {r.smallness.hyplocal_ok[0], r.smallness.hyplocal_ok[1]}},
                        {"margins", r.smallness.margins},
                        {"alpha_zero_vacuous", r.smallness.alpha_zero_vacuous}};
    rows.push_back(std::move(row));
  }
  j["rows"] = rows;
  j["first_failing_amplitude"] = std::isfinite(report.first_failing_amplitude)
                                     ? Json(report.first_failing_amplitude)
                                     : Json("infinity");
  write_json_file(out_dir + "/probe_report.json", j);
  return 0;
}

int cmd_validate(const RunConfig& config, const std::string& out_dir, bool verbose) {
  ensure_dir(out_dir);
  const double amplitude =
      config.initial.kind == InitialSpec::Kind::taylor_green ? config.initial.amplitude : 1.0;
  if (verbose) std::cerr << "validate: Taylor-Green n=" << config.n << "\n";

  const TaylorGreenValidation v =
      validate_taylor_green(config.solver.alpha, config.solver.nu, config.n, config.solver.dt,
                            config.solver.t_end, amplitude);

  write_trajectory_outputs(config, out_dir, v.trajectory, "diagnostics");
  Json j;
  j["config"] = config.to_json();
  j["max_rel_error"] = v.max_rel_error;
  j["decay_rate"] = 2.0 * v.nu / (1.0 + 2.0 * v.alpha);
  j["run"] = trajectory_summary(v.trajectory);
  write_json_file(out_dir + "/validate_report.json", j);

  std::cout << "taylor-green max relative L2 error: " << fmt17(v.max_rel_error) << "\n";
  return v.trajectory.status == RunStatus::blew_up ? 3 : 0;
}

int cmd_verify_identities(const RunConfig& config, const std::string& out_dir, bool verbose) {
  ensure_dir(out_dir);
  GridPtr grid = make_config_grid(config);
  const Field u0 = make_initial_field(config, grid);
  if (verbose) std::cerr << "verify-identities: running the configured simulation\n";

  const Trajectory traj = simulate(u0, config.solver, config.monitors);
  write_trajectory_outputs(config, out_dir, traj, "diagnostics");

  const Json summary = trajectory_summary(traj);
  Json j;
  j["config"] = config.to_json();
  j["run"] = summary;

  double lemma1_min = 0.0, lemma1_max = 0.0;
  bool first = true;
  for (const auto& r : traj.records) {
    if (r.lemma1_ratio == 0.0) continue;  // zero-field sentinel
    if (first) {
      lemma1_min = lemma1_max = r.lemma1_ratio;
      first = false;
    }
    lemma1_min = std::min(lemma1_min, r.lemma1_ratio);
    lemma1_max = std::max(lemma1_max, r.lemma1_ratio);
  }
  j["lemma1_ratio_range"] = {lemma1_min, lemma1_max};
  write_json_file(out_dir + "/verify_report.json", j);

  if (summary.contains("identities")) {
    const auto& ids = summary.at("identities");
    std::cout << "energy identity residual (max): "
              << fmt17(ids.at("h1_residual_max").get<double>()) << "\n";
    std::cout << "H2 balance residual (max, interior): "
              << fmt17(ids.at("h2_residual_max").get<double>()) << "\n";
    std::cout << "pointwise conditions held: "
              << (ids.at("cond_held").get<bool>() ? "yes" : "no") << "\n";
    std::cout << "gronwall bound: " << (ids.at("gronwall_ok").get<bool>() ? "ok" : "VIOLATED")
              << "\n";
    std::cout << "final bound F(t) <= C_f F(0): "
              << (ids.at("finalbound_ok").get<bool>() ? "ok" : "VIOLATED") << "\n";
    std::cout << "lemma-1 ratio range: [" << fmt17(lemma1_min) << ", " << fmt17(lemma1_max)
              << "]\n";
  }
  return traj.status == RunStatus::blew_up ? 3 : 0;
}

int cmd_inspect_checkpoint(const std::string& path) {
  const CheckpointHeader h = inspect_checkpoint(path);
  const Checkpoint cp = load_checkpoint(path);
  std::cout << "checkpoint: " << path << "\n"
            << "  version: " << h.version << "\n"
            << "  dim: " << h.dim << "\n"
            << "  n: " << h.n << "\n"
            << "  alpha: " << fmt17(h.alpha) << "\n"
            << "  nu: " << fmt17(h.nu) << "\n"
            << "  time: " << fmt17(h.time) << "\n"
            << "  l2 norm: " << fmt17(l2_norm(cp.velocity)) << "\n"
            << "  divergence defect: " << fmt17(divergence_defect(cp.velocity)) << "\n";
  return 0;
}

}  // namespace g2flow::cli
