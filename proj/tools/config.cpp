#include "config.hpp"

#include <fstream>
#include <set>

#include "g2flow/checkpoint.hpp"
#include "g2flow/initial.hpp"

namespace g2flow::cli {

namespace {

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
    }
  }
}

template <typename T>
T get_or(const Json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("key \"" + key + "\" has the wrong type");
  }
}

template <typename T>
T require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing required key \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(where + ": key \"" + key + "\" has the wrong type");
  }
}

}  // namespace

RunConfig RunConfig::from_json(const Json& j) {
  reject_unknown_keys(j, {"grid", "solver", "initial", "monitors", "output", "parallelism",
                          "alphas", "amplitudes", "refinement_levels"},
                      "config");
  RunConfig c;

  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    reject_unknown_keys(g, {"dim", "n"}, "grid");
    c.dim = require<int>(g, "dim", "grid");
    c.n = require<int>(g, "n", "grid");
    if (c.dim != 2 && c.dim != 3) throw ConfigError("grid.dim must be 2 or 3");
    if (c.n < 8 || c.n % 2 != 0) throw ConfigError("grid.n must be even and >= 8");
  }

  if (j.contains("solver")) {
    const Json& s = j.at("solver");
    reject_unknown_keys(s,
                        {"alpha", "nu", "dt", "t_end", "formulation", "integrator", "cfl_limit",
                         "sample_every", "disable_nonlinearity"},
                        "solver");
    c.solver.alpha = get_or(s, "alpha", c.solver.alpha);
    c.solver.nu = get_or(s, "nu", c.solver.nu);
    c.solver.dt = get_or(s, "dt", c.solver.dt);
    c.solver.t_end = get_or(s, "t_end", c.solver.t_end);
    c.solver.cfl_limit = get_or(s, "cfl_limit", c.solver.cfl_limit);
    c.solver.sample_every = get_or(s, "sample_every", c.solver.sample_every);
    c.solver.disable_nonlinearity = get_or(s, "disable_nonlinearity", false);
    const std::string form = get_or<std::string>(s, "formulation", "velocity");
    if (form == "velocity") {
      c.solver.formulation = Formulation::velocity;
    } else if (form == "curl") {
      c.solver.formulation = Formulation::curl;
    } else {
      throw ConfigError("solver.formulation must be \"velocity\" or \"curl\"");
    }
    const std::string integ = get_or<std::string>(s, "integrator", "if_rk4");
    if (integ == "if_rk4") {
      c.solver.integrator = Integrator::if_rk4;
    } else if (integ == "imex_euler") {
      c.solver.integrator = Integrator::imex_euler;
    } else {
      throw ConfigError("solver.integrator must be \"if_rk4\" or \"imex_euler\"");
    }
    try {
      c.solver.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("solver: ") + e.what());
    }
  }

  if (j.contains("initial")) {
    const Json& ic = j.at("initial");
    reject_unknown_keys(ic, {"type", "amplitude", "seed", "slope", "k_max", "path"}, "initial");
    const std::string type = require<std::string>(ic, "type", "initial");
    if (type == "taylor_green") {
      c.initial.kind = InitialSpec::Kind::taylor_green;
      c.initial.amplitude = get_or(ic, "amplitude", 1.0);
    } else if (type == "random") {
      c.initial.kind = InitialSpec::Kind::random;
      c.initial.amplitude = get_or(ic, "amplitude", 1.0);
      c.initial.seed = get_or<std::uint64_t>(ic, "seed", 0);
      c.initial.slope = get_or(ic, "slope", -2.0);
      c.initial.k_max = get_or(ic, "k_max", 8);
      if (c.initial.k_max < 1) throw ConfigError("initial.k_max must be >= 1");
    } else if (type == "checkpoint") {
      c.initial.kind = InitialSpec::Kind::checkpoint;
      c.initial.checkpoint_path = require<std::string>(ic, "path", "initial");
    } else {
      throw ConfigError("initial.type must be taylor_green, random, or checkpoint");
    }
    if (c.initial.amplitude < 0.0) throw ConfigError("initial.amplitude must be >= 0");
  }

  if (j.contains("monitors")) {
    const Json& m = j.at("monitors");
    reject_unknown_keys(m, {"epsilon", "epsilon1", "K", "C_f", "M"}, "monitors");
    c.monitors.epsilon = get_or(m, "epsilon", c.monitors.epsilon);
    c.monitors.epsilon1 = get_or(m, "epsilon1", c.monitors.epsilon1);
    c.monitors.K = get_or(m, "K", c.monitors.K);
    c.monitors.C_f = get_or(m, "C_f", c.monitors.C_f);
    c.monitors.M = get_or(m, "M", c.monitors.M);
    if (c.monitors.epsilon <= 0.0 || c.monitors.epsilon1 <= 0.0 || c.monitors.K <= 0.0 ||
        c.monitors.C_f <= 0.0) {
      throw ConfigError("monitors: epsilon, epsilon1, K, C_f must be positive");
    }
  }

  if (j.contains("output")) {
    const Json& o = j.at("output");
    reject_unknown_keys(o, {"directory", "formats"}, "output");
    c.output_directory = get_or<std::string>(o, "directory", c.output_directory);
    c.formats = get_or<std::vector<std::string>>(o, "formats", c.formats);
    for (const auto& f : c.formats) {
      if (f != "csv" && f != "jsonl" && f != "json") {
        throw ConfigError("output.formats entries must be csv, jsonl, or json");
      }
    }
  }

  c.parallelism = get_or(j, "parallelism", 0);
  if (c.parallelism < 0) throw ConfigError("parallelism must be >= 0");

  c.alphas = get_or<std::vector<double>>(j, "alphas", {});
  c.amplitudes = get_or<std::vector<double>>(j, "amplitudes", {});
  c.refinement_levels = get_or(j, "refinement_levels", 3);
  if (c.refinement_levels < 1) throw ConfigError("refinement_levels must be >= 1");

  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(is);
  } catch (const Json::parse_error& e) {
    // e.what() carries the byte offset and a description of the defect
    throw ConfigError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return from_json(j);
}

Json RunConfig::to_json() const {
  Json j;
  j["grid"] = {{"dim", dim}, {"n", n}};
  j["solver"] = {
      {"alpha", solver.alpha},
      {"nu", solver.nu},
      {"dt", solver.dt},
      {"t_end", solver.t_end},
      {"formulation", solver.formulation == Formulation::velocity ? "velocity" : "curl"},
      {"integrator", solver.integrator == Integrator::if_rk4 ? "if_rk4" : "imex_euler"},
      {"cfl_limit", solver.cfl_limit},
      {"sample_every", solver.sample_every},
      {"disable_nonlinearity", solver.disable_nonlinearity},
  };
  switch (initial.kind) {
    case InitialSpec::Kind::taylor_green:
      j["initial"] = {{"type", "taylor_green"}, {"amplitude", initial.amplitude}};
      break;
    case InitialSpec::Kind::random:
      j["initial"] = {{"type", "random"},       {"amplitude", initial.amplitude},
                      {"seed", initial.seed},   {"slope", initial.slope},
                      {"k_max", initial.k_max}};
      break;
    case InitialSpec::Kind::checkpoint:
      j["initial"] = {{"type", "checkpoint"}, {"path", initial.checkpoint_path}};
      break;
  }
  j["monitors"] = {{"epsilon", monitors.epsilon},
                   {"epsilon1", monitors.epsilon1},
                   {"K", monitors.K},
                   {"C_f", monitors.C_f},
                   {"M", monitors.M}};
  j["output"] = {{"directory", output_directory}, {"formats", formats}};
  j["parallelism"] = parallelism;
  if (!alphas.empty()) j["alphas"] = alphas;
  if (!amplitudes.empty()) j["amplitudes"] = amplitudes;
  j["refinement_levels"] = refinement_levels;
  return j;
}

GridPtr make_config_grid(const RunConfig& c) { return make_grid(c.dim, c.n); }

Field make_initial_field(const RunConfig& c, const GridPtr& grid) {
  switch (c.initial.kind) {
    case InitialSpec::Kind::taylor_green:
      return taylor_green(grid, c.initial.amplitude);
    case InitialSpec::Kind::random:
      return random_divfree_field(grid, c.initial.seed, c.initial.slope, c.initial.k_max,
                                  c.initial.amplitude);
    case InitialSpec::Kind::checkpoint: {
      Checkpoint cp = load_checkpoint(c.initial.checkpoint_path);
      if (static_cast<int>(cp.header.dim) != grid->dim ||
          static_cast<int>(cp.header.n) != grid->n) {
        throw ConfigError("checkpoint grid (" + std::to_string(cp.header.dim) + "D n=" +
                          std::to_string(cp.header.n) + ") does not match the configured grid");
      }
      return cp.velocity;
    }
  }
  throw ConfigError("unreachable initial kind");
}

}  // namespace g2flow::cli
