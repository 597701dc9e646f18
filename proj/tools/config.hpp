#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "g2flow/dynamics.hpp"

namespace g2flow::cli {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitialSpec {
  enum class Kind { taylor_green, random, checkpoint } kind = Kind::taylor_green;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  double slope = -2.0;
  int k_max = 8;
  std::string checkpoint_path;
};

/// One JSON document configures a run; every parameter is range-checked and
/// unknown keys are rejected before anything executes.
struct RunConfig {
  int dim = 2;
  int n = 64;
  SolverParams solver;
  InitialSpec initial;
  MonitorConstants monitors = MonitorConstants::defaults();
  std::string output_directory = "out";
  std::vector<std::string> formats = {"csv", "jsonl", "json"};
  int parallelism = 0;  // 0 = available cores

  std::vector<double> alphas;      // sweep
  std::vector<double> amplitudes;  // probe
  int refinement_levels = 3;       // verify-identities

  static RunConfig from_json(const Json& j);
  static RunConfig from_file(const std::string& path);
  Json to_json() const;  // fully resolved echo, embedded in every report
};

GridPtr make_config_grid(const RunConfig& c);
Field make_initial_field(const RunConfig& c, const GridPtr& grid);

}  // namespace g2flow::cli
