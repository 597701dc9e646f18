#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "g2flow/checkpoint.hpp"
#include "commands.hpp"

using namespace g2flow;
using namespace g2flow::cli;

int main(int argc, char** argv) {
  CLI::App app{"g2flow: pseudo-spectral second-grade fluid solver on the periodic torus"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool verbose = false;
  std::string checkpoint_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON configuration file")->required();
    cmd->add_option("--out", out_dir, "output directory (overrides output.directory)");
    cmd->add_flag("--verbose", verbose, "progress output on stderr");
  };

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "integrate one configured run");
  add_common(simulate_cmd);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "alpha sweep against the alpha=0 reference");
  add_common(sweep_cmd);
  CLI::App* probe_cmd = app.add_subcommand("probe", "amplitude threshold probe");
  add_common(probe_cmd);
  CLI::App* validate_cmd = app.add_subcommand("validate", "Taylor-Green analytic regression");
  add_common(validate_cmd);
  CLI::App* verify_cmd =
      app.add_subcommand("verify-identities", "run and report every identity monitor");
  add_common(verify_cmd);
  CLI::App* inspect_cmd = app.add_subcommand("inspect-checkpoint", "validate and print a checkpoint");
  inspect_cmd->add_option("file", checkpoint_path, "checkpoint path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (inspect_cmd->parsed()) return cmd_inspect_checkpoint(checkpoint_path);

    RunConfig config = RunConfig::from_file(config_path);
    const std::string dir = out_dir.empty() ? config.output_directory : out_dir;
    if (simulate_cmd->parsed()) return cmd_simulate(config, dir, verbose);
    if (sweep_cmd->parsed()) return cmd_sweep(config, dir, verbose);
    if (probe_cmd->parsed()) return cmd_probe(config, dir, verbose);
    if (validate_cmd->parsed()) return cmd_validate(config, dir, verbose);
    if (verify_cmd->parsed()) return cmd_verify_identities(config, dir, verbose);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
