#pragma once

#include <string>

#include "config.hpp"

namespace g2flow::cli {

// Subcommand entry points; each returns the process exit code:
//   0 success, 2 configuration error, 3 simulation blow-up (report written).

int cmd_simulate(const RunConfig& config, const std::string& out_dir, bool verbose);
int cmd_sweep(const RunConfig& config, const std::string& out_dir, bool verbose);
int cmd_probe(const RunConfig& config, const std::string& out_dir, bool verbose);
int cmd_validate(const RunConfig& config, const std::string& out_dir, bool verbose);
int cmd_verify_identities(const RunConfig& config, const std::string& out_dir, bool verbose);
int cmd_inspect_checkpoint(const std::string& path);

}  // namespace g2flow::cli
