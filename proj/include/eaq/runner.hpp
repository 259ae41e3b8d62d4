#pragma once

#include <string>

#include "eaq/config.hpp"

namespace eaq {

struct RunRequest {
  std::string subcommand;  // simulate | fluid | fclt | validate | sweep
  RunConfig cfg;
  std::string config_source_text;  // snapshot copied into the run directory
  int threads = 1;                 // affects speed only, never results
};

// Executes one subcommand; creates the output directory, writes the config
// snapshot and the subcommand's CSV outputs. Returns the process exit code
// (validate: 0 only if every battery test passed).
int run(const RunRequest& req);

}  // namespace eaq
