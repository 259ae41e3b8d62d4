#pragma once

#include <cstdint>
#include <string>

#include "eaq/model.hpp"

namespace eaq {

// Run configuration. Parsing is strict: unknown keys, missing required keys,
// wrong types, and nonpositive numbers are all rejected with the offending
// key path in the message. `seed` is mandatory. Defaults: dt_fluid = 1e-3,
// dt_fclt = 1e-3, k_truncation = 0 (automatic floor), alpha = 0.01.
struct RunConfig {
  Preset preset = Preset::constant_arrivals;
  PresetParams rates{};
  std::int64_t n = 0;

  double t_end = 0.0;
  int grid_points = 0;
  int replications = 0;
  std::uint64_t seed = 0;
  double dt_fluid = 1e-3;
  double dt_fclt = 1e-3;
  int k_truncation = 0;
  double alpha = 0.01;

  std::string out_dir;  // optional in the file; --out overrides
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

ModelParams model_from(const RunConfig& cfg);

// Effective truncation level: the configured one, or the automatic floor.
int truncation_from(const RunConfig& cfg, const ModelParams& p);

}  // namespace eaq
