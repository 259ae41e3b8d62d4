#include "eaq/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "eaq/fclt.hpp"

namespace eaq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

const json& member(const json& obj, const std::string& scope, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail("missing key " + scope + key);
  return *it;
}

void reject_unknown(const json& obj, const std::string& scope, std::set<std::string> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) fail("unknown key " + scope + it.key());
}

double get_positive(const json& obj, const std::string& scope, const char* key) {
  const json& v = member(obj, scope, key);
  if (!v.is_number()) fail(scope + key + " must be a number");
  const double d = v.get<double>();
  if (!(d > 0.0)) fail(scope + key + " must be > 0");
  return d;
}

std::int64_t get_positive_int(const json& obj, const std::string& scope, const char* key) {
  const json& v = member(obj, scope, key);
  if (!v.is_number_integer()) fail(scope + key + " must be an integer");
  const auto d = v.get<std::int64_t>();
  if (d < 1) fail(scope + key + " must be >= 1");
  return d;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("top level must be an object");
  reject_unknown(root, "", {"model", "sim", "output"});

  RunConfig cfg;

  const json& model = member(root, "", "model");
  if (!model.is_object()) fail("model must be an object");
  reject_unknown(model, "model.", {"preset", "lambda_A", "mu_A", "lambda_B", "mu_B", "M", "n"});
  const json& preset = member(model, "model.", "preset");
  if (!preset.is_string()) fail("model.preset must be a string");
  const std::string preset_name = preset.get<std::string>();
  if (preset_name == "constant_arrivals") {
    cfg.preset = Preset::constant_arrivals;
  } else if (preset_name == "regulated_arrivals") {
    cfg.preset = Preset::regulated_arrivals;
  } else {
    fail("model.preset must be constant_arrivals or regulated_arrivals");
  }
  cfg.rates.lambda_A = get_positive(model, "model.", "lambda_A");
  cfg.rates.mu_A = get_positive(model, "model.", "mu_A");
  cfg.rates.lambda_B = get_positive(model, "model.", "lambda_B");
  cfg.rates.mu_B = get_positive(model, "model.", "mu_B");
  const json& mval = member(model, "model.", "M");
  if (!mval.is_number()) fail("model.M must be a number");
  cfg.rates.M = mval.get<double>();
  if (cfg.rates.M < 0.0) fail("model.M must be >= 0");
  cfg.n = get_positive_int(model, "model.", "n");

  const json& sim = member(root, "", "sim");
  if (!sim.is_object()) fail("sim must be an object");
  reject_unknown(sim, "sim.",
                 {"t_end", "grid_points", "replications", "seed", "dt_fluid", "dt_fclt",
                  "K_truncation", "alpha"});
  cfg.t_end = get_positive(sim, "sim.", "t_end");
  cfg.grid_points = static_cast<int>(get_positive_int(sim, "sim.", "grid_points"));
  if (cfg.grid_points < 2) fail("sim.grid_points must be >= 2");
  cfg.replications = static_cast<int>(get_positive_int(sim, "sim.", "replications"));
  const json& seed = member(sim, "sim.", "seed");
  if (!seed.is_number_integer()) fail("sim.seed must be a nonnegative integer");
  if (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)
    fail("sim.seed must be a nonnegative integer");
  cfg.seed = seed.get<std::uint64_t>();
  if (sim.contains("dt_fluid")) {
    cfg.dt_fluid = sim["dt_fluid"].is_number() ? sim["dt_fluid"].get<double>() : -1.0;
    if (!(cfg.dt_fluid > 0.0)) fail("sim.dt_fluid must be > 0");
  }
  if (sim.contains("dt_fclt")) {
    cfg.dt_fclt = sim["dt_fclt"].is_number() ? sim["dt_fclt"].get<double>() : -1.0;
    if (!(cfg.dt_fclt > 0.0)) fail("sim.dt_fclt must be > 0");
  }
  if (sim.contains("K_truncation")) {
    const json& kt = sim["K_truncation"];
    if (!kt.is_number_integer() || kt.get<std::int64_t>() < 0)
      fail("sim.K_truncation must be an integer >= 0");
    cfg.k_truncation = static_cast<int>(kt.get<std::int64_t>());
  }
  if (sim.contains("alpha")) {
    const json& a = sim["alpha"];
    if (!a.is_number()) fail("sim.alpha must be a number");
    cfg.alpha = a.get<double>();
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) fail("sim.alpha must lie in (0, 1)");
  }

  if (root.contains("output")) {
    const json& output = root["output"];
    if (!output.is_object()) fail("output must be an object");
    reject_unknown(output, "output.", {"directory"});
    const json& dir = member(output, "output.", "directory");
    if (!dir.is_string()) fail("output.directory must be a string");
    cfg.out_dir = dir.get<std::string>();
  }

  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ModelParams model_from(const RunConfig& cfg) { return make_preset(cfg.preset, cfg.rates, cfg.n); }

int truncation_from(const RunConfig& cfg, const ModelParams& p) {
  return cfg.k_truncation > 0 ? cfg.k_truncation : truncation_floor(p);
}

}  // namespace eaq
