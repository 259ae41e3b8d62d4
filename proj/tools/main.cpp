#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "eaq/runner.hpp"

namespace {

struct SubArgs {
  std::string config;
  std::string out;
  int threads = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-timescale queue toolkit: exact simulation, fluid limit, fluctuation limit"};
  app.require_subcommand(1);

  const char* names[] = {"simulate", "fluid", "fclt", "validate", "sweep"};
  const char* descs[] = {
      "exact trajectories sampled on a uniform grid",
      "deterministic limit path",
      "diffusion-coefficient profile and fluctuation variance",
      "statistical battery; exit 0 only if every test passes",
      "steady state versus fast-queue arrival rate",
  };
  SubArgs args[5];
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("--config", args[i].config, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args[i].out, "output directory (overrides output.directory)");
    sub->add_option("--threads", args[i].threads, "worker threads; affects speed only")
        ->check(CLI::PositiveNumber);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    int idx = 0;
    for (int i = 0; i < 5; ++i)
      if (chosen->get_name() == names[i]) idx = i;

    std::ifstream in(args[idx].config);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    eaq::RunRequest req;
    req.subcommand = names[idx];
    req.cfg = eaq::parse_config_text(text);
    req.config_source_text = text;
    req.threads = args[idx].threads;
    if (!args[idx].out.empty()) req.cfg.out_dir = args[idx].out;
    return eaq::run(req);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
