// Command-line front end: hiweno <run|convergence|compare|bench> [--config FILE] [--key value ...]
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "hiweno/commands.hpp"
#include "hiweno/weno.hpp"

int main(int argc, char** argv) {
  using namespace hiweno;
  CLI::App app{"Staggered-grid WENO flow solver"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::string> flags;
  const char* commands[] = {"run", "convergence", "compare", "bench"};
  for (const char* name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "flat key = value configuration file");
    for (const auto& key : config_keys()) sub->add_option("--" + key, flags[key], "overrides '" + key + "'");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  RunConfig cfg;
  try {
    validate_weno_tables();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      // Cross-key validation happens after the flags are applied.
      apply_config_text(cfg, ss.str());
    }
    for (const auto& key : config_keys())
      if (!flags[key].empty()) {
        if (key == "cfl") cfg.dt.reset();
        if (key == "dt") cfg.cfl.reset();
        apply_config_value(cfg, key, flags[key]);
      }
    validate_config(cfg);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "run") return command_run(cfg, std::cout);
    if (cmd == "convergence") return command_convergence(cfg, std::cout);
    if (cmd == "compare") return command_compare(cfg, std::cout);
    return command_bench(cfg, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
