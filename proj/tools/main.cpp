#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "anisotm/errors.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

constexpr const char* kCommands[][2] = {
    {"constants", "sharp constants for (n, kappa, beta[, p])"},
    {"kappa", "Wulff-ball volume of a gauge"},
    {"radius", "anisotropic harmonic radius at a pole"},
    {"green", "Green function, Robin function and level-set diagnostics"},
    {"transplant", "n-harmonic transplantation of a radial profile"},
    {"evaluate", "Moser-Trudinger functional of a profile or field"},
    {"concentrate", "concentrating sequence and its limit"},
    {"maximize", "radial maximizer on the unit Wulff ball"},
    {"verify-all", "run every acceptance criterion"},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace anisotm;
  CLI::App app{"Anisotropic Moser-Trudinger toolkit"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  app.add_option("--config", config_path, "key=value configuration file");

  const std::vector<std::string> keys = {"gauge", "domain", "pole",  "n",       "p",          "beta",
                                         "A",     "eps",    "h",     "out",     "seed",       "input",
                                         "method", "mode",  "t",     "nodes",   "iterations", "start",
                                         "R-exponent"};
  std::vector<std::string> values(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k)
    app.add_option("--" + keys[k], values[k])->each([&overrides, key = keys[k]](const std::string& v) {
      overrides.emplace_back(key, v);
    });
  bool quick = false;
  app.add_flag("--quick", quick, "reduced sample counts");

  for (const auto& [name, help] : kCommands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  app::RunConfig cfg;
  try {
    cfg.command = app::parse_command(app.get_subcommands().front()->get_name());
    if (!config_path.empty()) app::load_config_file(cfg, config_path);
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    if (quick) cfg.quick = true;

    const auto t0 = std::chrono::steady_clock::now();
    const app::Report rep = app::run_command(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.write(cfg.out, wall);
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.pass() ? 0 : 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const CapabilityError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
