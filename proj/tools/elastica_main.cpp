#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elastica/commands.hpp"
#include "elastica/config.hpp"
#include "elastica/errors.hpp"

using namespace elastica;

int main(int argc, char** argv) {
  CLI::App app{"elastic flow of open planar curves: flows, equilibrium catalogs, sweeps, verification"};
  app.require_subcommand(1);

  struct Args {
    std::string config;
    std::string out;
    std::vector<std::string> overrides;
  };
  Args args;
  const std::pair<const char*, Command> commands[] = {
      {"flow", Command::flow}, {"catalog", Command::catalog}, {"sweep", Command::sweep}, {"verify", Command::verify}};
  const char* help[] = {"run the gradient flow from an initial curve", "enumerate equilibria below an energy bound",
                        "tabulate period functions over an energy grid", "run the full property suite"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < 4; ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("--config", args.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", args.out, "output directory");
    sub->add_option("--override", args.overrides, "dotted key=value, value parsed as JSON")->take_all();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  Command mode = Command::flow;
  for (std::size_t i = 0; i < 4; ++i)
    if (subs[i]->parsed()) mode = commands[i].second;

  RunConfig cfg;
  try {
    cfg = load_config(mode, args.config.empty() ? std::nullopt : std::optional<std::filesystem::path>(args.config),
                      args.overrides,
                      args.out.empty() ? std::nullopt : std::optional<std::filesystem::path>(args.out));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    switch (mode) {
      case Command::flow: return cmd_flow(cfg, std::cout, std::cerr);
      case Command::catalog: return cmd_catalog(cfg, std::cout, std::cerr);
      case Command::sweep: return cmd_sweep(cfg, std::cout, std::cerr);
      case Command::verify: return cmd_verify(cfg, std::cout, std::cerr);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}
