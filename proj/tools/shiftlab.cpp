#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "shiftlab/cli/commands.hpp"

namespace {

using namespace shiftlab::cli;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
  std::optional<std::string> grid;
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> horizon;
  std::optional<double> tol;
};

void add_common_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--workers", o.workers, "worker threads (default SHIFTLAB_WORKERS or 1)");
  cmd->add_option("--grid", o.grid, "scale grid eps0,q,J,s");
  cmd->add_option("--budget", o.budget, "Monte Carlo budget");
  cmd->add_option("--horizon", o.horizon, "maximum orbit length searched");
  cmd->add_option("--tol", o.tol, "metric tolerance");
}

RunConfig build_config(const std::string& command, const Overrides& o) {
  RunConfig c = o.config.empty() ? parse_config(json::object(), command) : load_config(o.config, command);
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.out_dir = *o.out;
  if (o.grid) c.grid = parse_grid_flag(*o.grid);
  if (o.budget) c.budget = *o.budget;
  if (o.horizon) c.horizon = *o.horizon;
  if (o.tol) c.tol = *o.tol;
  validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shiftlab: dimensions, recurrence and genericity experiments on the full shift"};
  app.require_subcommand(1);

  Overrides o;
  std::map<std::string, CLI::App*> commands;
  const std::map<std::string, std::string> help{
      {"estimate-dim", "local and measure dimensions over a scale grid"},
      {"recurrence", "return times and recurrence rates"},
      {"waiting", "entrance times and waiting-time indicators for point pairs"},
      {"periodize", "approximate a measure by a periodic orbit"},
      {"hd-collapse", "periodization experiment: weak distance, dimensions, rates"},
      {"pd-blowup", "noisy periodization experiment: weak distance and fine-scale slopes"}};
  for (const auto& [name, text] : help) {
    commands[name] = app.add_subcommand(name, text);
    add_common_flags(commands[name], o);
  }
  std::string suite = "all";
  std::optional<unsigned> verify_workers;
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("suite", suite, "metric|measures|dimension|recurrence|genericity|all");
  verify->add_option("--workers", verify_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (verify->parsed()) {
      RunConfig defaults;
      return run_verify(suite, resolve_workers(verify_workers, defaults), std::cout);
    }
    for (const auto& [name, cmd] : commands) {
      if (!cmd->parsed()) continue;
      const RunConfig c = build_config(name, o);
      if (o.workers && *o.workers < 1) throw ConfigError("--workers must be at least 1");
      return run_command(c, resolve_workers(o.workers, c), std::cerr);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const shiftlab::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
