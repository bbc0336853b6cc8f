#include <iostream>

#include "CLI11.hpp"
#include "ipm/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Intrusive polynomial moment solver for uncertain scalar conservation laws"};
  app.require_subcommand(1);

  ipm::cli::Invocation inv;
  std::string config, preset, out;
  int threads = 0;

  for (const char* name : {"run", "table1", "converge", "sweep"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "configuration file");
    sub->add_option("--preset", preset, "problem preset")
        ->check(CLI::IsMember({"burgers_ic1", "burgers_ic4", "burgers_2d_ic3", "advection_sine",
                               "uncertain_advection_ramp"}));
    sub->add_option("--out", out, "output directory");
    sub->add_option("--threads", threads, "OpenMP threads")->check(CLI::PositiveNumber);
    sub->add_flag("--serial", inv.serial, "run every kernel on one thread");
  }
  app.get_subcommand("run")->description("run one configuration");
  app.get_subcommand("table1")->description("naive-scheme crash table over delta_u x tau");
  app.get_subcommand("converge")->description("grid refinement and efficiency study");
  app.get_subcommand("sweep")->description("cartesian product of the [sweep] axes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ipm::cli::kConfigError;
  }

  inv.command = app.get_subcommands().front()->get_name();
  if (!config.empty()) inv.config = config;
  if (!preset.empty()) inv.preset = preset;
  if (!out.empty()) inv.out = out;
  if (threads > 0) inv.threads = threads;
  return ipm::cli::dispatch(inv, std::cout, std::cerr);
}
