#include "mwmpc/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Weighted-horizon nonlinear MPC: closed-loop simulation and stability certificates"};
  app.require_subcommand(1);

  mwmpc::cli::Request request;
  std::string out_dir;
  std::uint64_t seed = 0;

  for (const char* name : {"simulate", "sweep-m", "certify", "oracle-test"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", request.config_path, "YAML experiment configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
    sub->add_option("--seed", seed, "seed (overrides the config's seed)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mwmpc::cli::kConfigError;
  }

  CLI::App* used = app.get_subcommands().front();
  request.command = used->get_name();
  if (used->count("--out") > 0) request.out_dir = out_dir;
  if (used->count("--seed") > 0) request.seed = seed;
  return mwmpc::cli::run(request, std::cout, std::cerr);
}
