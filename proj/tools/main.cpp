#include <CLI11.hpp>
#include <iostream>

#include "oulab/commands.hpp"

int main(int argc, char** argv) {
  using namespace oulab::cli;
  CLI::App app{"Ornstein-Uhlenbeck semigroup lab: Neumann problems on convex domains"};
  app.require_subcommand(1);

  CommandOptions options;
  std::string config;
  std::uint64_t seed = 0;
  std::string out_dir;
  unsigned jobs = 1;

  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const std::string&, const CommandOptions&, std::ostream&, std::ostream&);
  };
  const Entry entries[] = {
      {"verify", "run the configured inequality checks", cmd_verify},
      {"spectrum", "leading eigenvalues of the grid operators", cmd_spectrum},
      {"evolve", "grid snapshots of T(t)f", cmd_evolve},
      {"converge", "polygon convergence study around the disc", cmd_converge},
  };
  std::vector<CLI::App*> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("config", config, "JSON run configuration")->required();
    sub->add_option("--seed", seed, "override the root seed");
    sub->add_option("--out", out_dir, "override the output directory");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    if (subs[i]->count("--seed")) options.seed = seed;
    if (subs[i]->count("--out")) options.output_dir = out_dir;
    if (subs[i]->count("--jobs")) options.jobs = jobs;
    return entries[i].run(config, options, std::cout, std::cerr);
  }
  return kExitConfig;
}
