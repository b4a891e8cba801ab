#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pbsurf/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Poisson-bracket invariants of covers on triangulated surfaces"};
  app.require_subcommand(1);

  const std::vector<std::string> tasks = {"kappa",       "essential", "verify-thm14", "coarea",
                                          "minimize-pb", "lemma34",   "thm14-averaging"};
  struct Args {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool quiet = false;
  } args;

  for (const auto& name : tasks) {
    auto* sub = app.add_subcommand(name, "run the '" + name + "' task from a scenario config");
    sub->add_option("--config", args.config, "scenario config file")->required();
    sub->add_option("--out", args.out, "output directory for report.json and side files");
    auto* seed_opt = sub->add_option("--seed", args.seed, "override the scenario seed");
    sub->add_flag("--quiet", args.quiet, "suppress per-check lines");
    sub->callback([&, name, seed_opt]() {
      args.seed_set = seed_opt->count() > 0;
      pbsurf::Scenario sc;
      try {
        sc = pbsurf::parse_scenario_file(args.config);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(1);
      }
      if (sc.task != name) {
        std::cerr << "error: config declares task '" << sc.task << "' but subcommand is '" << name
                  << "'\n";
        std::exit(1);
      }
      if (args.seed_set) sc.seed = args.seed;
      const auto outcome = pbsurf::run_scenario(sc, args.out, args.quiet);
      if (outcome.status == pbsurf::RunStatus::Error && !outcome.error.empty() && args.quiet)
        std::cerr << "error: " << outcome.error << "\n";
      std::exit(static_cast<int>(outcome.status));
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // help exits 0, any parse failure exits 1
  }
  return 0;
}
