// Command-line front end: exact fixed-point invariants of simplicial
// self-maps and shadow traces over finite group rings.

#include "fixtrace/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{
      "fixtrace: exact Lefschetz, Reidemeister and Nielsen invariants of "
      "simplicial self-maps, and Hochschild-shadow traces over group rings"};
  app.require_subcommand(1);

  fixtrace::JobSpec job;

  struct Cmd {
    const char* name;
    const char* help;
    std::vector<const char*> positionals;
    bool takes_basepoint = false;
    bool takes_epsilon = false;
    std::size_t optional_from = SIZE_MAX;  // index from which inputs are optional
  };
  const std::vector<Cmd> commands = {
      {"homology", "Betti numbers, torsion and Euler characteristic",
       {"complex"}},
      {"lefschetz", "Lefschetz number by the homological and chain routes",
       {"complex", "map"}},
      {"reidemeister", "Reidemeister trace over the fundamental group",
       {"complex", "map"}, true},
      {"nielsen", "Nielsen lower bound from the Reidemeister trace",
       {"complex", "map"}, true},
      {"index", "fixed-point indices of the realized PL map",
       {"complex", "map", "embedding"}, false, true},
      {"geomcheck",
       "compare the geometric weighted fixed-point sum with the chain-level "
       "Reidemeister trace",
       {"complex", "map", "embedding"}, true, true},
      {"hh0", "class basis of HH_0 of a finite group ring",
       {"group", "twist"}, false, false, 1},
      {"trace", "shadow trace of a matrix over a finite group ring",
       {"group", "matrix", "twist"}, false, false, 2},
  };

  std::vector<std::vector<std::string>> slots(commands.size());
  for (std::size_t c = 0; c < commands.size(); ++c) {
    const Cmd& cmd = commands[c];
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    slots[c].resize(cmd.positionals.size());
    for (std::size_t i = 0; i < cmd.positionals.size(); ++i) {
      auto* opt = sub->add_option(cmd.positionals[i], slots[c][i],
                                  std::string(cmd.positionals[i]) + " file");
      if (i < cmd.optional_from) opt->required();
    }
    if (cmd.takes_basepoint)
      sub->add_option("--basepoint", job.basepoint, "basepoint vertex label");
    sub->add_option("--tc-bound", job.tc_bound,
                    "twisted-conjugacy saturation bound")
        ->default_val(6);
    if (cmd.takes_epsilon)
      sub->add_option("--epsilon", job.epsilon,
                      "sampling radius as an exact rational");
    sub->add_option("--out", job.out, "write the report to a file");
    sub->callback([&job, &slots, c, &commands]() {
      job.command = commands[c].name;
      for (const std::string& s : slots[c])
        if (!s.empty()) job.inputs.push_back(s);
    });
  }

  CLI11_PARSE(app, argc, argv);

  fixtrace::RunResult result = fixtrace::run(job);
  std::string text = result.report.dump(2);
  if (job.out) {
    std::ofstream out(*job.out);
    out << text << "\n";
  } else {
    std::cout << text << "\n";
  }
  return result.exit_code;
}
