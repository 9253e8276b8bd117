#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "psdcomp/cli.hpp"

int main(int argc, char** argv) {
  using psdcomp::cli::Command;
  psdcomp::cli::RunConfig config;

  CLI::App app{"PSD completion, extreme-ray certificates and moment rank tests"};
  app.require_subcommand(1);

  auto add_common = [&config](CLI::App* sub) {
    sub->add_option("--tol", config.tol, "Relative tolerance (default from $PSDCOMP_TOL, else 1e-9)");
    sub->add_option("--seed", config.seed, "Seed echoed into the report");
    sub->add_option("--out", config.out_path, "Write the report here instead of stdout");
  };

  auto* analyze = app.add_subcommand("analyze-graph", "Chordality, cliques and Hankel/Green-Lazarsfeld indices");
  analyze->add_option("--graph", config.graph_path, "Graph JSON")->required();
  add_common(analyze);

  auto* complete = app.add_subcommand("complete", "Complete a partial matrix or certify that it cannot be");
  complete->add_option("--graph", config.graph_path, "Graph JSON")->required();
  complete->add_option("--partial", config.partial_path, "Partial matrix JSON")->required();
  add_common(complete);

  auto* pd = app.add_subcommand("pd-exists", "Decide existence of a positive definite completion");
  pd->add_option("--graph", config.graph_path, "Graph JSON")->required();
  pd->add_option("--partial", config.partial_path, "Partial matrix JSON")->required();
  add_common(pd);

  auto* ray = app.add_subcommand("extreme-ray", "Emit the extreme-ray certificate of the m-cycle");
  ray->add_option("--cycle", config.cycle, "Cycle length m >= 4")->required();
  add_common(ray);

  auto* toric = app.add_subcommand("toric", "Boundary lattice points and indices of a toric surface");
  toric->add_option("--polygon", config.polygon_path, "Lattice polygon JSON");
  toric->add_option("--veronese", config.veronese, "Degree d of the Veronese surface");
  add_common(toric);

  auto* moment = app.add_subcommand("moment-check", "Rank test for representability of a moment operator");
  moment->add_option("--moment", config.moment_path, "Moment operator JSON")->required();
  moment->add_option("--bound", config.bound, "Lower bound on the Hankel index");
  moment->add_option("--polygon", config.polygon_path, "Lattice polygon supplying the bound");
  add_common(moment);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    const psdcomp::Error error(psdcomp::ErrorCode::ParseError, e.what(), "argv");
    std::cout << psdcomp::io::error_json(error).dump(2) << "\n";
    return psdcomp::cli::kInputError;
  }

  if (*analyze) config.command = Command::AnalyzeGraph;
  else if (*complete) config.command = Command::Complete;
  else if (*pd) config.command = Command::PdExists;
  else if (*ray) config.command = Command::ExtremeRay;
  else if (*toric) config.command = Command::Toric;
  else config.command = Command::MomentCheck;

  return psdcomp::cli::run(config, std::cout);
}
