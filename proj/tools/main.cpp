#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mdent: multidimensional entanglement structure of multipartite qudit states"};
  app.require_subcommand(1);

  mdent::cli::AnalyzeOptions analyze_options;
  auto* analyze = app.add_subcommand(
      "analyze", "Validate a state file; report rank/entropy vectors, witnesses, certificates");
  analyze->add_option("state", analyze_options.state_path, "state file")->required();
  analyze->add_option("--pairs", analyze_options.witness.pairs,
                      "pair sets: paper-432 | paper-432-literal | full-support | file(s)");
  analyze->add_option("--convention", analyze_options.witness.convention, "tight | safe");
  analyze->add_option("--tol", analyze_options.witness.tol, "relative rank tolerance");
  analyze->add_flag("--json", analyze_options.json, "machine-readable output");

  mdent::cli::SweepOptions sweep_options;
  auto* sweep = app.add_subcommand(
      "sweep", "Noise sweep of the (p,q) simplex for the d=4^3 test family; writes CSV");
  sweep->add_option("--p-steps", sweep_options.p_steps, "grid points along p");
  sweep->add_option("--q-steps", sweep_options.q_steps, "grid points along q");
  sweep->add_option("--pairs", sweep_options.witness.pairs, "pair sets (default paper-432)");
  sweep->add_option("--convention", sweep_options.witness.convention, "tight | safe");
  sweep->add_option("--out", sweep_options.out_path, "CSV output path");

  mdent::cli::FeasibleOptions feasible_options;
  auto* feasible =
      app.add_subcommand("feasible", "Check tripartite rank-vector feasibility (r1 <= r2*r3)");
  feasible->add_option("r1", feasible_options.r1, "rank")->required();
  feasible->add_option("r2", feasible_options.r2, "rank")->required();
  feasible->add_option("r3", feasible_options.r3, "rank")->required();
  feasible->add_flag("--emit", feasible_options.emit, "write a state realizing the vector");
  feasible->add_option("--out", feasible_options.out_path, "state output path");

  mdent::cli::ConjectureScanOptions scan_options;
  auto* scan = app.add_subcommand(
      "conjecture-scan", "Random-state scan of r_AB*r_AC*r_BC >= r_A*r_B*r_C on 4-party states");
  scan->add_option("--count", scan_options.count, "number of random states");
  scan->add_option("--dims", scan_options.dims, "four local dimensions")->expected(4);
  scan->add_option("--seed", scan_options.seed, "RNG seed");
  scan->add_option("--dump-prefix", scan_options.dump_prefix, "file prefix for violating states");

  mdent::cli::OptimizeOptions optimize_options;
  auto* optimize =
      app.add_subcommand("optimize", "Maximize a witness over local bases (hill climbing)");
  optimize->add_option("state", optimize_options.state_path, "state file")->required();
  optimize->add_option("--k", optimize_options.k, "witness component (1..N)");
  optimize->add_option("--restarts", optimize_options.budget.restarts, "restarts");
  optimize->add_option("--steps", optimize_options.budget.steps, "steps per restart");
  optimize->add_option("--step-scale", optimize_options.budget.step_scale, "initial step size");
  optimize->add_option("--seed", optimize_options.seed, "RNG seed");
  optimize->add_option("--pairs", optimize_options.witness.pairs, "pair sets");
  optimize->add_option("--convention", optimize_options.witness.convention, "tight | safe");
  optimize->add_option("--out", optimize_options.basis_out, "basis output path");

  mdent::cli::GenStateOptions gen_options;
  auto* gen = app.add_subcommand("gen-state", "Emit a named state as a state file");
  gen->add_option("label", gen_options.label, "psi332 | psi422 | psi432 | test-state")
      ->required();
  gen->add_option("--p", gen_options.p, "target weight (test-state)");
  gen->add_option("--q", gen_options.q, "dephased weight (test-state)");
  gen->add_option("--out", gen_options.out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? mdent::cli::kExitSuccess : mdent::cli::kExitArgument;
  }

  const auto guard = [&](auto&& fn) { return mdent::cli::run_guarded(fn, std::cerr); };
  if (analyze->parsed()) return guard([&] { return cmd_analyze(analyze_options, std::cout); });
  if (sweep->parsed()) return guard([&] { return cmd_sweep(sweep_options, std::cout); });
  if (feasible->parsed()) return guard([&] { return cmd_feasible(feasible_options, std::cout); });
  if (scan->parsed()) {
    return guard([&] { return cmd_conjecture_scan(scan_options, std::cout); });
  }
  if (optimize->parsed()) return guard([&] { return cmd_optimize(optimize_options, std::cout); });
  if (gen->parsed()) return guard([&] { return cmd_gen_state(gen_options, std::cout); });
  return mdent::cli::kExitArgument;
}
