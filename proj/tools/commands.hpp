#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mdent/basis_optimizer.hpp"
#include "mdent/state_file.hpp"
#include "mdent/witness_engine.hpp"

namespace mdent::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;   // parse/validation/I-O failures
inline constexpr int kExitArgument = 2;  // bad arguments

// Shared witness flags: --pairs (strategy or file paths), --convention, --tol.
struct WitnessOptions {
  std::vector<std::string> pairs;  // empty → command default
  std::string convention = "tight";
  double tol = 1e-9;
};

struct AnalyzeOptions {
  std::string state_path;
  WitnessOptions witness;
  bool json = false;
};

struct SweepOptions {
  int p_steps = 201;
  int q_steps = 201;
  WitnessOptions witness;
  std::string out_path = "sweep.csv";
};

struct FeasibleOptions {
  int r1 = 0;
  int r2 = 0;
  int r3 = 0;
  bool emit = false;
  std::string out_path = "canonical_state.txt";
};

struct ConjectureScanOptions {
  long count = 10000;
  std::vector<int> dims{2, 2, 2, 2};
  std::uint64_t seed = 1;
  std::string dump_prefix = "violation";
};

struct OptimizeOptions {
  std::string state_path;
  int k = 1;
  OptimizeBudget budget;
  std::uint64_t seed = 1;
  WitnessOptions witness;
  std::string basis_out = "optimized_basis.txt";
};

struct GenStateOptions {
  std::string label;  // psi332 | psi422 | psi432 | test-state
  double p = 1.0;
  double q = 0.0;
  std::string out_path;  // empty → stdout
};

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out);
int cmd_sweep(const SweepOptions& options, std::ostream& out);
int cmd_feasible(const FeasibleOptions& options, std::ostream& out);
int cmd_conjecture_scan(const ConjectureScanOptions& options, std::ostream& out);
int cmd_optimize(const OptimizeOptions& options, std::ostream& out);
int cmd_gen_state(const GenStateOptions& options, std::ostream& out);

// Maps exceptions to the exit-code contract: ParseError/ValidationError/I-O
// → 1, invalid_argument/out_of_range → 2.
int run_guarded(const std::function<int()>& command, std::ostream& err);

WitnessConvention parse_convention(const std::string& name);

// Pair sets per k for a loaded state: a strategy name ("paper-432",
// "paper-432-literal", "full-support") or one/N pair-set file paths.
std::vector<PairSet> resolve_pair_sets(const LoadedState& state,
                                       const std::vector<std::string>& specs);

}  // namespace mdent::cli
