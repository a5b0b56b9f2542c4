#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mdent/errors.hpp"
#include "mdent/parallel.hpp"
#include "mdent/random.hpp"
#include "mdent/rank_analysis.hpp"
#include "mdent/state_zoo.hpp"
#include "mdent/tensor_core.hpp"

namespace mdent::cli {

namespace {

using nlohmann::json;

constexpr double kDiagonalSupportTol = 1e-12;

std::string fmt(double value) { return format_real(value, 12); }

const PartyStructure& structure_of(const LoadedState& state) {
  if (std::holds_alternative<PureState>(state)) return std::get<PureState>(state).structure();
  return std::get<DensityMatrix>(state).structure();
}

std::vector<MultiIndex> support_of(const LoadedState& state) {
  const PartyStructure& s = structure_of(state);
  std::vector<MultiIndex> support;
  for (FlatIndex f = 0; f < s.total_dim(); ++f) {
    const double weight = std::holds_alternative<PureState>(state)
                              ? std::norm(std::get<PureState>(state).amplitudes()(f))
                              : std::get<DensityMatrix>(state).entries()(f, f).real();
    if (weight > kDiagonalSupportTol) support.push_back(s.multi_index(f));
  }
  return support;
}

std::string join_ranks(const std::vector<int>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out + ")";
}

}  // namespace

WitnessConvention parse_convention(const std::string& name) {
  if (name == "tight") return WitnessConvention::Tight;
  if (name == "safe") return WitnessConvention::Safe;
  throw std::invalid_argument("unknown convention '" + name + "' (expected tight or safe)");
}

std::vector<PairSet> resolve_pair_sets(const LoadedState& state,
                                       const std::vector<std::string>& specs) {
  const PartyStructure& s = structure_of(state);
  const int n = s.num_parties();
  const PartyStructure dims432({4, 4, 4});

  if (specs.size() == 1 && (specs[0] == "paper-432" || specs[0] == "paper-432-literal")) {
    if (s != dims432) {
      throw std::invalid_argument("--pairs " + specs[0] + " requires a state on dims 4 4 4");
    }
    // "paper-432" maps to the certification defaults (full 6-pair set for
    // k=1); the 3-pair literal C_1 is available as paper-432-literal.
    return specs[0] == "paper-432"
               ? noise_432_sets()
               : default_pair_sets(psi_432(), PairSetStrategy::Paper432);
  }
  if (specs.size() == 1 && specs[0] == "full-support") {
    const auto support = support_of(state);
    if (support.size() < 2) {
      throw std::invalid_argument("full-support needs at least two occupied basis indices");
    }
    std::vector<std::pair<MultiIndex, MultiIndex>> pairs;
    for (std::size_t i = 0; i < support.size(); ++i) {
      for (std::size_t j = i + 1; j < support.size(); ++j) {
        pairs.push_back({support[i], support[j]});
      }
    }
    return std::vector<PairSet>(static_cast<std::size_t>(n), PairSet(s, pairs));
  }

  // otherwise: pair-set file(s); one for all k or exactly one per k
  std::vector<PairSet> sets;
  for (const auto& path : specs) {
    if (path == "paper-432" || path == "paper-432-literal" || path == "full-support") {
      throw std::invalid_argument("--pairs: strategy '" + path +
                                  "' cannot be combined with other pair-set arguments");
    }
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open pair-set file '" + path + "'");
    sets.push_back(load_pair_set(in, s));
  }
  if (sets.size() == 1) return std::vector<PairSet>(static_cast<std::size_t>(n), sets[0]);
  if (static_cast<int>(sets.size()) == n) return sets;
  throw std::invalid_argument("expected 1 or " + std::to_string(n) + " pair-set files, got " +
                              std::to_string(sets.size()));
}

int run_guarded(const std::function<int()>& command, std::ostream& err) {
  try {
    return command();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "argument error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const std::out_of_range& e) {
    err << "argument error: " << e.what() << "\n";
    return kExitArgument;
  }
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out) {
  const LoadedState state = load_state_file(options.state_path);
  const PartyStructure& s = structure_of(state);
  const bool pure = std::holds_alternative<PureState>(state);
  const WitnessConvention convention = parse_convention(options.witness.convention);

  const bool explicit_pairs = !options.witness.pairs.empty();
  std::vector<std::string> specs =
      explicit_pairs ? options.witness.pairs : std::vector<std::string>{"full-support"};

  std::optional<CertificationReport> report;
  const DensityMatrix rho =
      pure ? projector(std::get<PureState>(state)) : std::get<DensityMatrix>(state);
  // default full-support pairs need at least two occupied indices; with
  // fewer the state is trivially uncertifiable and the witness is skipped
  if (explicit_pairs || support_of(state).size() >= 2) {
    report = certify(rho, resolve_pair_sets(state, specs), convention);
  }

  json doc;
  doc["file"] = options.state_path;
  doc["dims"] = s.dims();
  doc["kind"] = pure ? "pure" : "density";

  const ValidationReport validation = validate(rho);
  doc["validation"] = {{"ok", validation.ok()},
                       {"hermiticity_deviation", validation.hermiticity_deviation},
                       {"trace_deviation", validation.trace_deviation},
                       {"min_eigenvalue", validation.min_eigenvalue}};

  std::optional<RankVector> ranks;
  std::optional<EntropyVector> entropies;
  if (pure) {
    ranks = schmidt_rank_vector(std::get<PureState>(state), options.witness.tol);
    entropies = entropy_vector(std::get<PureState>(state));
    doc["rank_vector"] = ranks->ranks();
    doc["entropy_vector"] = entropies->values;
    doc["entropy_parties"] = entropies->party_of;
  }
  if (report.has_value()) {
    doc["witness"] = {{"convention", options.witness.convention},
                      {"values", report->witness_values},
                      {"certified", report->certified}};
    json counts = json::array();
    for (const auto& set : report->sets) counts.push_back(set.size());
    doc["witness"]["pair_counts"] = counts;
  } else {
    doc["witness"] = nullptr;
    doc["certified_note"] = "fewer than two occupied basis indices; bounds default to 1";
  }

  if (options.json) {
    out << doc.dump(2) << "\n";
    return kExitSuccess;
  }

  out << "file: " << options.state_path << "\n";
  out << "dims:";
  for (int d : s.dims()) out << " " << d;
  out << "\nkind: " << (pure ? "pure" : "density") << "\n";
  out << "validation: " << (validation.ok() ? "PASS" : "FAIL") << "  (hermiticity dev "
      << fmt(validation.hermiticity_deviation) << ", trace dev "
      << fmt(validation.trace_deviation) << ", min eigenvalue "
      << fmt(validation.min_eigenvalue) << ")\n";
  if (pure) {
    out << "rank vector: " << join_ranks(ranks->ranks()) << "\n";
    out << "entropy vector: (";
    for (std::size_t i = 0; i < entropies->values.size(); ++i) {
      out << (i > 0 ? ", " : "") << fmt(entropies->values[i]);
    }
    out << ")  parties: " << join_ranks(entropies->party_of) << "\n";
  }
  if (report.has_value()) {
    out << "witness [" << options.witness.convention << "]:\n";
    for (std::size_t k = 0; k < report->witness_values.size(); ++k) {
      out << "  k=" << k + 1 << "  |C|=" << report->sets[k].size()
          << "  W=" << fmt(report->witness_values[k]) << "  certified r_" << k + 1
          << " >= " << report->certified[k] << "\n";
    }
    out << "certified dimensionality vector: " << join_ranks(report->certified) << "\n";
  } else {
    out << "witness: skipped (fewer than two occupied basis indices); certified bounds are 1\n";
  }
  return kExitSuccess;
}

int cmd_sweep(const SweepOptions& options, std::ostream& out) {
  if (options.p_steps < 2 || options.q_steps < 2) {
    throw std::invalid_argument("sweep: p-steps and q-steps must be >= 2");
  }
  const WitnessConvention convention = parse_convention(options.witness.convention);
  std::vector<std::string> specs = options.witness.pairs;
  if (specs.empty()) specs = {"paper-432"};
  // strategies resolve against the pure family target on dims 4 4 4
  const std::vector<PairSet> sets = resolve_pair_sets(LoadedState(psi_432()), specs);

  struct Cell {
    double p, q;
    std::array<double, 3> w;
    std::array<int, 3> certified;
  };
  std::vector<std::pair<int, int>> grid;
  for (int i = 0; i < options.p_steps; ++i) {
    for (int j = 0; j < options.q_steps; ++j) {
      const double p = static_cast<double>(i) / (options.p_steps - 1);
      const double q = static_cast<double>(j) / (options.q_steps - 1);
      if (p + q <= 1.0 + 1e-12) grid.push_back({i, j});
    }
  }
  std::vector<Cell> cells(grid.size());
  detail::parallel_for(grid.size(), [&](std::size_t idx) {
    const auto [i, j] = grid[idx];
    Cell cell;
    cell.p = static_cast<double>(i) / (options.p_steps - 1);
    cell.q = static_cast<double>(j) / (options.q_steps - 1);
    const DensityMatrix rho = test_state(NoiseParams(cell.p, cell.q));
    for (int k = 1; k <= 3; ++k) {
      const double w = witness_value(rho, sets[static_cast<std::size_t>(k - 1)], k, convention);
      cell.w[static_cast<std::size_t>(k - 1)] = w;
      cell.certified[static_cast<std::size_t>(k - 1)] = dim_bound_from_entropy(std::max(w, 0.0));
    }
    cells[idx] = cell;
  });

  std::ofstream csv(options.out_path);
  if (!csv) throw std::ios_base::failure("cannot open '" + options.out_path + "' for writing");
  csv << "p,q,W1,W2,W3,r1,r2,r3\n";
  std::map<std::vector<int>, std::size_t> regions;
  for (const Cell& cell : cells) {
    csv << fmt(cell.p) << "," << fmt(cell.q) << "," << fmt(cell.w[0]) << "," << fmt(cell.w[1])
        << "," << fmt(cell.w[2]) << "," << cell.certified[0] << "," << cell.certified[1] << ","
        << cell.certified[2] << "\n";
    regions[{cell.certified[0], cell.certified[1], cell.certified[2]}] += 1;
  }
  out << "wrote " << cells.size() << " rows to " << options.out_path << "\n";
  out << "certified regions (vector: cells, area fraction):\n";
  for (const auto& [vec, count] : regions) {
    out << "  " << join_ranks(vec) << ": " << count << ", "
        << fmt(static_cast<double>(count) / static_cast<double>(cells.size())) << "\n";
  }
  return kExitSuccess;
}

int cmd_feasible(const FeasibleOptions& options, std::ostream& out) {
  const bool feasible = feasible_tripartite(options.r1, options.r2, options.r3);
  std::array<int, 3> sorted{options.r1, options.r2, options.r3};
  std::sort(sorted.begin(), sorted.end(), std::greater<int>());
  out << "(" << options.r1 << "," << options.r2 << "," << options.r3 << ") is "
      << (feasible ? "feasible" : "infeasible") << ": sorted r1=" << sorted[0]
      << (feasible ? " <= " : " > ") << "r2*r3=" << sorted[1] * sorted[2] << "\n";
  if (!options.emit) return kExitSuccess;
  if (!feasible) {
    throw std::invalid_argument("cannot emit a state for an infeasible rank vector: r1=" +
                                std::to_string(sorted[0]) + " exceeds r2*r3=" +
                                std::to_string(sorted[1] * sorted[2]));
  }
  const PureState psi = canonical_rank_state(sorted[1], sorted[2], sorted[0]);
  const RankVector achieved = schmidt_rank_vector(psi);
  if (achieved != RankVector({sorted[0], sorted[1], sorted[2]})) {
    throw ValidationError("emitted state failed its rank-vector check");
  }
  save_state_file(options.out_path, psi);
  out << "wrote canonical state with rank vector " << join_ranks(achieved.ranks()) << " to "
      << options.out_path << "\n";
  return kExitSuccess;
}

int cmd_conjecture_scan(const ConjectureScanOptions& options, std::ostream& out) {
  if (options.count < 1) throw std::invalid_argument("conjecture-scan: count must be >= 1");
  if (options.dims.size() != 4) {
    throw std::invalid_argument("conjecture-scan: exactly four local dimensions required");
  }
  const PartyStructure s(options.dims);

  struct Sample {
    ConjectureReport report;
    std::optional<PureState> violator;
  };
  std::vector<Sample> samples(static_cast<std::size_t>(options.count));
  detail::parallel_for(samples.size(), [&](std::size_t i) {
    std::mt19937_64 rng(mix_seed(options.seed, i));
    std::uniform_int_distribution<FlatIndex> size_dist(1, s.total_dim());
    std::vector<FlatIndex> all(static_cast<std::size_t>(s.total_dim()));
    for (FlatIndex f = 0; f < s.total_dim(); ++f) all[static_cast<std::size_t>(f)] = f;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<MultiIndex> support;
    const FlatIndex support_size = size_dist(rng);
    for (FlatIndex f = 0; f < support_size; ++f) {
      support.push_back(s.multi_index(all[static_cast<std::size_t>(f)]));
    }
    const PureState psi = random_pure_state(s, mix_seed(options.seed, i ^ 0x5151FFFFULL), support);
    samples[i].report = conjecture_check_4party(psi);
    if (!samples[i].report.holds) samples[i].violator = psi;
  });

  // fixed probe: the generalized GHZ over the smallest local dimension
  const int levels = *std::min_element(options.dims.begin(), options.dims.end());
  std::vector<std::pair<MultiIndex, Complex>> ghz_terms;
  for (int level = 0; level < levels; ++level) {
    ghz_terms.push_back({MultiIndex{level, level, level, level}, Complex(1.0, 0.0)});
  }
  const ConjectureReport ghz = conjecture_check_4party(state_from_terms(s, ghz_terms));

  long violations = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].report.holds) continue;
    ++violations;
    const std::string path = options.dump_prefix + "_" + std::to_string(i) + ".txt";
    save_state_file(path, *samples[i].violator);
    const auto& r = samples[i].report;
    out << "VIOLATION at sample " << i << ": singles (" << r.single_ranks[0] << ","
        << r.single_ranks[1] << "," << r.single_ranks[2] << ") pairs (" << r.pair_ranks[0] << ","
        << r.pair_ranks[1] << "," << r.pair_ranks[2] << ") lhs " << r.lhs << " < rhs " << r.rhs
        << "; state dumped to " << path << "\n";
  }

  out << "scanned " << options.count << " random 4-party states (dims";
  for (int d : options.dims) out << " " << d;
  out << ", seed " << options.seed << ")\n";
  out << "ghz probe: " << (ghz.holds ? "holds" : "VIOLATED") << " (" << ghz.lhs
      << (ghz.lhs == ghz.rhs ? " = " : " >= ") << ghz.rhs << ")\n";
  out << "violations: " << violations << " / " << options.count << "\n";
  return kExitSuccess;
}

int cmd_optimize(const OptimizeOptions& options, std::ostream& out) {
  const LoadedState state = load_state_file(options.state_path);
  const bool pure = std::holds_alternative<PureState>(state);
  const DensityMatrix rho =
      pure ? projector(std::get<PureState>(state)) : std::get<DensityMatrix>(state);
  const WitnessConvention convention = parse_convention(options.witness.convention);

  std::vector<std::string> specs = options.witness.pairs;
  if (specs.empty()) specs = {"full-support"};
  const std::vector<PairSet> sets = resolve_pair_sets(state, specs);

  const OptimizeResult result =
      optimize_witness(rho, sets, options.k, options.budget, options.seed, convention);

  out << "witness k=" << options.k << " [" << options.witness.convention << "], budget "
      << options.budget.restarts << " restarts x " << options.budget.steps << " steps, step scale "
      << fmt(options.budget.step_scale) << ", seed " << options.seed << "\n";
  out << "before (identity basis): W=" << fmt(result.identity_value) << "  certified r_"
      << options.k << " >= " << dim_bound_from_entropy(std::max(result.identity_value, 0.0))
      << "\n";
  out << "after  (optimized):      W=" << fmt(result.best_value) << "  certified r_" << options.k
      << " >= " << dim_bound_from_entropy(std::max(result.best_value, 0.0)) << "\n";
  save_basis_file(options.basis_out, result.best_basis);
  out << "basis written to " << options.basis_out << "\n";
  return kExitSuccess;
}

int cmd_gen_state(const GenStateOptions& options, std::ostream& out) {
  const auto write = [&](const auto& state) {
    if (options.out_path.empty()) {
      save_state(out, state);
    } else {
      save_state_file(options.out_path, state);
      out << "wrote " << options.label << " to " << options.out_path << "\n";
    }
  };
  if (options.label == "psi332") {
    write(psi_332());
  } else if (options.label == "psi422") {
    write(psi_422());
  } else if (options.label == "psi432") {
    write(psi_432());
  } else if (options.label == "test-state") {
    write(test_state(NoiseParams(options.p, options.q)));
  } else {
    throw std::invalid_argument("unknown state label '" + options.label +
                                "' (expected psi332, psi422, psi432, or test-state)");
  }
  return kExitSuccess;
}

}  // namespace mdent::cli
