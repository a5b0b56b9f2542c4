#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "commands.hpp"
#include "json.hpp"
#include "mdent/errors.hpp"
#include "mdent/rank_analysis.hpp"
#include "mdent/state_file.hpp"
#include "mdent/state_zoo.hpp"
#include "mdent/tensor_core.hpp"

using namespace mdent;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  TempDir() {
    root = fs::temp_directory_path() / ("mdent_cli_test_" + std::to_string(std::rand()));
    fs::create_directories(root);
  }
  ~TempDir() { fs::remove_all(root); }
  std::string path(const std::string& name) const { return (root / name).string(); }
  fs::path root;
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream stream(line);
  std::string piece;
  while (std::getline(stream, piece, sep)) out.push_back(piece);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("gen-state + analyze --json reproduces the certification") {
  TempDir tmp;
  std::ostringstream sink;
  cli::GenStateOptions gen{.label = "psi432", .p = 1.0, .q = 0.0, .out_path = tmp.path("s.txt")};
  CHECK(cli::cmd_gen_state(gen, sink) == cli::kExitSuccess);

  cli::AnalyzeOptions analyze;
  analyze.state_path = tmp.path("s.txt");
  analyze.witness.pairs = {"paper-432"};
  analyze.json = true;
  std::ostringstream out;
  CHECK(cli::cmd_analyze(analyze, out) == cli::kExitSuccess);

  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["kind"] == "pure");
  CHECK(doc["validation"]["ok"] == true);
  CHECK(doc["rank_vector"] == std::vector<int>{4, 3, 2});
  CHECK(doc["witness"]["certified"] == std::vector<int>{4, 3, 2});
  CHECK(doc["witness"]["pair_counts"] == std::vector<int>{6, 5, 6});
}

TEST_CASE("every gen-state label round-trips through analyze") {
  TempDir tmp;
  std::ostringstream sink;
  const std::pair<const char*, std::vector<int>> cases[] = {
      {"psi332", {3, 3, 2}}, {"psi422", {4, 2, 2}}, {"psi432", {4, 3, 2}}};
  for (const auto& [label, ranks] : cases) {
    cli::GenStateOptions gen{.label = label, .p = 1.0, .q = 0.0, .out_path = tmp.path(label)};
    REQUIRE(cli::cmd_gen_state(gen, sink) == cli::kExitSuccess);
    cli::AnalyzeOptions analyze;
    analyze.state_path = tmp.path(label);
    analyze.json = true;
    std::ostringstream out;
    REQUIRE(cli::cmd_analyze(analyze, out) == cli::kExitSuccess);
    CHECK(nlohmann::json::parse(out.str())["rank_vector"] == ranks);
  }
  cli::GenStateOptions to_stdout{.label = "psi332", .p = 1.0, .q = 0.0, .out_path = ""};
  std::ostringstream text;
  REQUIRE(cli::cmd_gen_state(to_stdout, text) == cli::kExitSuccess);
  CHECK(text.str().find("dims 7 7 7") != std::string::npos);

  cli::GenStateOptions unknown{.label = "psi999", .p = 1.0, .q = 0.0, .out_path = ""};
  CHECK_THROWS_AS(cli::cmd_gen_state(unknown, text), std::invalid_argument);
}

TEST_CASE("analyze reports white noise as uncertifiable") {
  TempDir tmp;
  std::ostringstream sink;
  cli::GenStateOptions gen{
      .label = "test-state", .p = 0.0, .q = 0.0, .out_path = tmp.path("white.txt")};
  REQUIRE(cli::cmd_gen_state(gen, sink) == cli::kExitSuccess);

  cli::AnalyzeOptions analyze;
  analyze.state_path = tmp.path("white.txt");
  analyze.json = true;  // default full-support pairs: all 2016 diagonal pairs
  std::ostringstream out;
  REQUIRE(cli::cmd_analyze(analyze, out) == cli::kExitSuccess);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["kind"] == "density");
  CHECK(doc["witness"]["certified"] == std::vector<int>{1, 1, 1});
}

TEST_CASE("analyze accepts explicit pair-set files, one per k") {
  TempDir tmp;
  std::ostringstream sink;
  cli::GenStateOptions gen{.label = "psi432", .p = 1.0, .q = 0.0, .out_path = tmp.path("s.txt")};
  REQUIRE(cli::cmd_gen_state(gen, sink) == cli::kExitSuccess);
  for (const char* name : {"c1.txt", "c2.txt", "c3.txt"}) {
    std::ofstream pairs(tmp.path(name));
    pairs << "0,0,0 | 1,1,1\n0,0,0 | 1,2,3\n0,1,2 | 1,2,3\n";
  }

  cli::AnalyzeOptions analyze;
  analyze.state_path = tmp.path("s.txt");
  analyze.witness.pairs = {tmp.path("c1.txt"), tmp.path("c2.txt"), tmp.path("c3.txt")};
  analyze.json = true;
  std::ostringstream out;
  REQUIRE(cli::cmd_analyze(analyze, out) == cli::kExitSuccess);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["witness"]["pair_counts"] == std::vector<int>{3, 3, 3});

  // strategy names cannot be mixed into file lists
  analyze.witness.pairs = {"paper-432", tmp.path("c2.txt")};
  CHECK_THROWS_AS(cli::cmd_analyze(analyze, out), std::invalid_argument);
}

TEST_CASE("analyze skips the witness for single-index supports") {
  TempDir tmp;
  save_state_file(tmp.path("ket.txt"), basis_ket(PartyStructure({2, 2}), {0, 0}));
  // the same state saved as a density matrix takes the same skip path
  save_state_file(tmp.path("proj.txt"), projector(basis_ket(PartyStructure({2, 2}), {0, 0})));
  for (const char* name : {"ket.txt", "proj.txt"}) {
    cli::AnalyzeOptions analyze;
    analyze.state_path = tmp.path(name);
    analyze.json = true;
    std::ostringstream out;
    REQUIRE(cli::cmd_analyze(analyze, out) == cli::kExitSuccess);
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["witness"].is_null());
  }
}

TEST_CASE("sweep output is deterministic and matches direct library evaluation") {
  TempDir tmp;
  cli::SweepOptions sweep;
  sweep.p_steps = 21;
  sweep.q_steps = 21;
  sweep.out_path = tmp.path("a.csv");
  std::ostringstream summary_a;
  REQUIRE(cli::cmd_sweep(sweep, summary_a) == cli::kExitSuccess);
  sweep.out_path = tmp.path("b.csv");
  std::ostringstream summary_b;
  REQUIRE(cli::cmd_sweep(sweep, summary_b) == cli::kExitSuccess);
  CHECK(slurp(tmp.path("a.csv")) == slurp(tmp.path("b.csv")));

  std::ifstream csv(tmp.path("a.csv"));
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line == "p,q,W1,W2,W3,r1,r2,r3");
  const auto sets = noise_432_sets();
  int rows = 0;
  while (std::getline(csv, line)) {
    const auto fields = split(line, ',');
    REQUIRE(fields.size() == 8);
    const double p = std::stod(fields[0]);
    const double q = std::stod(fields[1]);
    CHECK(p + q <= 1.0 + 1e-12);
    const DensityMatrix rho = test_state(NoiseParams(p, q));
    for (int k = 1; k <= 3; ++k) {
      const double w = witness_value(rho, sets[static_cast<std::size_t>(k - 1)], k);
      // bit-for-bit: the CSV text equals the library value formatted the same way
      CHECK(fields[static_cast<std::size_t>(1 + k)] == format_real(w, 12));
      CHECK(fields[static_cast<std::size_t>(4 + k)] ==
            std::to_string(dim_bound_from_entropy(std::max(w, 0.0))));
    }
    ++rows;
  }
  CHECK(rows == 21 * 22 / 2);

  cli::SweepOptions bad = sweep;
  bad.p_steps = 1;
  CHECK_THROWS_AS(cli::cmd_sweep(bad, summary_a), std::invalid_argument);

  cli::SweepOptions unwritable = sweep;
  unwritable.out_path = "/nonexistent/dir/sweep.csv";
  CHECK_THROWS_AS(cli::cmd_sweep(unwritable, summary_a), std::ios_base::failure);
}

TEST_CASE("sweep boundaries sit within one grid cell of the closed forms") {
  TempDir tmp;
  cli::SweepOptions sweep;
  sweep.p_steps = 401;
  sweep.q_steps = 2;
  sweep.out_path = tmp.path("edge.csv");
  std::ostringstream summary;
  REQUIRE(cli::cmd_sweep(sweep, summary) == cli::kExitSuccess);

  // collect the q=0 column in p order
  std::ifstream csv(tmp.path("edge.csv"));
  std::string line;
  std::getline(csv, line);
  std::vector<std::pair<double, int>> r3_column;
  while (std::getline(csv, line)) {
    const auto fields = split(line, ',');
    if (std::stod(fields[1]) == 0.0) {
      r3_column.push_back({std::stod(fields[0]), std::stoi(fields[7])});
    }
  }
  double jump = -1.0;
  for (std::size_t i = 1; i < r3_column.size(); ++i) {
    if (r3_column[i - 1].second == 1 && r3_column[i].second == 2) {
      jump = r3_column[i].first;
      break;
    }
  }
  const double cell = 1.0 / 400.0;
  CHECK(std::abs(jump - 3.0 / 11.0) <= cell + 1e-12);
}

TEST_CASE("feasible --emit writes a state realizing the vector") {
  TempDir tmp;
  cli::FeasibleOptions feasible{.r1 = 4, .r2 = 3, .r3 = 2, .emit = true,
                                .out_path = tmp.path("state.txt")};
  std::ostringstream out;
  CHECK(cli::cmd_feasible(feasible, out) == cli::kExitSuccess);
  CHECK(out.str().find("feasible") != std::string::npos);

  const LoadedState loaded = load_state_file(tmp.path("state.txt"));
  REQUIRE(std::holds_alternative<PureState>(loaded));
  CHECK(schmidt_rank_vector(std::get<PureState>(loaded)) == RankVector({4, 3, 2}));

  cli::FeasibleOptions trivial{.r1 = 1, .r2 = 1, .r3 = 1, .emit = true,
                               .out_path = tmp.path("product.txt")};
  CHECK(cli::cmd_feasible(trivial, out) == cli::kExitSuccess);
  CHECK(schmidt_rank_vector(std::get<PureState>(load_state_file(tmp.path("product.txt")))) ==
        RankVector({1, 1, 1}));

  cli::FeasibleOptions infeasible{.r1 = 5, .r2 = 2, .r3 = 2, .emit = true,
                                  .out_path = tmp.path("no.txt")};
  CHECK_THROWS_AS(cli::cmd_feasible(infeasible, out), std::invalid_argument);
}

TEST_CASE("conjecture scan reports a clean tally with the GHZ probe") {
  TempDir tmp;
  cli::ConjectureScanOptions scan;
  scan.count = 200;
  scan.seed = 77;
  scan.dump_prefix = tmp.path("violation");
  std::ostringstream out;
  CHECK(cli::cmd_conjecture_scan(scan, out) == cli::kExitSuccess);
  CHECK(out.str().find("violations: 0 / 200") != std::string::npos);
  CHECK(out.str().find("ghz probe: holds (8 = 8)") != std::string::npos);

  cli::ConjectureScanOptions zero = scan;
  zero.count = 0;
  CHECK_THROWS_AS(cli::cmd_conjecture_scan(zero, out), std::invalid_argument);
}

TEST_CASE("optimize recovers a rotated Bell state through the CLI path") {
  TempDir tmp;
  const PureState bell =
      state_from_terms(PartyStructure({2, 2}), {{{0, 0}, 1.0}, {{1, 1}, 1.0}});
  const LocalBasis hidden = random_local_basis(bell.structure(), 4242);
  save_state_file(tmp.path("rotated.txt"), apply_local_basis(bell, hidden));

  const std::string pair_file = tmp.path("pairs.txt");
  {
    std::ofstream pairs(pair_file);
    pairs << "0,0 | 1,1\n";
  }
  cli::OptimizeOptions optimize;
  optimize.state_path = tmp.path("rotated.txt");
  optimize.k = 1;
  optimize.seed = 3;
  optimize.witness.pairs = {pair_file};
  optimize.basis_out = tmp.path("basis.txt");
  std::ostringstream out;
  CHECK(cli::cmd_optimize(optimize, out) == cli::kExitSuccess);
  CHECK(out.str().find("after") != std::string::npos);

  // the written basis really achieves the reported witness value
  std::ifstream basis_in(tmp.path("basis.txt"));
  const LocalBasis basis = load_basis(basis_in);
  const DensityMatrix rotated = apply_local_basis(
      projector(std::get<PureState>(load_state_file(tmp.path("rotated.txt")))), basis);
  const PairSet pair(bell.structure(), {{{0, 0}, {1, 1}}});
  CHECK(witness_value(rotated, pair, 1) >= 1.0 - 1e-6);
}

TEST_CASE("run_guarded maps exception types to the exit-code contract") {
  std::ostringstream err;
  CHECK(cli::run_guarded([] { return cli::kExitSuccess; }, err) == cli::kExitSuccess);
  CHECK(cli::run_guarded([]() -> int { throw ParseError(3, "bad"); }, err) == cli::kExitFailure);
  CHECK(cli::run_guarded([]() -> int { throw ValidationError("bad"); }, err) ==
        cli::kExitFailure);
  CHECK(cli::run_guarded([]() -> int { throw std::ios_base::failure("bad"); }, err) ==
        cli::kExitFailure);
  CHECK(cli::run_guarded([]() -> int { throw std::invalid_argument("bad"); }, err) ==
        cli::kExitArgument);
  CHECK(cli::run_guarded([]() -> int { throw std::out_of_range("bad"); }, err) ==
        cli::kExitArgument);

  std::ostringstream out;
  cli::AnalyzeOptions missing;
  missing.state_path = "/definitely/not/a/file.txt";
  CHECK(cli::run_guarded([&] { return cli::cmd_analyze(missing, out); }, err) ==
        cli::kExitFailure);
}

TEST_CASE("malformed state files fail analyze with a parse error") {
  TempDir tmp;
  {
    std::ofstream bad(tmp.path("bad.txt"));
    bad << "dims 2 2\nkind pure\nentry 0,0 not-a-number 0\n";
  }
  cli::AnalyzeOptions analyze;
  analyze.state_path = tmp.path("bad.txt");
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cli::run_guarded([&] { return cli::cmd_analyze(analyze, out); }, err) ==
        cli::kExitFailure);
  CHECK(err.str().find("line 3") != std::string::npos);
}
