#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include "mdent/rank_analysis.hpp"
#include "mdent/state_zoo.hpp"
#include "mdent/tensor_core.hpp"

using namespace mdent;

TEST_CASE("state_from_terms normalizes and validates") {
  const PureState bell =
      state_from_terms(PartyStructure({2, 2}), {{{0, 0}, 1.0}, {{1, 1}, 1.0}});
  CHECK(std::abs(bell.amplitude({0, 0}) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
  CHECK(std::abs(bell.amplitude({1, 1}) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);

  // the (3,3,2) amplitude pattern embeds in minimal qutrit dimensions too
  const PureState tight332 = state_from_terms(
      PartyStructure({3, 3, 3}), {{{0, 0, 0}, 1.0}, {{1, 1, 1}, 1.0}, {{1, 2, 2}, 1.0}});
  CHECK(std::abs(tight332.amplitude({1, 2, 2}) - Complex(1.0 / std::sqrt(3.0), 0.0)) < 1e-12);
  CHECK(schmidt_rank_vector(tight332) == RankVector({3, 3, 2}));

  CHECK_THROWS_AS(state_from_terms(PartyStructure({3, 3, 3}),
                                   {{{0, 0, 0}, 1.0}, {{0, 0, 0}, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(state_from_terms(PartyStructure({2, 2}), {{{0, 0}, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(state_from_terms(PartyStructure({2, 2}), {}), std::invalid_argument);
}

TEST_CASE("named target states have the expected amplitudes") {
  const PureState p332 = psi_332();
  CHECK(p332.structure() == PartyStructure({7, 7, 7}));
  CHECK(std::abs(p332.amplitudes().squaredNorm() - 1.0) < 1e-12);
  CHECK(std::abs(p332.amplitude({1, 2, 2}) - Complex(1.0 / std::sqrt(3.0), 0.0)) < 1e-12);

  const PureState p422 = psi_422();
  CHECK(std::abs(p422.amplitude({3, 3, 3}) - Complex(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(p422.amplitude({4, 4, 6}) - Complex(0.5, 0.0)) < 1e-12);

  const PureState p432 = psi_432();
  CHECK(p432.structure() == PartyStructure({4, 4, 4}));
  CHECK(std::abs(p432.amplitude({1, 2, 3}) - Complex(0.5, 0.0)) < 1e-12);
}

TEST_CASE("canonical_rank_state realizes the requested rank vectors") {
  CHECK(schmidt_rank_vector(canonical_rank_state(2, 2, 4)) == RankVector({4, 2, 2}));
  CHECK(schmidt_rank_vector(canonical_rank_state(2, 2, 3)) == RankVector({3, 2, 2}));
  CHECK(schmidt_rank_vector(canonical_rank_state(1, 1, 1)) == RankVector({1, 1, 1}));

  CHECK_THROWS_AS(canonical_rank_state(2, 2, 5), std::invalid_argument);
  CHECK_THROWS_AS(canonical_rank_state(2, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(canonical_rank_state(0, 2, 1), std::invalid_argument);
}

TEST_CASE("canonical_rank_state with full keep hits (rB*rC, rB, rC) for rB,rC in [1,4]") {
  for (int rb = 1; rb <= 4; ++rb) {
    for (int rc = 1; rc <= 4; ++rc) {
      const PureState psi = canonical_rank_state(rb, rc, rb * rc);
      CHECK(schmidt_rank_vector(psi) == RankVector({rb * rc, rb, rc}));
    }
  }
}

TEST_CASE("dephase zeroes off-diagonals, preserves the diagonal, and is idempotent") {
  const DensityMatrix rho = projector(psi_432());
  const DensityMatrix dephased = dephase(rho);

  const PartyStructure& s = rho.structure();
  const std::set<FlatIndex> support = {s.flat_index({0, 0, 0}), s.flat_index({1, 1, 1}),
                                       s.flat_index({0, 1, 2}), s.flat_index({1, 2, 3})};
  for (FlatIndex f = 0; f < s.total_dim(); ++f) {
    const double expected = support.count(f) != 0 ? 0.25 : 0.0;
    CHECK(std::abs(dephased.entries()(f, f) - Complex(expected, 0.0)) < 1e-12);
  }
  Eigen::MatrixXcd off = dephased.entries();
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() == 0.0);

  const DensityMatrix twice = dephase(dephased);
  CHECK((twice.entries() - dephased.entries()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(dephased.entries().trace() - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("test_state entries follow the noise decomposition") {
  const DensityMatrix pure = test_state(NoiseParams(1.0, 0.0));
  CHECK((pure.entries() - projector(psi_432()).entries()).cwiseAbs().maxCoeff() < 1e-12);

  const DensityMatrix white = test_state(NoiseParams(0.0, 0.0));
  CHECK((white.entries() - Eigen::MatrixXcd::Identity(64, 64) / 64.0).cwiseAbs().maxCoeff() <
        1e-12);

  const DensityMatrix half = test_state(NoiseParams(0.5, 0.0));
  CHECK(std::abs(half.entry({0, 0, 0}, {1, 1, 1}) - Complex(0.125, 0.0)) < 1e-12);
  CHECK(half.diagonal({3, 3, 3}) == doctest::Approx(0.5 / 64.0).epsilon(1e-12));

  CHECK_THROWS_AS(NoiseParams(0.7, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(NoiseParams(-0.1, 0.0), std::invalid_argument);
}

TEST_CASE("test_state passes density-matrix validation on the 21x21 simplex grid") {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20 - i; ++j) {
      const DensityMatrix rho = test_state(NoiseParams(i / 20.0, j / 20.0));
      CHECK(validate(rho).ok());
    }
  }
}

TEST_CASE("orthogonal_mixture keeps its components on disjoint supports") {
  const DensityMatrix rho = orthogonal_mixture(0.5);
  CHECK(std::abs(rho.entries().trace() - Complex(1.0, 0.0)) < 1e-12);
  CHECK(rho.diagonal({0, 0, 0}) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  // supports of the two components are disjoint flat-index sets
  const PureState a = psi_332();
  const PureState b = psi_422();
  for (FlatIndex f = 0; f < a.structure().total_dim(); ++f) {
    const bool in_a = std::abs(a.amplitudes()(f)) > 1e-12;
    const bool in_b = std::abs(b.amplitudes()(f)) > 1e-12;
    CHECK_FALSE((in_a && in_b));
  }

  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    CHECK(numerical_rank(orthogonal_mixture(p)) == 2);
  }
  CHECK_THROWS_AS(orthogonal_mixture(0.0), std::invalid_argument);
  CHECK_THROWS_AS(orthogonal_mixture(1.0), std::invalid_argument);
}

TEST_CASE("random_pure_state is deterministic per seed") {
  const PartyStructure s({3, 3});
  const PureState first = random_pure_state(s, 99);
  const PureState second = random_pure_state(s, 99);
  CHECK((first.amplitudes() - second.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
  const PureState other = random_pure_state(s, 100);
  CHECK((first.amplitudes() - other.amplitudes()).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("random_pure_state respects the support") {
  const PartyStructure s({2, 2});
  const PureState single = random_pure_state(s, 7, std::vector<MultiIndex>{{1, 0}});
  CHECK(std::abs(std::abs(single.amplitude({1, 0})) - 1.0) < 1e-12);

  CHECK_THROWS_AS(random_pure_state(s, 7, std::vector<MultiIndex>{}), std::invalid_argument);
}

TEST_CASE("random 4-qubit states are generically full local rank") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const PureState psi = random_pure_state(PartyStructure({2, 2, 2, 2}), seed);
    CHECK(schmidt_rank_vector(psi) == RankVector({2, 2, 2, 2}));
  }
}
