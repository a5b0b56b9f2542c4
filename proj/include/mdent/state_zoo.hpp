#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mdent/states.hpp"

namespace mdent {

/// Mixing weights of the noise family: p on the pure target, q on its
/// completely dephased version, the rest white noise. Requires p,q ≥ 0 and
/// p+q ≤ 1 (with 1e-12 slack for grid endpoints).
struct NoiseParams {
  NoiseParams(double p, double q);
  double p;
  double q;
};

// Normalized superposition with the given amplitudes; rejects duplicate
// indices and all-zero amplitude lists.
PureState state_from_terms(const PartyStructure& structure,
                           const std::vector<std::pair<MultiIndex, Complex>>& terms);

// (|000⟩+|111⟩+|122⟩)/√3 embedded in three qudits of dimension 7.
PureState psi_332();
// (|333⟩+|344⟩+|435⟩+|446⟩)/2 embedded in three qudits of dimension 7.
PureState psi_422();
// (|000⟩+|111⟩+|012⟩+|123⟩)/2 on local dimensions [4,4,4].
PureState psi_432();

/// Tripartite state (1/√keep_terms)·Σ |m·r_c+n⟩|m⟩|n⟩ over the first
/// keep_terms pairs (m,n), with party A of dimension r_b·r_c. Kept pairs are
/// ordered coverage-first: the diagonal transversal (j mod r_b, j mod r_c)
/// for j < max(r_b,r_c), then the remaining pairs lexicographically. With
/// keep_terms = r it realizes the sorted rank vector (r, r_b, r_c) for every
/// feasible triple r ≤ r_b·r_c with r ≥ max(r_b,r_c).
PureState canonical_rank_state(int r_b, int r_c, int keep_terms);

// Zeroes every computational-basis off-diagonal entry; diagonal preserved.
DensityMatrix dephase(const DensityMatrix& rho);

// p·|ψ432⟩⟨ψ432| + q·dephase(|ψ432⟩⟨ψ432|) + (1−p−q)/64·𝟙 on [4,4,4].
DensityMatrix test_state(const NoiseParams& params);

// p|ψ332⟩⟨ψ332| + (1−p)|ψ422⟩⟨ψ422| for p in (0,1); the two components sit
// on disjoint computational supports.
DensityMatrix orthogonal_mixture(double p);

/// Amplitudes drawn i.i.d. standard complex normal on the support (full
/// space when absent), then normalized. Deterministic per seed; the support
/// is traversed in flat-index order.
PureState random_pure_state(const PartyStructure& structure, std::uint64_t seed,
                            const std::optional<std::vector<MultiIndex>>& support = std::nullopt);

}  // namespace mdent
