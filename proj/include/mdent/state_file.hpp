#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "mdent/basis_optimizer.hpp"
#include "mdent/states.hpp"

namespace mdent {

/// Sparse text document for states:
///
///   # comment
///   dims 4 4 4
///   kind pure            (or: density, basis)
///   entry 0,0,0 0.5 0    (pure:    multiindex re im)
///   entry 0,0,0 1,1,1 0.25 0   (density: row col re im)
///   entry 0 0,1 0.5 -0.5       (basis:   party row,col re im)
///
/// Unlisted entries are zero. Values are written with 17 significant digits
/// so a save/load round trip is exact. Loading validates the result and
/// throws ValidationError on an invariant breach, ParseError (with line
/// number) on malformed text.
using LoadedState = std::variant<PureState, DensityMatrix>;

void save_state(std::ostream& out, const PureState& psi);
void save_state(std::ostream& out, const DensityMatrix& rho);
void save_basis(std::ostream& out, const LocalBasis& basis);

LoadedState load_state(std::istream& in);
LocalBasis load_basis(std::istream& in);

// Path wrappers; unreadable/unwritable paths raise std::ios_base::failure.
void save_state_file(const std::string& path, const PureState& psi);
void save_state_file(const std::string& path, const DensityMatrix& rho);
void save_basis_file(const std::string& path, const LocalBasis& basis);
LoadedState load_state_file(const std::string& path);

// Fixed-precision helpers shared by the file formats and the CLI ("%.*g").
std::string format_real(double value, int significant_digits);

}  // namespace mdent
