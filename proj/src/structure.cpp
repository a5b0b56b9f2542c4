#include "mdent/structure.hpp"

#include <stdexcept>
#include <string>

namespace mdent {

PartyStructure::PartyStructure(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("PartyStructure: at least one party required");
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("PartyStructure: every local dimension must be >= 1");
  }
  strides_.assign(dims_.size(), 1);
  for (int j = static_cast<int>(dims_.size()) - 2; j >= 0; --j) {
    strides_[static_cast<std::size_t>(j)] =
        strides_[static_cast<std::size_t>(j) + 1] * dims_[static_cast<std::size_t>(j) + 1];
  }
  total_dim_ = strides_[0] * dims_[0];
}

int PartyStructure::dim(int party) const {
  if (party < 0 || party >= num_parties()) {
    throw std::out_of_range("PartyStructure: party index " + std::to_string(party) +
                            " out of range");
  }
  return dims_[static_cast<std::size_t>(party)];
}

FlatIndex PartyStructure::flat_index(const MultiIndex& idx) const {
  if (idx.size() != num_parties()) {
    throw std::invalid_argument("flat_index: multiindex has " + std::to_string(idx.size()) +
                                " entries, structure has " + std::to_string(num_parties()) +
                                " parties");
  }
  FlatIndex flat = 0;
  for (int j = 0; j < num_parties(); ++j) {
    const int entry = idx[j];
    if (entry < 0 || entry >= dims_[static_cast<std::size_t>(j)]) {
      throw std::out_of_range("flat_index: entry " + std::to_string(entry) + " at party " +
                              std::to_string(j) + " outside [0," +
                              std::to_string(dims_[static_cast<std::size_t>(j)]) + ")");
    }
    flat += entry * strides_[static_cast<std::size_t>(j)];
  }
  return flat;
}

MultiIndex PartyStructure::multi_index(FlatIndex flat) const {
  if (flat < 0 || flat >= total_dim_) {
    throw std::out_of_range("multi_index: flat index " + std::to_string(flat) + " outside [0," +
                            std::to_string(total_dim_) + ")");
  }
  std::vector<int> entries(dims_.size());
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    entries[j] = static_cast<int>(flat / strides_[j]);
    flat %= strides_[j];
  }
  return MultiIndex(std::move(entries));
}

}  // namespace mdent
