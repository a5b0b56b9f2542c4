#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace mdent {

using FlatIndex = std::int64_t;

// One level index per party, e.g. {0,1,2} for |0⟩|1⟩|2⟩.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> entries) : entries_(entries) {}
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {}

  int size() const { return static_cast<int>(entries_.size()); }
  int operator[](int party) const { return entries_[static_cast<std::size_t>(party)]; }
  int& operator[](int party) { return entries_[static_cast<std::size_t>(party)]; }
  const std::vector<int>& entries() const { return entries_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> entries_;
};

/// Ordered local dimensions of a multipartite Hilbert space.
///
/// Owns the row-major (big-endian in party order) bijection between flat
/// indices in [0, D) and multiindices; every module and file format uses
/// this one flattening.
class PartyStructure {
 public:
  explicit PartyStructure(std::vector<int> dims);

  int num_parties() const { return static_cast<int>(dims_.size()); }
  FlatIndex total_dim() const { return total_dim_; }
  int dim(int party) const;
  const std::vector<int>& dims() const { return dims_; }

  // Throws std::invalid_argument on a length mismatch and std::out_of_range
  // when an entry is outside its party's range.
  FlatIndex flat_index(const MultiIndex& idx) const;
  MultiIndex multi_index(FlatIndex flat) const;

  friend bool operator==(const PartyStructure&, const PartyStructure&) = default;

 private:
  std::vector<int> dims_;
  std::vector<FlatIndex> strides_;
  FlatIndex total_dim_ = 0;
};

}  // namespace mdent
