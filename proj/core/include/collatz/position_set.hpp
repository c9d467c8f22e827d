#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "collatz/maps.hpp"

namespace collatz {

/// Set of positions: a growable bitmap below `dense_bound`, a hash set above.
class PositionSet {
 public:
  static constexpr std::uint64_t kDefaultDenseBound = std::uint64_t{1} << 30;

  explicit PositionSet(std::uint64_t dense_bound = kDefaultDenseBound) : dense_bound_(dense_bound) {}

  /// Returns true when p was not yet present.
  bool insert(const Position& p);
  [[nodiscard]] bool contains(const Position& p) const;
  [[nodiscard]] bool contains(std::uint64_t v) const;
  [[nodiscard]] std::uint64_t size() const noexcept { return size_; }
  [[nodiscard]] std::uint64_t dense_bound() const noexcept { return dense_bound_; }

  [[nodiscard]] const std::vector<std::uint64_t>& dense_words() const noexcept { return words_; }
  /// Elements at or above the dense bound, ascending.
  [[nodiscard]] std::vector<Nat> sparse_sorted() const;
  /// Every element, ascending.
  [[nodiscard]] std::vector<Nat> sorted() const;

  /// Rebuilds a set from its serialized parts.
  static PositionSet restore(std::uint64_t dense_bound, std::vector<std::uint64_t> words,
                             const std::vector<Nat>& sparse);

  friend bool operator==(const PositionSet& a, const PositionSet& b);

 private:
  std::uint64_t dense_bound_;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
  std::unordered_set<Nat> sparse_;
};

}  // namespace collatz
