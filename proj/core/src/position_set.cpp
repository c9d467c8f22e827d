#include "collatz/position_set.hpp"

#include <algorithm>
#include <bit>

namespace collatz {

bool PositionSet::insert(const Position& p) {
  const auto v = p.value().to_u64();
  if (v && *v < dense_bound_) {
    const std::uint64_t word = *v / 64;
    if (word >= words_.size()) {
      const std::uint64_t cap = (dense_bound_ + 63) / 64;
      words_.resize(std::min(std::max<std::uint64_t>(word + 1, words_.size() * 2), cap), 0);
    }
    const std::uint64_t mask = std::uint64_t{1} << (*v % 64);
    if ((words_[word] & mask) != 0) return false;
    words_[word] |= mask;
    ++size_;
    return true;
  }
  if (!sparse_.insert(p.value()).second) return false;
  ++size_;
  return true;
}

bool PositionSet::contains(std::uint64_t v) const {
  if (v < dense_bound_) {
    const std::uint64_t word = v / 64;
    return word < words_.size() && ((words_[word] >> (v % 64)) & 1U) != 0;
  }
  return sparse_.contains(Nat{v});
}

bool PositionSet::contains(const Position& p) const {
  if (const auto v = p.value().to_u64()) return contains(*v);
  return sparse_.contains(p.value());
}

std::vector<Nat> PositionSet::sparse_sorted() const {
  std::vector<Nat> out(sparse_.begin(), sparse_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Nat> PositionSet::sorted() const {
  std::vector<Nat> out;
  out.reserve(size_);
  for (std::uint64_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      const auto bit = static_cast<std::uint64_t>(std::countr_zero(bits));
      out.emplace_back(w * 64 + bit);
      bits &= bits - 1;
    }
  }
  auto sparse = sparse_sorted();
  out.insert(out.end(), sparse.begin(), sparse.end());
  return out;
}

PositionSet PositionSet::restore(std::uint64_t dense_bound, std::vector<std::uint64_t> words,
                                 const std::vector<Nat>& sparse) {
  PositionSet set(dense_bound);
  set.words_ = std::move(words);
  for (std::uint64_t w : set.words_) set.size_ += static_cast<std::uint64_t>(std::popcount(w));
  for (const Nat& n : sparse) {
    if (set.sparse_.insert(n).second) ++set.size_;
  }
  return set;
}

bool operator==(const PositionSet& a, const PositionSet& b) {
  if (a.size_ != b.size_ || a.sparse_ != b.sparse_) return false;
  const auto& shorter = a.words_.size() <= b.words_.size() ? a.words_ : b.words_;
  const auto& longer = a.words_.size() <= b.words_.size() ? b.words_ : a.words_;
  if (!std::equal(shorter.begin(), shorter.end(), longer.begin())) return false;
  return std::all_of(longer.begin() + static_cast<std::ptrdiff_t>(shorter.size()), longer.end(),
                     [](std::uint64_t w) { return w == 0; });
}

}  // namespace collatz
