#pragma once

// Maximal chains of the one-to-one forward step ("strings"). Every position
// other than 1 is expected to lie in exactly one of them; a chain starts at
// a tail (2 mod 3) and ends at a head (3 mod 4).

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "collatz/maps.hpp"

namespace collatz {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kDefaultMaxSteps = 10'000;

struct StringChain {
  std::vector<Position> elements;  // tail first, head last

  [[nodiscard]] const Position& tail() const { return elements.front(); }
  [[nodiscard]] const Position& head() const { return elements.back(); }
  [[nodiscard]] std::size_t size() const noexcept { return elements.size(); }
  friend bool operator==(const StringChain&, const StringChain&) = default;
};

enum class ViolationKind : std::uint8_t {
  duplicate,      // position reached by two chains
  cycle,          // a walk revisited a position
  step_cap,       // walk exceeded max_steps
  tail_residue,   // chain start not 2 mod 3
  head_residue,   // chain end not 3 mod 4
  contains_one,   // the trivial loop leaked into a chain
  uncovered,      // position in range not reached by any chain
};

std::string_view to_string(ViolationKind k) noexcept;

struct Violation {
  Position position;
  ViolationKind kind = ViolationKind::duplicate;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct LengthStats {
  std::uint64_t chains = 0;
  std::uint64_t total_length = 0;
  std::map<std::size_t, std::uint64_t> histogram;

  [[nodiscard]] Rational mean() const;
  /// count(length >= L+1) / count(length >= L) for L = 1, 2, ...
  /// while count(length >= L) >= min_support.
  [[nodiscard]] std::vector<double> continuation_ratios(std::uint64_t min_support = 1) const;
  void add(std::size_t length);
  void merge(const LengthStats& other);
};

struct PartitionReport {
  std::uint64_t scanned_bound = 0;
  std::uint64_t strings_found = 0;
  std::uint64_t element_count = 0;  // positions of [2..bound] covered
  std::vector<Violation> violations;  // sorted by position, then kind
  LengthStats lengths;                // over chains intersecting [2..bound]

  [[nodiscard]] bool clean() const noexcept { return violations.empty(); }
};

struct StringStatsReport {
  PartitionReport partition;
  LengthStats by_head;  // chains whose head <= bound
  LengthStats by_tail;  // chains whose tail <= bound
};

struct ScanOptions {
  std::size_t max_steps = kDefaultMaxSteps;
  unsigned workers = 1;
};

/// Full maximal chain containing x. Throws TrivialLoop for x = 1 and
/// StepCapExceeded when either walk exceeds max_steps.
StringChain string_of(const Position& x, std::size_t max_steps = kDefaultMaxSteps);

/// Chain ending at `head` (which must be 3 mod 4). When `ceiling` is set the
/// backward walk stops before the first element exceeding it; the returned
/// elements are then a head-side suffix of the chain.
StringChain string_headed_by(const Position& head, std::size_t max_steps = kDefaultMaxSteps,
                             const std::optional<Nat>& ceiling = std::nullopt);

/// Walks the chain of every position in [2..bound] once and checks the
/// partition claim. Step-cap hits surface as violations.
PartitionReport scan_strings(std::uint64_t bound, const ScanOptions& options = {});

/// scan_strings plus length statistics over head- and tail-seeded chains.
StringStatsReport string_stats(std::uint64_t bound, const ScanOptions& options = {});

}  // namespace collatz
