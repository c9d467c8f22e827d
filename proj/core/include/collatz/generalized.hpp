#pragma once

// The 3n+p family on odd integers, p odd with p = 1 or 5 (mod 6).

#include <cstdint>
#include <optional>
#include <vector>

#include "collatz/nat.hpp"

namespace collatz {

class ShiftParam {
 public:
  /// Throws InvalidArgument unless p is odd and p mod 6 is 1 or 5.
  explicit ShiftParam(std::uint64_t p);
  [[nodiscard]] std::uint64_t value() const noexcept { return p_; }

 private:
  std::uint64_t p_;
};

struct PStep {
  Nat next;
  unsigned halvings = 0;
};

struct CycleRecord {
  std::vector<Nat> members;  // ascending
  std::vector<Nat> orbit;    // iteration order starting at the minimum
  [[nodiscard]] const Nat& canonical() const { return members.front(); }
  [[nodiscard]] std::size_t length() const noexcept { return members.size(); }
  friend bool operator==(const CycleRecord&, const CycleRecord&) = default;
};

struct PTrajectory {
  std::vector<Nat> path;  // up to the first repeated value (exclusive); capped in memory
  bool path_truncated = false;
  std::optional<CycleRecord> cycle;
  bool cap_exceeded = false;
  std::uint64_t steps = 0;
};

/// (3n+p)/2^j with j maximal. Throws InvalidArgument on even n.
PStep accelerated_p_step(const Nat& n, const ShiftParam& p);

/// Orbit of an odd n until it repeats a value (cycle) or max_steps run out.
/// A visited set tracks the first 2^20 values; beyond that Brent's method
/// takes over with constant memory.
PTrajectory p_trajectory(const Nat& n, const ShiftParam& p, std::uint64_t max_steps = 1'000'000);

/// Builds the record for the cycle through `member`. Requires that member lies on a cycle.
CycleRecord cycle_through(const Nat& member, const ShiftParam& p, std::uint64_t max_length = 1'000'000);

/// True when each orbit entry maps to the next, the last back to the first,
/// and members are the sorted distinct orbit entries.
bool cycle_is_closed(const CycleRecord& cycle, const ShiftParam& p);

struct CycleSearchReport {
  std::uint64_t p = 0;
  std::uint64_t bound = 0;
  std::vector<CycleRecord> cycles;  // by canonical member
  std::vector<std::uint64_t> capped_seeds;
};

/// Every cycle whose minimum member is <= bound, found from the odd seeds
/// 1, 3, ..., <= bound and deduplicated by canonical member.
CycleSearchReport cycle_search(const ShiftParam& p, std::uint64_t bound, std::uint64_t max_steps = 1'000'000,
                               unsigned workers = 1);

}  // namespace collatz
