#pragma once

// Reverse tree building from a root [1..N], N = 3^k.
//
// Iteration 1 includes every string headed by E(x) for x in the root.
// Iteration i+1 includes the strings headed by E(e) for every element e
// newly included at iteration i that lies outside the root (root elements
// already seeded iteration 1). Inclusions are expected never to repeat.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collatz/position_set.hpp"
#include "collatz/strings.hpp"

namespace collatz {

struct TreeOptions {
  std::size_t max_steps = kDefaultMaxSteps;
  unsigned workers = 1;
  /// Heads above the ceiling are not seeded and backward chain walks stop
  /// above it. Exact for every position whose forward path stays below.
  std::optional<Nat> ceiling;
  std::uint64_t dense_bound = PositionSet::kDefaultDenseBound;
  /// Root other than 3^k; accepted with a warning.
  std::optional<std::uint64_t> root_size;
};

struct IterationStats {
  std::size_t iteration = 0;
  std::uint64_t seeds = 0;
  std::uint64_t pigeons_added = 0;
  Nat expected_pigeons;  // 3^i * N
  Nat max_position;      // largest position included so far
  Rational pigeon_hole_ratio;  // covered positions / max(max_position, N)
  std::uint64_t duplicates = 0;
  std::uint64_t root_overlap = 0;  // new inclusions inside the root, not re-seeded
  std::uint64_t cap_hits = 0;
  std::uint64_t pruned_heads = 0;
  std::uint64_t truncated_chains = 0;
  friend bool operator==(const IterationStats&, const IterationStats&) = default;
};

struct TreeState {
  unsigned root_k = 0;
  std::uint64_t root_size = 0;
  std::size_t iteration = 0;
  PositionSet included;
  std::vector<Position> frontier;  // seeds of the next iteration (before E)
  std::vector<IterationStats> stats;
  std::optional<Nat> ceiling;
  std::vector<std::string> warnings;

  /// Positions of [1..N] plus included positions outside it.
  [[nodiscard]] std::uint64_t covered_total() const;
  friend bool operator==(const TreeState&, const TreeState&) = default;
};

/// State before the first iteration: the root as frontier.
TreeState make_tree(unsigned k, const TreeOptions& options = {});
/// Runs `iterations` more iterations.
void grow_tree(TreeState& state, std::size_t iterations, const TreeOptions& options = {});
TreeState build_tree(unsigned k, std::size_t iterations, const TreeOptions& options = {});

struct CoverageReport {
  std::uint64_t bound = 0;
  std::uint64_t covered = 0;
  std::vector<std::uint64_t> holes;
};

/// Positions of [2..bound] in neither the root nor any included chain.
CoverageReport coverage_report(const TreeState& state, std::uint64_t bound);

struct AuditRow {
  std::string pattern;  // branches, e.g. "2,1"
  std::size_t length = 0;
  std::uint64_t count = 0;
  std::uint64_t expected = 0;
};

struct AuditReport {
  unsigned k = 0;
  std::size_t depth = 0;
  std::vector<AuditRow> rows;  // every pattern of every length 1..depth
  bool pass = false;
};

/// Counts branch patterns (zero equivalents) among the heads E(1..3^k) and
/// compares with 3^(k-d) per pattern of length d. Throws InsufficientRoot
/// when depth > k.
AuditReport bucket_audit(unsigned k, std::size_t depth);

struct ConvergenceReport {
  std::uint64_t bound = 0;
  std::uint64_t root_size = 0;
  std::uint64_t checked = 0;
  std::vector<std::uint64_t> failures;  // hit max_steps
  std::uint64_t total_steps = 0;
  std::uint64_t max_steps_taken = 0;
  std::uint64_t argmax_steps = 0;
  Nat max_excursion;
  std::uint64_t argmax_excursion = 0;
};

/// Iterates the conjugate map from every x in [2..bound] until it enters
/// [1..3^root_k].
ConvergenceReport forward_convergence_check(std::uint64_t bound, unsigned root_k,
                                            std::size_t max_steps = 100'000, unsigned workers = 1);

struct InclusionDepth {
  std::optional<std::size_t> depth;  // nullopt when max_steps ran out
  Nat max_excursion;
};

/// Forward oracle for the tree: follows x -> string_step(x) off heads and
/// x -> (x+1)/4 on heads, and counts the (x+1)/4 moves until one lands in
/// [1..root_size]. That count is the iteration at which the tree includes x.
/// Positions inside the root report depth 0.
InclusionDepth forward_inclusion_depth(const Position& x, std::uint64_t root_size,
                                       std::size_t max_steps = 1'000'000);

/// Root size for k: 3^k.
std::uint64_t root_size_for(unsigned k);

}  // namespace collatz
