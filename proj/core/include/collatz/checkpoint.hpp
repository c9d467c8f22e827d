#pragma once

// Tree checkpoints.
//
// Layout (all integers little-endian):
//   line 1   "collatz-tree-checkpoint\n"
//   line 2   one-line JSON header: version, root_k, root_size, iteration,
//            dense_bound, ceiling, bitmap_words, sparse_count,
//            frontier_count, stats, warnings, payload_hash
//   bytes    bitmap_words x uint64 of the dense inclusion bitmap
//   lines    sparse_count decimal positions (above the dense bound)
//   lines    frontier_count decimal positions
//
// payload_hash is FNV-1a 64 over the canonical payload, so a state that
// round-trips reproduces the same hash.

#include <filesystem>
#include <string>

#include "collatz/tree.hpp"

namespace collatz {

inline constexpr int kCheckpointVersion = 1;

/// Hex FNV-1a 64 of the canonical payload (trimmed bitmap, sparse set,
/// frontier, stats).
std::string state_hash(const TreeState& state);

void save_checkpoint(const TreeState& state, const std::filesystem::path& path);

/// Throws VersionMismatch on a bad magic line, unknown version, malformed
/// header, or a payload whose hash does not match.
TreeState load_checkpoint(const std::filesystem::path& path);

}  // namespace collatz
