#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace collatz {

/// Half-open index range [begin, end).
struct Shard {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

/// Splits [begin, end) into at most `workers` contiguous shards of near-equal size.
inline std::vector<Shard> make_shards(std::uint64_t begin, std::uint64_t end, unsigned workers) {
  std::vector<Shard> shards;
  if (end <= begin) return shards;
  const std::uint64_t total = end - begin;
  const std::uint64_t count = std::clamp<std::uint64_t>(workers, 1, total);
  const std::uint64_t step = total / count;
  const std::uint64_t extra = total % count;
  std::uint64_t at = begin;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t len = step + (i < extra ? 1 : 0);
    shards.push_back({at, at + len});
    at += len;
  }
  return shards;
}

/// Runs fn(shard_index, shard) for each shard, one thread per shard when
/// workers > 1. The first exception thrown by any shard is rethrown.
template <typename Fn>
void run_sharded(const std::vector<Shard>& shards, unsigned workers, Fn&& fn) {
  if (workers <= 1 || shards.size() <= 1) {
    for (std::size_t i = 0; i < shards.size(); ++i) fn(i, shards[i]);
    return;
  }
  std::vector<std::exception_ptr> errors(shards.size());
  std::vector<std::thread> threads;
  threads.reserve(shards.size());
  for (std::size_t i = 0; i < shards.size(); ++i) {
    threads.emplace_back([&, i] {
      try {
        fn(i, shards[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace collatz
