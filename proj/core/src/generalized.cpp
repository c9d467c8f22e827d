#include "collatz/generalized.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "collatz/errors.hpp"
#include "collatz/parallel.hpp"

namespace collatz {

namespace {

constexpr std::size_t kVisitedLimit = std::size_t{1} << 20;

}  // namespace

ShiftParam::ShiftParam(std::uint64_t p) : p_(p) {
  if (p % 6 != 1 && p % 6 != 5) {
    throw InvalidArgument("p must be odd with p mod 6 in {1, 5}, got " + std::to_string(p));
  }
}

PStep accelerated_p_step(const Nat& n, const ShiftParam& p) {
  if (n.is_zero() || n.is_even()) throw InvalidArgument("accelerated_p_step requires odd n, got " + n.str());
  const Nat m = Nat{3} * n + Nat{p.value()};
  const unsigned j = m.countr_zero();
  return {m >> j, j};
}

CycleRecord cycle_through(const Nat& member, const ShiftParam& p, std::uint64_t max_length) {
  std::vector<Nat> orbit{member};
  Nat at = accelerated_p_step(member, p).next;
  while (at != member) {
    if (orbit.size() >= max_length) throw StepCapExceeded("cycle through " + member.str() + " longer than cap");
    orbit.push_back(at);
    at = accelerated_p_step(at, p).next;
  }
  const auto min_it = std::min_element(orbit.begin(), orbit.end());
  std::rotate(orbit.begin(), min_it, orbit.end());
  CycleRecord record;
  record.members = orbit;
  std::sort(record.members.begin(), record.members.end());
  record.orbit = std::move(orbit);
  return record;
}

bool cycle_is_closed(const CycleRecord& cycle, const ShiftParam& p) {
  if (cycle.orbit.empty() || cycle.orbit.size() != cycle.members.size()) return false;
  for (std::size_t i = 0; i < cycle.orbit.size(); ++i) {
    const Nat& expected = cycle.orbit[(i + 1) % cycle.orbit.size()];
    if (accelerated_p_step(cycle.orbit[i], p).next != expected) return false;
  }
  std::vector<Nat> sorted = cycle.orbit;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && sorted == cycle.members;
}

PTrajectory p_trajectory(const Nat& n, const ShiftParam& p, std::uint64_t max_steps) {
  if (n.is_zero() || n.is_even()) throw InvalidArgument("p_trajectory requires odd n, got " + n.str());
  PTrajectory t;
  std::unordered_set<Nat> visited;
  Nat at = n;
  while (visited.size() < kVisitedLimit) {
    if (visited.contains(at)) {
      t.cycle = cycle_through(at, p);
      return t;
    }
    if (t.steps >= max_steps) {
      t.cap_exceeded = true;
      return t;
    }
    visited.insert(at);
    t.path.push_back(at);
    at = accelerated_p_step(at, p).next;
    ++t.steps;
  }

  // Brent: once tortoise == hare, the hare sits on the cycle.
  t.path_truncated = true;
  visited.clear();
  std::uint64_t power = 1;
  std::uint64_t lambda = 1;
  Nat tortoise = at;
  Nat hare = accelerated_p_step(at, p).next;
  ++t.steps;
  while (tortoise != hare) {
    if (t.steps >= max_steps) {
      t.cap_exceeded = true;
      return t;
    }
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = accelerated_p_step(hare, p).next;
    ++lambda;
    ++t.steps;
  }
  t.cycle = cycle_through(hare, p);
  return t;
}

CycleSearchReport cycle_search(const ShiftParam& p, std::uint64_t bound, std::uint64_t max_steps, unsigned workers) {
  if (bound < 1) throw InvalidArgument("cycle_search requires bound >= 1");
  const std::uint64_t seeds = (bound + 1) / 2;  // odd seeds 1, 3, ..., <= bound

  struct Partial {
    std::map<Nat, CycleRecord> cycles;
    std::vector<std::uint64_t> capped;
  };
  const auto shards = make_shards(0, seeds, workers);
  std::vector<Partial> parts(shards.size());
  run_sharded(shards, workers, [&](std::size_t index, const Shard& shard) {
    Partial& out = parts[index];
    std::unordered_set<Nat> visited;
    for (std::uint64_t i = shard.begin; i < shard.end; ++i) {
      const Nat seed{2 * i + 1};
      visited.clear();
      Nat at = seed;
      std::uint64_t steps = 0;
      // Dropping below the seed means an earlier seed already owns the orbit.
      while (at >= seed) {
        if (visited.contains(at)) {
          CycleRecord record = cycle_through(at, p);
          if (record.canonical() <= Nat{bound}) out.cycles.emplace(record.canonical(), std::move(record));
          break;
        }
        if (steps >= max_steps) {
          out.capped.push_back(2 * i + 1);
          break;
        }
        visited.insert(at);
        at = accelerated_p_step(at, p).next;
        ++steps;
      }
    }
  });

  CycleSearchReport report;
  report.p = p.value();
  report.bound = bound;
  std::map<Nat, CycleRecord> merged;
  for (auto& part : parts) {
    for (auto& [key, record] : part.cycles) merged.emplace(key, std::move(record));
    report.capped_seeds.insert(report.capped_seeds.end(), part.capped.begin(), part.capped.end());
  }
  for (auto& [key, record] : merged) report.cycles.push_back(std::move(record));
  return report;
}

}  // namespace collatz
