#include "collatz/strings.hpp"

#include <algorithm>
#include <atomic>
#include <memory>

#include "collatz/errors.hpp"
#include "collatz/parallel.hpp"

namespace collatz {

namespace {

const Nat kOne{1};

struct Walk {
  std::vector<Position> path;  // starts at the walk origin
  std::optional<ViolationKind> failure;
};

// Both string_step and string_preimage are injective, so a walk that revisits
// any position must come back through its own origin.
Walk walk_back_to_tail(const Position& from, std::size_t max_steps,
                       const std::optional<Nat>& ceiling = std::nullopt) {
  Walk w;
  w.path.push_back(from);
  Position at = from;
  while (!is_tail(at)) {
    if (w.path.size() > max_steps) {
      w.failure = ViolationKind::step_cap;
      return w;
    }
    Position prev = string_preimage(at).pre_image;
    if (prev == from) {
      w.failure = ViolationKind::cycle;
      return w;
    }
    if (ceiling && prev.value() > *ceiling) return w;
    w.path.push_back(prev);
    at = std::move(prev);
  }
  return w;
}

Walk walk_forward_to_head(const Position& from, std::size_t max_steps) {
  Walk w;
  w.path.push_back(from);
  Position at = from;
  while (!is_head(at)) {
    if (w.path.size() > max_steps) {
      w.failure = ViolationKind::step_cap;
      return w;
    }
    Position next = string_step(at);
    if (next == from) {
      w.failure = ViolationKind::cycle;
      return w;
    }
    w.path.push_back(next);
    at = std::move(next);
  }
  return w;
}

void sort_violations(std::vector<Violation>& v) {
  std::sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
    if (a.position != b.position) return a.position < b.position;
    return a.kind < b.kind;
  });
}

class AtomicBitmap {
 public:
  explicit AtomicBitmap(std::uint64_t bits) : words_((bits + 63) / 64), data_(new std::atomic<std::uint64_t>[words_]) {
    for (std::uint64_t i = 0; i < words_; ++i) data_[i].store(0, std::memory_order_relaxed);
  }
  /// Returns true if the bit was already set.
  bool test_and_set(std::uint64_t bit) {
    const std::uint64_t mask = std::uint64_t{1} << (bit % 64);
    return (data_[bit / 64].fetch_or(mask, std::memory_order_relaxed) & mask) != 0;
  }
  [[nodiscard]] bool test(std::uint64_t bit) const {
    return (data_[bit / 64].load(std::memory_order_relaxed) >> (bit % 64) & 1U) != 0;
  }

 private:
  std::uint64_t words_;
  std::unique_ptr<std::atomic<std::uint64_t>[]> data_;
};

std::optional<std::uint64_t> small_index(const Position& p, std::uint64_t bound) {
  const auto v = p.value().to_u64();
  if (v && *v <= bound) return v;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::duplicate: return "duplicate";
    case ViolationKind::cycle: return "cycle";
    case ViolationKind::step_cap: return "step_cap";
    case ViolationKind::tail_residue: return "tail_residue";
    case ViolationKind::head_residue: return "head_residue";
    case ViolationKind::contains_one: return "contains_one";
    case ViolationKind::uncovered: return "uncovered";
  }
  return "unknown";
}

Rational LengthStats::mean() const {
  if (chains == 0) return Rational{0};
  return Rational{total_length} / Rational{chains};
}

std::vector<double> LengthStats::continuation_ratios(std::uint64_t min_support) const {
  std::vector<double> out;
  if (histogram.empty()) return out;
  const std::size_t longest = histogram.rbegin()->first;
  // at_least[L] = count(length >= L)
  std::vector<std::uint64_t> at_least(longest + 2, 0);
  for (const auto& [len, count] : histogram) at_least[len] += count;
  for (std::size_t l = longest; l-- > 1;) at_least[l] += at_least[l + 1];
  for (std::size_t l = 1; l <= longest && at_least[l] >= min_support && at_least[l] > 0; ++l) {
    out.push_back(static_cast<double>(at_least[l + 1]) / static_cast<double>(at_least[l]));
  }
  return out;
}

void LengthStats::add(std::size_t length) {
  ++chains;
  total_length += length;
  ++histogram[length];
}

void LengthStats::merge(const LengthStats& other) {
  chains += other.chains;
  total_length += other.total_length;
  for (const auto& [len, count] : other.histogram) histogram[len] += count;
}

StringChain string_of(const Position& x, std::size_t max_steps) {
  if (x.value() == kOne) throw TrivialLoop{};
  if (x.value().is_zero()) throw InvalidArgument("positions start at 1");
  Walk back = walk_back_to_tail(x, max_steps);
  if (back.failure) {
    throw StepCapExceeded("backward walk from " + x.str() + " failed: " + std::string(to_string(*back.failure)));
  }
  Walk fwd = walk_forward_to_head(x, max_steps);
  if (fwd.failure) {
    throw StepCapExceeded("forward walk from " + x.str() + " failed: " + std::string(to_string(*fwd.failure)));
  }
  StringChain chain;
  chain.elements.assign(back.path.rbegin(), back.path.rend());
  chain.elements.insert(chain.elements.end(), fwd.path.begin() + 1, fwd.path.end());
  return chain;
}

StringChain string_headed_by(const Position& head, std::size_t max_steps, const std::optional<Nat>& ceiling) {
  if (!is_head(head)) throw NotInDomain("position " + head.str() + " is not a head (3 mod 4)");
  Walk back = walk_back_to_tail(head, max_steps, ceiling);
  if (back.failure) {
    throw StepCapExceeded("backward walk from head " + head.str() + " failed: " +
                          std::string(to_string(*back.failure)));
  }
  StringChain chain;
  chain.elements.assign(back.path.rbegin(), back.path.rend());
  return chain;
}

PartitionReport scan_strings(std::uint64_t bound, const ScanOptions& options) {
  if (bound < 2) throw InvalidArgument("scan_strings requires bound >= 2");
  AtomicBitmap covered(bound + 1);

  struct Partial {
    std::uint64_t strings = 0;
    std::vector<Violation> violations;
    LengthStats lengths;
  };
  const auto shards = make_shards(2, bound + 1, options.workers);
  std::vector<Partial> partials(shards.size());

  run_sharded(shards, options.workers, [&](std::size_t index, const Shard& shard) {
    Partial& out = partials[index];
    for (std::uint64_t xv = shard.begin; xv < shard.end; ++xv) {
      const Position x{xv};
      Walk back = walk_back_to_tail(x, options.max_steps);
      if (back.failure) {
        out.violations.push_back({x, *back.failure});
        continue;
      }
      // The chain belongs to its first element inside [2..bound].
      const bool owner = std::none_of(back.path.begin() + 1, back.path.end(), [&](const Position& p) {
        const auto v = small_index(p, bound);
        return v && *v >= 2;
      });
      if (!owner) continue;

      Walk fwd = walk_forward_to_head(x, options.max_steps);
      if (fwd.failure) {
        out.violations.push_back({x, *fwd.failure});
        continue;
      }
      std::vector<Position> chain(back.path.rbegin(), back.path.rend());
      chain.insert(chain.end(), fwd.path.begin() + 1, fwd.path.end());

      if (!is_tail(chain.front())) out.violations.push_back({chain.front(), ViolationKind::tail_residue});
      if (!is_head(chain.back())) out.violations.push_back({chain.back(), ViolationKind::head_residue});
      for (const Position& p : chain) {
        if (p.value() == kOne) {
          out.violations.push_back({p, ViolationKind::contains_one});
          continue;
        }
        if (const auto v = small_index(p, bound)) {
          if (covered.test_and_set(*v)) out.violations.push_back({p, ViolationKind::duplicate});
        }
      }
      ++out.strings;
      out.lengths.add(chain.size());
    }
  });

  PartitionReport report;
  report.scanned_bound = bound;
  for (auto& part : partials) {
    report.strings_found += part.strings;
    report.lengths.merge(part.lengths);
    report.violations.insert(report.violations.end(), part.violations.begin(), part.violations.end());
  }
  for (std::uint64_t xv = 2; xv <= bound; ++xv) {
    if (covered.test(xv)) {
      ++report.element_count;
    } else {
      report.violations.push_back({Position{xv}, ViolationKind::uncovered});
    }
  }
  sort_violations(report.violations);
  return report;
}

StringStatsReport string_stats(std::uint64_t bound, const ScanOptions& options) {
  StringStatsReport report;
  report.partition = scan_strings(bound, options);

  struct Partial {
    LengthStats by_head;
    LengthStats by_tail;
  };
  const auto shards = make_shards(2, bound + 1, options.workers);
  std::vector<Partial> partials(shards.size());
  run_sharded(shards, options.workers, [&](std::size_t index, const Shard& shard) {
    Partial& out = partials[index];
    for (std::uint64_t xv = shard.begin; xv < shard.end; ++xv) {
      const Position x{xv};
      if (is_head(x)) {
        Walk w = walk_back_to_tail(x, options.max_steps);
        if (!w.failure) out.by_head.add(w.path.size());
      }
      if (is_tail(x)) {
        Walk w = walk_forward_to_head(x, options.max_steps);
        if (!w.failure) out.by_tail.add(w.path.size());
      }
    }
  });
  for (const auto& part : partials) {
    report.by_head.merge(part.by_head);
    report.by_tail.merge(part.by_tail);
  }
  return report;
}

}  // namespace collatz
