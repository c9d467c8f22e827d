#include "collatz/tree.hpp"

#include <algorithm>
#include <map>

#include "collatz/errors.hpp"
#include "collatz/parallel.hpp"

namespace collatz {

namespace {

struct Expansion {
  std::vector<StringChain> chains;
  std::uint64_t cap_hits = 0;
  std::uint64_t pruned_heads = 0;
  std::uint64_t truncated = 0;
};

bool is_power_of_three(std::uint64_t v) {
  if (v == 0) return false;
  while (v % 3 == 0) v /= 3;
  return v == 1;
}

}  // namespace

std::uint64_t root_size_for(unsigned k) {
  if (k > 40) throw InvalidArgument("root exponent k must be <= 40");
  std::uint64_t n = 1;
  for (unsigned i = 0; i < k; ++i) n *= 3;
  return n;
}

std::uint64_t TreeState::covered_total() const {
  std::uint64_t overlap = 0;
  for (const auto& s : stats) overlap += s.root_overlap;
  return root_size + included.size() - overlap;
}

TreeState make_tree(unsigned k, const TreeOptions& options) {
  if (k < 1) throw InvalidArgument("root exponent k must be >= 1");
  TreeState state{.root_k = k,
                  .root_size = root_size_for(k),
                  .iteration = 0,
                  .included = PositionSet(options.dense_bound),
                  .frontier = {},
                  .stats = {},
                  .ceiling = options.ceiling,
                  .warnings = {}};
  if (options.root_size) {
    if (*options.root_size < 1) throw InvalidArgument("root size must be >= 1");
    state.root_size = *options.root_size;
    if (!is_power_of_three(state.root_size)) {
      state.warnings.push_back("root size " + std::to_string(state.root_size) +
                               " is not a power of 3; pigeon accounting assumes a y-proportional root");
    }
  }
  state.frontier.reserve(state.root_size);
  for (std::uint64_t x = 1; x <= state.root_size; ++x) state.frontier.emplace_back(x);
  return state;
}

void grow_tree(TreeState& state, std::size_t iterations, const TreeOptions& options) {
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto shards = make_shards(0, state.frontier.size(), options.workers);
    std::vector<Expansion> parts(shards.size());
    run_sharded(shards, options.workers, [&](std::size_t index, const Shard& shard) {
      Expansion& out = parts[index];
      for (std::uint64_t i = shard.begin; i < shard.end; ++i) {
        const Position head = raise_equivalent(state.frontier[i]);
        if (state.ceiling && head.value() > *state.ceiling) {
          ++out.pruned_heads;
          continue;
        }
        try {
          StringChain chain = string_headed_by(head, options.max_steps, state.ceiling);
          if (!is_tail(chain.tail())) ++out.truncated;
          out.chains.push_back(std::move(chain));
        } catch (const StepCapExceeded&) {
          ++out.cap_hits;
        }
      }
    });

    IterationStats stats;
    stats.iteration = state.iteration + 1;
    stats.seeds = state.frontier.size();
    stats.expected_pigeons = Nat::pow(3, static_cast<unsigned>(stats.iteration)) * Nat{state.root_size};
    stats.max_position = state.stats.empty() ? Nat{0} : state.stats.back().max_position;

    std::vector<Position> next;
    for (const Expansion& part : parts) {
      stats.cap_hits += part.cap_hits;
      stats.pruned_heads += part.pruned_heads;
      stats.truncated_chains += part.truncated;
      for (const StringChain& chain : part.chains) {
        for (const Position& p : chain.elements) {
          if (!state.included.insert(p)) {
            ++stats.duplicates;
            continue;
          }
          ++stats.pigeons_added;
          if (p.value() > stats.max_position) stats.max_position = p.value();
          if (p.value() <= Nat{state.root_size}) {
            ++stats.root_overlap;
          } else {
            next.push_back(p);
          }
        }
      }
    }
    state.frontier = std::move(next);
    state.iteration = stats.iteration;
    state.stats.push_back(stats);

    const Nat holes_span = std::max(state.stats.back().max_position, Nat{state.root_size});
    state.stats.back().pigeon_hole_ratio =
        Rational{state.covered_total()} / Rational{holes_span.to_big()};
  }
}

TreeState build_tree(unsigned k, std::size_t iterations, const TreeOptions& options) {
  if (iterations < 1) throw InvalidArgument("build_tree requires at least one iteration");
  TreeState state = make_tree(k, options);
  grow_tree(state, iterations, options);
  return state;
}

CoverageReport coverage_report(const TreeState& state, std::uint64_t bound) {
  CoverageReport report;
  report.bound = bound;
  for (std::uint64_t x = 2; x <= bound; ++x) {
    if (x <= state.root_size || state.included.contains(x)) {
      ++report.covered;
    } else {
      report.holes.push_back(x);
    }
  }
  return report;
}

AuditReport bucket_audit(unsigned k, std::size_t depth) {
  if (depth < 1) throw InvalidArgument("audit depth must be >= 1");
  if (depth > k) {
    throw InsufficientRoot("audit depth " + std::to_string(depth) + " exceeds root exponent " + std::to_string(k));
  }
  const std::uint64_t n = root_size_for(k);
  std::map<std::pair<std::size_t, std::string>, std::uint64_t> counts;
  for (std::uint64_t x = 1; x <= n; ++x) {
    Position at = raise_equivalent(Position{x});
    std::string pattern;
    for (std::size_t d = 1; d <= depth; ++d) {
      const auto r = inverse_residue(at);
      if (r == 2) break;
      if (!pattern.empty()) pattern += ',';
      pattern += r == 0 ? '1' : '2';
      ++counts[{d, pattern}];
      at = string_preimage(at).pre_image;
    }
  }

  AuditReport report;
  report.k = k;
  report.depth = depth;
  report.pass = true;
  // Enumerate every pattern so missing ones show up with count 0.
  for (std::size_t d = 1; d <= depth; ++d) {
    const std::uint64_t expected = root_size_for(k - static_cast<unsigned>(d));
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << d); ++bits) {
      std::string pattern;
      for (std::size_t i = 0; i < d; ++i) {
        if (i != 0) pattern += ',';
        pattern += ((bits >> (d - 1 - i)) & 1U) != 0 ? '2' : '1';
      }
      const auto it = counts.find({d, pattern});
      const std::uint64_t count = it == counts.end() ? 0 : it->second;
      report.pass = report.pass && count == expected;
      report.rows.push_back({pattern, d, count, expected});
    }
  }
  return report;
}

ConvergenceReport forward_convergence_check(std::uint64_t bound, unsigned root_k, std::size_t max_steps,
                                            unsigned workers) {
  if (bound < 2) throw InvalidArgument("convergence check requires bound >= 2");
  const std::uint64_t root = root_size_for(root_k);
  const Nat root_nat{root};

  const auto shards = make_shards(2, bound + 1, workers);
  std::vector<ConvergenceReport> parts(shards.size());
  run_sharded(shards, workers, [&](std::size_t index, const Shard& shard) {
    ConvergenceReport& out = parts[index];
    for (std::uint64_t xv = shard.begin; xv < shard.end; ++xv) {
      ++out.checked;
      Position at{xv};
      Nat peak{xv};
      std::uint64_t steps = 0;
      while (at.value() > root_nat && steps < max_steps) {
        at = conjugate_step(at);
        ++steps;
        if (at.value() > peak) peak = at.value();
      }
      if (at.value() > root_nat) {
        out.failures.push_back(xv);
        continue;
      }
      out.total_steps += steps;
      if (steps > out.max_steps_taken) {
        out.max_steps_taken = steps;
        out.argmax_steps = xv;
      }
      if (peak > out.max_excursion) {
        out.max_excursion = peak;
        out.argmax_excursion = xv;
      }
    }
  });

  ConvergenceReport report;
  report.bound = bound;
  report.root_size = root;
  // Shards are ascending, so strict comparisons keep the smallest argmax.
  for (const auto& part : parts) {
    report.checked += part.checked;
    report.total_steps += part.total_steps;
    report.failures.insert(report.failures.end(), part.failures.begin(), part.failures.end());
    if (part.max_steps_taken > report.max_steps_taken) {
      report.max_steps_taken = part.max_steps_taken;
      report.argmax_steps = part.argmax_steps;
    }
    if (part.max_excursion > report.max_excursion) {
      report.max_excursion = part.max_excursion;
      report.argmax_excursion = part.argmax_excursion;
    }
  }
  return report;
}

InclusionDepth forward_inclusion_depth(const Position& x, std::uint64_t root_size, std::size_t max_steps) {
  InclusionDepth result;
  result.max_excursion = x.value();
  const Nat root{root_size};
  if (x.value() <= root) {
    result.depth = 0;
    return result;
  }
  Nat at = x.value();
  std::size_t strips = 0;
  for (std::size_t step = 0; step < max_steps; ++step) {
    if (at.mod(4) == 3) {
      at = (at + Nat{1}) >> 2;
      ++strips;
      if (at <= root) {
        result.depth = strips;
        return result;
      }
    } else {
      at = string_step(Position{at}).value();
      if (at > result.max_excursion) result.max_excursion = at;
    }
  }
  return result;
}

}  // namespace collatz
