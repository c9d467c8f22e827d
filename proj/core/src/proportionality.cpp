#include "collatz/proportionality.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

#include "collatz/errors.hpp"
#include "collatz/parallel.hpp"

namespace collatz {

namespace {

unsigned parse_unsigned(std::string_view text, std::string_view what) {
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw InvalidArgument("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = text.find(sep, start);
    parts.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

std::string_view body_after(std::string_view literal, char tag) {
  if (literal.size() < 3 || literal[0] != tag || literal[1] != ':') {
    throw InvalidArgument("signature literal must start with '" + std::string(1, tag) + ":'");
  }
  return literal.substr(2);
}

// Interval exponents along the forward orbit; defined for every x >= 1.
bool forward_matches(const Position& x, const std::vector<unsigned>& exponents) {
  Position at = x;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (interval_exponent(at) != exponents[i]) return false;
    if (i + 1 < exponents.size()) at = conjugate_step(at);
  }
  return true;
}

std::optional<Branch> branch_for(const Position& x) {
  switch (inverse_residue(x)) {
    case 0: return Branch::two_thirds;
    case 1: return Branch::four_thirds;
    default: return std::nullopt;
  }
}

}  // namespace

unsigned ForwardSignature::exponent_sum() const noexcept {
  return std::accumulate(exponents.begin(), exponents.end(), 0U);
}

Nat ForwardSignature::modulus() const { return Nat{1} << exponent_sum(); }

std::string ForwardSignature::str() const {
  std::string out = "z:";
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(exponents[i]);
  }
  return out;
}

ForwardSignature ForwardSignature::parse(std::string_view literal) {
  ForwardSignature sig;
  for (auto part : split(body_after(literal, 'z'), ',')) {
    const unsigned z = parse_unsigned(part, "interval exponent");
    if (z == 0) throw InvalidArgument("interval exponents start at 1");
    sig.exponents.push_back(z);
  }
  return sig;
}

Nat ReverseSignature::modulus() const { return Nat::pow(3, static_cast<unsigned>(steps.size())); }

std::string ReverseSignature::str() const {
  std::string out = "y:";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(steps[i].equivalents);
    out += '.';
    out += std::to_string(static_cast<unsigned>(steps[i].branch));
  }
  return out;
}

ReverseSignature ReverseSignature::parse(std::string_view literal) {
  ReverseSignature sig;
  for (auto part : split(body_after(literal, 'y'), ',')) {
    const auto dot = part.find('.');
    if (dot == std::string_view::npos) throw InvalidArgument("reverse step must be 'equivalents.branch'");
    const unsigned eq = parse_unsigned(part.substr(0, dot), "equivalent count");
    const unsigned br = parse_unsigned(part.substr(dot + 1), "branch");
    if (br != 1 && br != 2) throw InvalidArgument("branch must be 1 or 2");
    sig.steps.push_back({eq, static_cast<Branch>(br)});
  }
  return sig;
}

Signature parse_signature(std::string_view literal) {
  if (!literal.empty() && literal[0] == 'z') return ForwardSignature::parse(literal);
  if (!literal.empty() && literal[0] == 'y') return ReverseSignature::parse(literal);
  throw InvalidArgument("signature literal must start with 'z:' or 'y:'");
}

std::string to_string(const Signature& sig) {
  return std::visit([](const auto& s) { return s.str(); }, sig);
}

ForwardSignature forward_signature(const Position& x, std::size_t steps) {
  if (x.value() == Nat{1}) throw TrivialLoop{};
  if (steps == 0) throw InvalidArgument("forward_signature needs at least one step");
  ForwardSignature sig;
  Position at = x;
  for (std::size_t i = 0; i < steps; ++i) {
    sig.exponents.push_back(interval_exponent(at));
    at = conjugate_step(at);
  }
  return sig;
}

Realization realize(const Position& x, const ReverseSignature& sig) {
  Position at = x;
  for (const ReverseStep& step : sig.steps) {
    at = raise_equivalent(at, step.equivalents);
    if (branch_for(at) != step.branch) return {at, false};
    at = string_preimage(at).pre_image;
  }
  return {at, true};
}

Position replay_forward(const Position& final, const ReverseSignature& sig) {
  Position at = final;
  for (auto it = sig.steps.rbegin(); it != sig.steps.rend(); ++it) {
    at = string_step(at);
    Nat v = at.value();
    for (unsigned i = 0; i < it->equivalents; ++i) {
      if (v.mod(4) != 3) throw NotInDomain("position " + v.str() + " has no lower equivalent");
      v = (v + Nat{1}) >> 2;
    }
    at = Position{std::move(v)};
  }
  return at;
}

std::optional<ReverseSignature> reverse_pattern(const Position& x, const std::vector<unsigned>& equivalents) {
  ReverseSignature sig;
  Position at = x;
  for (unsigned eq : equivalents) {
    at = raise_equivalent(at, eq);
    const auto branch = branch_for(at);
    if (!branch) return std::nullopt;
    sig.steps.push_back({eq, *branch});
    at = string_preimage(at).pre_image;
  }
  return sig;
}

RecurrenceReport verify_indexed(std::string label, const Nat& modulus, std::uint64_t range_lo,
                                std::uint64_t range_hi, const std::function<bool(std::uint64_t)>& occurs,
                                const RecurrenceOptions& options) {
  const auto window = modulus.to_u64();
  if (range_lo == 0 || range_hi < range_lo || !window || range_hi - range_lo + 1 < 2 * *window) {
    throw InsufficientRange("range [" + std::to_string(range_lo) + ", " + std::to_string(range_hi) +
                            "] must span at least two windows of " + modulus.str());
  }
  RecurrenceReport report;
  report.signature = std::move(label);
  report.window = modulus;
  report.range_lo = range_lo;
  report.range_hi = range_hi;

  const auto shards = make_shards(range_lo, range_hi + 1, options.workers);
  std::vector<std::vector<std::uint64_t>> found(shards.size());
  run_sharded(shards, options.workers, [&](std::size_t index, const Shard& shard) {
    for (std::uint64_t i = shard.begin; i < shard.end; ++i) {
      if (occurs(i)) found[index].push_back(i);
    }
  });
  for (const auto& part : found) report.occurrences.insert(report.occurrences.end(), part.begin(), part.end());

  const std::uint64_t m = *window;
  const std::uint64_t span = range_hi - range_lo + 1;
  report.complete_windows = span / m;

  // Exactly one per sliding window <=> first hit inside the first window,
  // consecutive hits exactly m apart, and no gap of m after the last hit.
  const auto& occ = report.occurrences;
  if (occ.empty()) {
    report.first_violation = range_lo;
  } else if (occ.front() >= range_lo + m) {
    report.first_violation = range_lo;
  } else {
    for (std::size_t i = 1; i < occ.size(); ++i) {
      if (occ[i] - occ[i - 1] != m) {
        report.first_violation = occ[i] - occ[i - 1] < m ? occ[i] : occ[i - 1] + m;
        break;
      }
    }
    if (!report.first_violation && occ.back() + m <= range_hi) report.first_violation = occ.back() + m;
  }
  report.pass = !report.first_violation.has_value();
  return report;
}

RecurrenceReport verify_recurrence(const Signature& sig, std::uint64_t range_lo, std::uint64_t range_hi,
                                   const RecurrenceOptions& options) {
  if (const auto* fwd = std::get_if<ForwardSignature>(&sig)) {
    if (fwd->exponents.empty()) throw InvalidArgument("empty forward signature");
    return verify_indexed(fwd->str(), fwd->modulus(), range_lo, range_hi,
                          [&](std::uint64_t i) { return forward_matches(Position{i}, fwd->exponents); }, options);
  }
  const auto& rev = std::get<ReverseSignature>(sig);
  if (rev.steps.empty()) throw InvalidArgument("empty reverse signature");
  return verify_indexed(rev.str(), rev.modulus(), range_lo, range_hi,
                        [&](std::uint64_t i) { return realize(Position{i}, rev).ok; }, options);
}

Position GeneratorSpec::element(std::uint64_t index) const {
  if (index == 0) throw InvalidArgument("generator indices start at 1");
  switch (kind) {
    case Generator::all_positions: return Position{index};
    case Generator::heads: return Position{Nat{4} * Nat{index - 1} + Nat{3}};
    case Generator::equivalents_of:
      return raise_equivalent(Position{seed}, static_cast<unsigned>(index - 1));
  }
  throw InvalidArgument("unknown generator");
}

std::string GeneratorSpec::str() const {
  switch (kind) {
    case Generator::all_positions: return "all";
    case Generator::heads: return "heads";
    case Generator::equivalents_of: return "equivalents:" + std::to_string(seed);
  }
  return "unknown";
}

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
  if (text == "all" || text == "all_positions") return {Generator::all_positions, 1};
  if (text == "heads") return {Generator::heads, 1};
  constexpr std::string_view prefix = "equivalents:";
  if (text.substr(0, prefix.size()) == prefix) {
    const unsigned seed = parse_unsigned(text.substr(prefix.size()), "equivalents seed");
    if (seed == 0) throw InvalidArgument("equivalents seed must be >= 1");
    return {Generator::equivalents_of, seed};
  }
  throw InvalidArgument("generator must be 'all', 'heads' or 'equivalents:<x>'");
}

SetRecurrenceReport verify_y_proportional_set(const GeneratorSpec& generator, std::size_t n, std::uint64_t windows,
                                              std::vector<unsigned> schedule, std::size_t max_n) {
  if (n == 0 || n > max_n) {
    throw InvalidArgument("signature length must be in [1, " + std::to_string(max_n) + "]");
  }
  if (windows < 2) throw InsufficientRange("need at least two windows");
  if (schedule.empty()) schedule.assign(n, 0);
  if (schedule.size() != n) throw InvalidArgument("equivalents schedule length must equal n");

  const std::uint64_t window = *Nat::pow(3, static_cast<unsigned>(n)).to_u64();
  const std::uint64_t total = window * windows;

  // Pattern per index, computed once; equivalents_of elements are generated
  // incrementally since each is E of the previous.
  std::vector<std::optional<ReverseSignature>> patterns(total + 1);
  Position element = generator.element(1);
  for (std::uint64_t i = 1; i <= total; ++i) {
    if (i > 1) {
      element = generator.kind == Generator::equivalents_of ? raise_equivalent(element) : generator.element(i);
    }
    patterns[i] = reverse_pattern(element, schedule);
  }

  SetRecurrenceReport report;
  report.generator = generator.str();
  report.n = n;
  report.windows = windows;
  report.schedule = schedule;

  std::map<std::string, ReverseSignature> first_window;
  for (std::uint64_t i = 1; i <= window; ++i) {
    if (patterns[i]) {
      first_window.emplace(patterns[i]->str(), *patterns[i]);
    } else {
      ++report.dead_ends_first_window;
    }
  }
  report.pass = !first_window.empty();
  for (std::uint64_t i = window + 1; i <= total && report.pass; ++i) {
    if (patterns[i] && !first_window.contains(patterns[i]->str())) report.pass = false;
  }
  for (const auto& [label, sig] : first_window) {
    auto rec = verify_indexed(generator.str() + " " + label, sig.modulus(), 1, total,
                              [&](std::uint64_t i) { return patterns[i] && *patterns[i] == sig; });
    report.pass = report.pass && rec.pass;
    report.patterns.push_back(std::move(rec));
  }
  return report;
}

}  // namespace collatz
