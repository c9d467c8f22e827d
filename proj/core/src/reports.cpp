#include "collatz/reports.hpp"

#include "collatz/checkpoint.hpp"

namespace collatz {

using nlohmann::json;

json to_json(const Nat& n) {
  if (const auto v = n.to_u64()) return *v;
  return n.str();
}

json to_json(const Position& p) { return to_json(p.value()); }

json rational_json(const Rational& r) { return to_string(r); }

json to_json(const StringChain& chain) {
  json elements = json::array();
  for (const auto& p : chain.elements) elements.push_back(to_json(p));
  return {{"elements", elements},
          {"tail", to_json(chain.tail())},
          {"head", to_json(chain.head())},
          {"length", chain.size()}};
}

json to_json(const LengthStats& stats, std::uint64_t min_support) {
  json histogram = json::object();
  for (const auto& [len, count] : stats.histogram) histogram[std::to_string(len)] = count;
  const Rational mean = stats.mean();
  return {{"chains", stats.chains},
          {"total_length", stats.total_length},
          {"mean_length", rational_json(mean)},
          {"mean_length_approx", mean.convert_to<double>()},
          {"histogram", histogram},
          {"continuation_min_support", min_support},
          {"continuation_ratios", stats.continuation_ratios(min_support)}};
}

json to_json(const PartitionReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"position", to_json(v.position)}, {"kind", std::string(to_string(v.kind))}});
  }
  return {{"scanned_bound", report.scanned_bound},
          {"strings_found", report.strings_found},
          {"element_count", report.element_count},
          {"violation_count", report.violations.size()},
          {"violations", violations},
          {"lengths", to_json(report.lengths)}};
}

json to_json(const StringStatsReport& report) {
  return {{"partition", to_json(report.partition)},
          {"by_head", to_json(report.by_head, 1000)},
          {"by_tail", to_json(report.by_tail, 1000)}};
}

json to_json(const RecurrenceReport& report) {
  json out = {{"signature", report.signature},
              {"window", to_json(report.window)},
              {"range_lo", report.range_lo},
              {"range_hi", report.range_hi},
              {"complete_windows", report.complete_windows},
              {"occurrence_count", report.occurrences.size()},
              {"occurrences", report.occurrences},
              {"verdict", report.pass ? "pass" : "fail"}};
  out["first_violation"] = report.first_violation ? json(*report.first_violation) : json(nullptr);
  return out;
}

json to_json(const SetRecurrenceReport& report) {
  json patterns = json::array();
  for (const auto& p : report.patterns) {
    // Occurrence lists for every pattern would dominate the document.
    json entry = to_json(p);
    const auto& occ = p.occurrences;
    entry["occurrences"] = std::vector<std::uint64_t>(occ.begin(), occ.begin() + static_cast<std::ptrdiff_t>(
                                                                                      std::min<std::size_t>(occ.size(), 8)));
    patterns.push_back(std::move(entry));
  }
  return {{"generator", report.generator},
          {"n", report.n},
          {"windows", report.windows},
          {"schedule", report.schedule},
          {"dead_ends_first_window", report.dead_ends_first_window},
          {"pattern_count", report.patterns.size()},
          {"patterns", patterns},
          {"verdict", report.pass ? "pass" : "fail"}};
}

json to_json(const IterationStats& s) {
  return {{"iteration", s.iteration},
          {"seeds", s.seeds},
          {"pigeons_added", s.pigeons_added},
          {"expected_pigeons", to_json(s.expected_pigeons)},
          {"max_position", to_json(s.max_position)},
          {"pigeon_hole_ratio", rational_json(s.pigeon_hole_ratio)},
          {"pigeon_hole_ratio_approx", s.pigeon_hole_ratio.convert_to<double>()},
          {"duplicates", s.duplicates},
          {"root_overlap", s.root_overlap},
          {"cap_hits", s.cap_hits},
          {"pruned_heads", s.pruned_heads},
          {"truncated_chains", s.truncated_chains}};
}

json to_json(const ParityTable& table) {
  json rows = json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    rows.push_back({{"bucket", r.bucket},
                    {"pigeons", r.pigeons.str()},
                    {"pigeonholes", r.pigeonholes.str()},
                    {"term", r.pigeons.str() + "/" + r.pigeonholes.str()},
                    {"ratio", rational_json(r.ratio)},
                    {"partial_sum", rational_json(table.partial_sums[i])}});
  }
  const Rational& total = table.partial_sums.back();
  return {{"depth", table.rows.size()},
          {"rows", rows},
          {"sum", rational_json(total)},
          {"sum_approx", total.convert_to<double>()},
          {"gap_to_one", Rational{1} - total > 0 ? (Rational{1} - total).convert_to<double>() : 0.0}};
}

json to_json(const AuditReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"pattern", r.pattern}, {"length", r.length}, {"count", r.count}, {"expected", r.expected}});
  }
  return {{"k", report.k}, {"depth", report.depth}, {"rows", rows}, {"verdict", report.pass ? "pass" : "fail"}};
}

json to_json(const CoverageReport& report) {
  return {{"bound", report.bound},
          {"covered", report.covered},
          {"hole_count", report.holes.size()},
          {"holes", report.holes}};
}

json to_json(const ConvergenceReport& report) {
  return {{"bound", report.bound},
          {"root_size", report.root_size},
          {"checked", report.checked},
          {"failure_count", report.failures.size()},
          {"failures", report.failures},
          {"total_steps", report.total_steps},
          {"max_steps_taken", report.max_steps_taken},
          {"argmax_steps", report.argmax_steps},
          {"max_excursion", to_json(report.max_excursion)},
          {"argmax_excursion", report.argmax_excursion}};
}

json to_json(const CycleRecord& cycle) {
  json members = json::array();
  json orbit = json::array();
  for (const auto& m : cycle.members) members.push_back(to_json(m));
  for (const auto& m : cycle.orbit) orbit.push_back(to_json(m));
  return {{"canonical", to_json(cycle.canonical())},
          {"length", cycle.length()},
          {"members", members},
          {"orbit", orbit}};
}

json to_json(const CycleSearchReport& report) {
  json cycles = json::array();
  for (const auto& c : report.cycles) cycles.push_back(to_json(c));
  return {{"p", report.p},
          {"bound", report.bound},
          {"cycle_count", report.cycles.size()},
          {"cycles", cycles},
          {"capped_seeds", report.capped_seeds}};
}

json tree_summary(const TreeState& state) {
  json stats = json::array();
  for (const auto& s : state.stats) stats.push_back(to_json(s));
  return {{"root_k", state.root_k},
          {"root_size", state.root_size},
          {"iteration", state.iteration},
          {"included_count", state.included.size()},
          {"covered_total", state.covered_total()},
          {"frontier_count", state.frontier.size()},
          {"ceiling", state.ceiling ? to_json(*state.ceiling) : json(nullptr)},
          {"stats", stats},
          {"warnings", state.warnings},
          {"state_hash", state_hash(state)}};
}

}  // namespace collatz
