#include "collatz/run.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "collatz/checkpoint.hpp"
#include "collatz/errors.hpp"
#include "collatz/reports.hpp"

#ifndef COLLATZ_VERSION_STRING
#define COLLATZ_VERSION_STRING "0.0.0"
#endif

namespace collatz {

namespace {

using nlohmann::json;

struct Outcome {
  json payload;
  std::optional<Table> table;
  std::uint64_t violation_count = 0;
  bool claim_failed = false;
};

template <typename T>
const T& require(const std::optional<T>& value, std::string_view flag, Command command) {
  if (!value) {
    throw UsageError("'" + std::string(to_string(command)) + "' requires --" + std::string(flag));
  }
  return *value;
}

Nat parse_nat_flag(const std::string& text, std::string_view flag) {
  try {
    return Nat::parse(text);
  } catch (const InvalidArgument&) {
    throw UsageError("--" + std::string(flag) + " must be a decimal natural number, got '" + text + "'");
  }
}

std::string nat_cell(const Nat& n) { return n.str(); }

std::string join(const std::vector<Nat>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += sep;
    out += values[i].str();
  }
  return out;
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::fixed << v;
  return os.str();
}

TreeOptions tree_options(const RunConfig& c) {
  TreeOptions o;
  o.max_steps = c.max_steps.value_or(kDefaultMaxSteps);
  o.workers = c.workers;
  if (c.ceiling) o.ceiling = parse_nat_flag(*c.ceiling, "ceiling");
  o.root_size = c.root_size;
  return o;
}

Outcome do_map(const RunConfig& c) {
  const Position x{parse_nat_flag(*c.x, "x")};
  const auto cls = classify(x);
  const auto stripped = strip_equivalents(x);
  const Nat odd = to_odd(x);
  const auto accel = accelerated_step(odd);
  json payload = {{"x", to_json(x)},
                  {"odd", to_json(odd)},
                  {"F", to_json(conjugate_step(x))},
                  {"y", cls.residue},
                  {"z", cls.interval_exponent},
                  {"equivalent_depth", cls.equivalent_depth},
                  {"base", to_json(stripped.base)},
                  {"role", std::string(to_string(cls.role))},
                  {"accelerated", {{"next", to_json(accel.next)}, {"halvings", accel.halvings}}}};
  payload["string_step"] = is_head(x) ? json(nullptr) : to_json(string_step(x));
  if (is_tail(x)) {
    payload["preimage"] = nullptr;
  } else {
    const auto pre = string_preimage(x);
    payload["preimage"] = {{"value", to_json(pre.pre_image)}, {"branch", static_cast<unsigned>(pre.branch)}};
  }
  return {payload, std::nullopt, 0, false};
}

Outcome do_string(const RunConfig& c) {
  const StringChain chain = string_of(Position{parse_nat_flag(*c.x, "x")}, c.max_steps.value_or(kDefaultMaxSteps));
  Table t{{"index", "position", "role"}, {}};
  for (std::size_t i = 0; i < chain.size(); ++i) {
    t.rows.push_back({std::to_string(i), chain.elements[i].str(), std::string(to_string(classify(chain.elements[i]).role))});
  }
  return {to_json(chain), t, 0, false};
}

Outcome do_scan(const RunConfig& c) {
  const auto report = scan_strings(*c.bound, {c.max_steps.value_or(kDefaultMaxSteps), c.workers});
  Table t{{"length", "chains"}, {}};
  for (const auto& [len, count] : report.lengths.histogram) t.rows.push_back({std::to_string(len), std::to_string(count)});
  return {to_json(report), t, report.violations.size(), !report.clean()};
}

Outcome do_stats(const RunConfig& c) {
  const auto report = string_stats(*c.bound, {c.max_steps.value_or(kDefaultMaxSteps), c.workers});
  Table t{{"length", "head_seeded", "tail_seeded"}, {}};
  std::map<std::size_t, std::pair<std::uint64_t, std::uint64_t>> merged;
  for (const auto& [len, count] : report.by_head.histogram) merged[len].first = count;
  for (const auto& [len, count] : report.by_tail.histogram) merged[len].second = count;
  for (const auto& [len, counts] : merged) {
    t.rows.push_back({std::to_string(len), std::to_string(counts.first), std::to_string(counts.second)});
  }
  return {to_json(report), t, report.partition.violations.size(), !report.partition.clean()};
}

Outcome do_ysig(const RunConfig& c) {
  const Position x{parse_nat_flag(*c.x, "x")};
  const auto sig = ReverseSignature::parse(*c.signature);
  const auto r = realize(x, sig);
  json payload = {{"x", to_json(x)},
                  {"signature", sig.str()},
                  {"modulus", to_json(sig.modulus())},
                  {"final", to_json(r.final)},
                  {"ok", r.ok}};
  payload["replay"] = r.ok ? to_json(replay_forward(r.final, sig)) : json(nullptr);
  return {payload, std::nullopt, 0, false};
}

Outcome do_zsig(const RunConfig& c) {
  const Position x{parse_nat_flag(*c.x, "x")};
  const auto sig = forward_signature(x, *c.steps);
  return {{{"x", to_json(x)},
           {"signature", sig.str()},
           {"exponents", sig.exponents},
           {"modulus", to_json(sig.modulus())}},
          std::nullopt,
          0,
          false};
}

Outcome do_recur(const RunConfig& c) {
  if (c.signature) {
    const auto sig = parse_signature(*c.signature);
    const auto report = verify_recurrence(sig, c.lo.value_or(1), *c.hi, {c.workers});
    Table t{{"occurrence"}, {}};
    for (auto o : report.occurrences) t.rows.push_back({std::to_string(o)});
    return {to_json(report), t, report.pass ? 0U : 1U, !report.pass};
  }
  const auto gen = GeneratorSpec::parse(*c.generator);
  const auto report = verify_y_proportional_set(gen, *c.n, *c.windows, c.schedule);
  Table t{{"pattern", "first", "occurrences", "verdict"}, {}};
  std::uint64_t failed = 0;
  for (const auto& p : report.patterns) {
    failed += p.pass ? 0 : 1;
    t.rows.push_back({p.signature, p.occurrences.empty() ? "-" : std::to_string(p.occurrences.front()),
                      std::to_string(p.occurrences.size()), p.pass ? "pass" : "fail"});
  }
  return {to_json(report), t, failed, !report.pass};
}

void stream_stats(const std::optional<std::string>& path, const IterationStats& stats) {
  if (!path) return;
  std::ofstream out(*path, std::ios::app);
  if (!out) throw Error("cannot open stats stream: " + *path);
  out << to_json(stats).dump() << '\n';
}

Outcome do_tree(const RunConfig& c) {
  const TreeOptions options = tree_options(c);
  TreeState state = c.resume_path ? load_checkpoint(*c.resume_path) : make_tree(*c.k, options);
  const std::size_t iterations = c.iterations.value_or(0);
  for (std::size_t i = 0; i < iterations; ++i) {
    grow_tree(state, 1, options);
    stream_stats(c.stats_jsonl_path, state.stats.back());
  }
  if (c.checkpoint_path) save_checkpoint(state, *c.checkpoint_path);

  std::uint64_t duplicates = 0;
  Table t{{"iteration", "seeds", "pigeons_added", "expected", "ratio_to_expected", "max_position", "duplicates",
           "root_overlap"},
          {}};
  for (const auto& s : state.stats) {
    duplicates += s.duplicates;
    t.rows.push_back({std::to_string(s.iteration), std::to_string(s.seeds), std::to_string(s.pigeons_added),
                      nat_cell(s.expected_pigeons),
                      fixed(static_cast<double>(s.pigeons_added) / s.expected_pigeons.to_double()),
                      nat_cell(s.max_position), std::to_string(s.duplicates), std::to_string(s.root_overlap)});
  }
  return {tree_summary(state), t, duplicates, duplicates != 0};
}

Outcome do_parity(const RunConfig& c) {
  const auto table = parity_table(*c.depth);
  Table t{{"bucket", "term", "ratio", "partial_sum"}, {}};
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    t.rows.push_back({std::to_string(r.bucket), r.pigeons.str() + "N/" + r.pigeonholes.str() + "N",
                      to_string(r.ratio), to_string(table.partial_sums[i])});
  }
  return {to_json(table), t, 0, false};
}

Outcome do_audit(const RunConfig& c) {
  const auto report = bucket_audit(*c.k, *c.depth);
  Table t{{"length", "pattern", "count", "expected"}, {}};
  std::uint64_t bad = 0;
  for (const auto& r : report.rows) {
    bad += r.count == r.expected ? 0 : 1;
    t.rows.push_back({std::to_string(r.length), r.pattern, std::to_string(r.count), std::to_string(r.expected)});
  }
  return {to_json(report), t, bad, !report.pass};
}

Outcome do_coverage(const RunConfig& c) {
  const TreeOptions options = tree_options(c);
  const std::uint64_t bound = *c.bound;
  TreeState state = make_tree(*c.k, options);

  // Forward oracle: iteration at which each position should be included.
  std::vector<std::optional<std::size_t>> depth(bound + 1);
  Nat oracle_peak{0};
  for (std::uint64_t x = 2; x <= bound; ++x) {
    const auto d = forward_inclusion_depth(Position{x}, state.root_size);
    depth[x] = d.depth;
    if (d.max_excursion > oracle_peak) oracle_peak = d.max_excursion;
  }

  json per_iteration = json::array();
  Table t{{"iteration", "holes", "oracle_holes", "agree"}, {}};
  std::uint64_t disagreements = 0;
  CoverageReport cov;
  for (std::size_t i = 1; i <= *c.iterations; ++i) {
    grow_tree(state, 1, options);
    cov = coverage_report(state, bound);
    std::vector<std::uint64_t> oracle_holes;
    for (std::uint64_t x = 2; x <= bound; ++x) {
      if (x > state.root_size && (!depth[x] || *depth[x] > i)) oracle_holes.push_back(x);
    }
    const bool agree = oracle_holes == cov.holes;
    disagreements += agree ? 0 : 1;
    per_iteration.push_back({{"iteration", i},
                             {"hole_count", cov.holes.size()},
                             {"oracle_hole_count", oracle_holes.size()},
                             {"agree", agree}});
    t.rows.push_back({std::to_string(i), std::to_string(cov.holes.size()), std::to_string(oracle_holes.size()),
                      agree ? "yes" : "no"});
  }
  json payload = to_json(cov);
  payload["root_k"] = state.root_k;
  payload["iterations"] = *c.iterations;
  payload["ceiling"] = state.ceiling ? to_json(*state.ceiling) : json(nullptr);
  payload["oracle_max_excursion"] = to_json(oracle_peak);
  payload["ceiling_sufficient"] = !state.ceiling || oracle_peak <= *state.ceiling;
  payload["per_iteration"] = per_iteration;
  payload["cross_check"] = disagreements == 0 ? "agree" : "disagree";
  return {payload, t, disagreements, disagreements != 0};
}

Outcome do_converge(const RunConfig& c) {
  const auto report = forward_convergence_check(*c.bound, c.k.value_or(1), c.max_steps.value_or(100'000), c.workers);
  return {to_json(report), std::nullopt, report.failures.size(), !report.failures.empty()};
}

Outcome do_pcycles(const RunConfig& c) {
  const ShiftParam p{*c.p};
  const auto report = cycle_search(p, *c.bound, c.max_steps.value_or(1'000'000), c.workers);
  Table t{{"p", "canonical", "length", "members"}, {}};
  std::uint64_t broken = 0;
  for (const auto& cyc : report.cycles) {
    broken += cycle_is_closed(cyc, p) ? 0 : 1;
    t.rows.push_back({std::to_string(report.p), cyc.canonical().str(), std::to_string(cyc.length()), join(cyc.members, ' ')});
  }
  json payload = to_json(report);
  payload["closure"] = broken == 0 ? "closed" : "broken";
  return {payload, t, broken, broken != 0};
}

std::string csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array() && j.size() > 16) {
    out.emplace_back(prefix, "[" + std::to_string(j.size()) + " entries]");
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::map: return "map";
    case Command::string: return "string";
    case Command::scan: return "scan";
    case Command::stats: return "stats";
    case Command::ysig: return "ysig";
    case Command::zsig: return "zsig";
    case Command::recur: return "recur";
    case Command::tree: return "tree";
    case Command::parity: return "parity";
    case Command::audit: return "audit";
    case Command::coverage: return "coverage";
    case Command::converge: return "converge";
    case Command::pcycles: return "pcycles";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (auto c : {Command::map, Command::string, Command::scan, Command::stats, Command::ysig, Command::zsig,
                 Command::recur, Command::tree, Command::parity, Command::audit, Command::coverage,
                 Command::converge, Command::pcycles}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<OutputFormat> parse_format(std::string_view name) noexcept {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "table") return OutputFormat::table;
  return std::nullopt;
}

void validate(const RunConfig& c) {
  const Command cmd = c.command;
  auto need_x = [&](std::uint64_t min) {
    const Nat x = parse_nat_flag(require(c.x, "x", cmd), "x");
    if (x < Nat{min}) {
      throw UsageError("--x must be >= " + std::to_string(min) + (min == 2 ? " (1 is the trivial loop)" : ""));
    }
  };
  auto need_min = [&](const auto& value, std::string_view flag, std::uint64_t min) {
    if (static_cast<std::uint64_t>(require(value, flag, cmd)) < min) {
      throw UsageError("--" + std::string(flag) + " must be >= " + std::to_string(min));
    }
  };
  if (c.workers < 1) throw UsageError("--workers must be >= 1");
  if (c.max_steps && *c.max_steps < 1) throw UsageError("--max-steps must be >= 1");
  if (c.ceiling) (void)parse_nat_flag(*c.ceiling, "ceiling");

  switch (cmd) {
    case Command::map: need_x(1); break;
    case Command::string: need_x(2); break;
    case Command::scan:
    case Command::stats: need_min(c.bound, "bound", 2); break;
    case Command::ysig:
      need_x(1);
      try {
        (void)ReverseSignature::parse(require(c.signature, "sig", cmd));
      } catch (const InvalidArgument& e) {
        throw UsageError(std::string("--sig: ") + e.what());
      }
      break;
    case Command::zsig:
      need_x(2);
      need_min(c.steps, "steps", 1);
      break;
    case Command::recur:
      if (c.signature.has_value() == c.generator.has_value()) {
        throw UsageError("'recur' takes exactly one of --sig or --generator");
      }
      if (c.signature) {
        Signature sig;
        try {
          sig = parse_signature(*c.signature);
        } catch (const InvalidArgument& e) {
          throw UsageError(std::string("--sig: ") + e.what());
        }
        const Nat modulus = std::visit([](const auto& s) { return s.modulus(); }, sig);
        const std::uint64_t lo = c.lo.value_or(1);
        const std::uint64_t hi = require(c.hi, "hi", cmd);
        if (lo < 1 || hi < lo || !modulus.to_u64() || hi - lo + 1 < 2 * *modulus.to_u64()) {
          throw UsageError("--lo/--hi must span at least two windows of " + modulus.str());
        }
      } else {
        try {
          (void)GeneratorSpec::parse(*c.generator);
        } catch (const InvalidArgument& e) {
          throw UsageError(std::string("--generator: ") + e.what());
        }
        need_min(c.n, "n", 1);
        if (*c.n > kDefaultMaxSignatureLength) {
          throw UsageError("--n must be <= " + std::to_string(kDefaultMaxSignatureLength));
        }
        need_min(c.windows, "windows", 2);
        if (!c.schedule.empty() && c.schedule.size() != *c.n) throw UsageError("--schedule needs exactly n entries");
      }
      break;
    case Command::tree:
      if (!c.resume_path) need_min(c.k, "k", 1);
      if (!c.resume_path) need_min(c.iterations, "iterations", 1);
      if (c.k && *c.k > 40) throw UsageError("--k must be <= 40");
      break;
    case Command::parity: need_min(c.depth, "depth", 1); break;
    case Command::audit:
      need_min(c.k, "k", 1);
      need_min(c.depth, "depth", 1);
      if (*c.k > 20) throw UsageError("--k must be <= 20 for audit");
      if (*c.depth > *c.k) throw UsageError("--depth must be <= --k (root is only y-proportional up to k steps)");
      break;
    case Command::coverage:
      need_min(c.k, "k", 1);
      need_min(c.iterations, "iterations", 1);
      need_min(c.bound, "bound", 1);
      break;
    case Command::converge:
      need_min(c.bound, "bound", 2);
      if (c.k && *c.k > 40) throw UsageError("--root-k must be <= 40");
      break;
    case Command::pcycles:
      need_min(c.bound, "bound", 1);
      try {
        (void)ShiftParam{require(c.p, "p", cmd)};
      } catch (const InvalidArgument& e) {
        throw UsageError(std::string("--p: ") + e.what());
      }
      break;
  }
}

json config_echo(const RunConfig& c) {
  json j = {{"command", std::string(to_string(c.command))}};
  auto put = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("x", c.x);
  put("bound", c.bound);
  put("lo", c.lo);
  put("hi", c.hi);
  put("k", c.k);
  put("iterations", c.iterations);
  put("depth", c.depth);
  put("steps", c.steps);
  put("n", c.n);
  put("windows", c.windows);
  put("p", c.p);
  put("max_steps", c.max_steps);
  put("sig", c.signature);
  put("generator", c.generator);
  put("ceiling", c.ceiling);
  put("root_size", c.root_size);
  if (!c.schedule.empty()) j["schedule"] = c.schedule;
  return j;
}

Report run(const RunConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  switch (config.command) {
    case Command::map: outcome = do_map(config); break;
    case Command::string: outcome = do_string(config); break;
    case Command::scan: outcome = do_scan(config); break;
    case Command::stats: outcome = do_stats(config); break;
    case Command::ysig: outcome = do_ysig(config); break;
    case Command::zsig: outcome = do_zsig(config); break;
    case Command::recur: outcome = do_recur(config); break;
    case Command::tree: outcome = do_tree(config); break;
    case Command::parity: outcome = do_parity(config); break;
    case Command::audit: outcome = do_audit(config); break;
    case Command::coverage: outcome = do_coverage(config); break;
    case Command::converge: outcome = do_converge(config); break;
    case Command::pcycles: outcome = do_pcycles(config); break;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  Report report;
  report.envelope = {{"tool", "collatz-strings"},
                     {"tool_version", COLLATZ_VERSION_STRING},
                     {"command", std::string(to_string(config.command))},
                     {"config", config_echo(config)},
                     {"payload", std::move(outcome.payload)},
                     {"violations", {{"count", outcome.violation_count}, {"claim_failed", outcome.claim_failed}}},
                     {"runtime", {{"wall_time_s", elapsed.count()}, {"workers", config.workers}}}};
  report.table = std::move(outcome.table);
  report.exit_status = outcome.claim_failed ? kExitClaimViolated : kExitPass;
  return report;
}

std::string render(const Report& report, OutputFormat format) {
  if (format == OutputFormat::json) return report.envelope.dump(2) + "\n";

  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
  if (report.table) {
    headers = report.table->headers;
    rows = report.table->rows;
  } else {
    headers = {"key", "value"};
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(report.payload(), "", flat);
    for (auto& [k, v] : flat) rows.push_back({k, v});
  }

  std::ostringstream os;
  if (format == OutputFormat::csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
      os << '\n';
    };
    line(headers);
    for (const auto& r : rows) line(r);
    return os.str();
  }

  std::vector<std::size_t> width(headers.size(), 0);
  for (std::size_t i = 0; i < headers.size(); ++i) width[i] = headers[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
    }
    os << '\n';
  };
  line(headers);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& r : rows) line(r);
  const auto& v = report.envelope.at("violations");
  os << "\nviolations: " << v.at("count").get<std::uint64_t>()
     << (v.at("claim_failed").get<bool>() ? " (claim failed)" : "") << '\n';
  return os.str();
}

}  // namespace collatz
