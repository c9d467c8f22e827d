#include "cli.hpp"

#include <cstdlib>
#include <exception>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "collatz/errors.hpp"

namespace collatz::cli {

namespace {

unsigned default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const unsigned long v = std::stoul(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

enum Flag : unsigned {
  f_x = 1u << 0,
  f_bound = 1u << 1,
  f_range = 1u << 2,
  f_k = 1u << 3,
  f_iterations = 1u << 4,
  f_depth = 1u << 5,
  f_steps = 1u << 6,
  f_set = 1u << 7,
  f_p = 1u << 8,
  f_max_steps = 1u << 9,
  f_sig = 1u << 10,
  f_tree = 1u << 11,
  f_root_size = 1u << 12,
  f_ceiling = 1u << 13,
};

struct CommandSpec {
  Command command;
  const char* help;
  unsigned flags;
};

constexpr CommandSpec kCommands[] = {
    {Command::map, "Classify one position and apply every map to it", f_x},
    {Command::string, "The string containing a position", f_x | f_max_steps},
    {Command::scan, "Check the string partition of [2..bound]", f_bound | f_max_steps},
    {Command::stats, "String length statistics over [2..bound]", f_bound | f_max_steps},
    {Command::ysig, "Realize a reverse signature from a start position", f_x | f_sig},
    {Command::zsig, "Forward exponent signature of a position", f_x | f_steps},
    {Command::recur, "Check that a signature, or every pattern of a generator, recurs periodically",
     f_range | f_sig | f_set},
    {Command::tree, "Grow the inverse tree from a root interval", f_k | f_iterations | f_tree | f_ceiling |
                                                                      f_root_size | f_max_steps},
    {Command::parity, "Pigeon to pigeonhole ratios per bucket", f_depth},
    {Command::audit, "Count y-patterns among the first strings of the root", f_k | f_depth},
    {Command::coverage, "Holes of the inverse tree below a bound, cross-checked by forward runs",
     f_k | f_iterations | f_bound | f_ceiling | f_root_size | f_max_steps},
    {Command::converge, "Forward runs from [1..bound] into the root interval", f_bound | f_k | f_max_steps},
    {Command::pcycles, "Cycles of the accelerated 3n+p map with minimum member <= bound",
     f_bound | f_p | f_max_steps},
};

void add_options(CLI::App& sub, unsigned flags, RunConfig& c, std::string& format) {
  sub.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  sub.add_option("--workers", c.workers, "Worker threads (default: $COLLATZ_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);

  if (flags & f_x) sub.add_option("--x", c.x, "Position (decimal, any size)");
  if (flags & f_bound) sub.add_option("--bound", c.bound, "Upper bound");
  if (flags & f_range) {
    sub.add_option("--lo", c.lo, "First index (default 1)");
    sub.add_option("--hi", c.hi, "Last index");
  }
  if (flags & f_k) sub.add_option("--k,--root-k", c.k, "Root interval is [1..3^k]");
  if (flags & f_iterations) sub.add_option("--iterations", c.iterations, "Tree iterations");
  if (flags & f_depth) sub.add_option("--depth", c.depth, "Number of buckets / pattern length");
  if (flags & f_steps) sub.add_option("--steps", c.steps, "Number of forward steps");
  if (flags & f_set) {
    sub.add_option("--generator", c.generator, "all | heads | equivalents:<x>");
    sub.add_option("--n", c.n, "Pattern length");
    sub.add_option("--windows", c.windows, "Index range in windows of 3^n");
    sub.add_option("--schedule", c.schedule, "Equivalents raised before each reverse step")->delimiter(',');
  }
  if (flags & f_p) sub.add_option("--p", c.p, "Shift p with p mod 6 in {1,5}");
  if (flags & f_max_steps) sub.add_option("--max-steps", c.max_steps, "Per-walk step cap");
  if (flags & f_sig) sub.add_option("--sig", c.signature, "Signature, e.g. y:0.2,0.1 or z:1,4");
  if (flags & f_ceiling) sub.add_option("--ceiling", c.ceiling, "Drop chain elements above this value");
  if (flags & f_root_size) sub.add_option("--root-size", c.root_size, "Root size other than 3^k");
  if (flags & f_tree) {
    sub.add_option("--checkpoint", c.checkpoint_path, "Write a checkpoint after the last iteration");
    sub.add_option("--resume", c.resume_path, "Continue from a checkpoint");
    sub.add_option("--stats-jsonl", c.stats_jsonl_path, "Append per-iteration stats as JSON lines");
  }
}

}  // namespace

ParseResult parse(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Experiments on Collatz strings, proportionality and the inverse tree", "collatz-strings"};
  app.set_version_flag("--version", COLLATZ_VERSION_STRING);
  app.require_subcommand(1);

  RunConfig config;
  config.workers = default_workers();
  std::string format = "json";

  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& spec : kCommands) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(spec.command)), spec.help);
    add_options(*sub, spec.flags, config, format);
    subs.emplace_back(sub, spec.command);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {};
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return {};
  } catch (const CLI::CallForVersion&) {
    out << COLLATZ_VERSION_STRING << '\n';
    return {};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return {std::nullopt, kExitUsage};
  }

  for (const auto& [sub, command] : subs) {
    if (sub->parsed()) config.command = command;
  }
  config.format = *parse_format(format);
  return {config, kExitPass};
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = parse(args, out, err);
  if (!parsed.config) return parsed.exit_status;
  try {
    const Report report = run(*parsed.config);
    out << render(report, parsed.config->format);
    return report.exit_status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOperational;
  }
}

}  // namespace collatz::cli
