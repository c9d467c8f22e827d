#pragma once

// Experiment runner behind the command-line tool: one validated config in,
// one report envelope out.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace collatz {

enum class Command : std::uint8_t {
  map, string, scan, stats, ysig, zsig, recur, tree, parity, audit, coverage, converge, pcycles
};
enum class OutputFormat : std::uint8_t { json, csv, table };

std::string_view to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;
std::optional<OutputFormat> parse_format(std::string_view name) noexcept;

inline constexpr int kExitPass = 0;
inline constexpr int kExitOperational = 1;
inline constexpr int kExitClaimViolated = 2;
inline constexpr int kExitUsage = 64;

/// Environment variable read for the default worker count.
inline constexpr const char* kWorkersEnv = "COLLATZ_WORKERS";

struct RunConfig {
  Command command = Command::map;
  OutputFormat format = OutputFormat::json;
  unsigned workers = 1;

  std::optional<std::string> x;  // decimal, may exceed 64 bits
  std::optional<std::uint64_t> bound;
  std::optional<std::uint64_t> lo;
  std::optional<std::uint64_t> hi;
  std::optional<unsigned> k;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> windows;
  std::optional<std::uint64_t> p;
  std::optional<std::size_t> max_steps;
  std::optional<std::string> signature;
  std::optional<std::string> generator;
  std::vector<unsigned> schedule;
  std::optional<std::string> ceiling;
  std::optional<std::uint64_t> root_size;
  std::optional<std::string> checkpoint_path;
  std::optional<std::string> resume_path;
  std::optional<std::string> stats_jsonl_path;
};

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  nlohmann::json envelope;  // tool, version, command, config, payload, violations, runtime
  std::optional<Table> table;
  int exit_status = kExitPass;

  [[nodiscard]] const nlohmann::json& payload() const { return envelope.at("payload"); }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws UsageError when the config violates the command's preconditions.
void validate(const RunConfig& config);

/// Validates, dispatches and wraps the result. Usage problems throw
/// UsageError; library errors propagate.
Report run(const RunConfig& config);

/// Renders in the configured format (json: the whole envelope).
std::string render(const Report& report, OutputFormat format);

/// Config echo: every set parameter, without worker count or paths that do
/// not affect the payload.
nlohmann::json config_echo(const RunConfig& config);

}  // namespace collatz
