#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "collatz/run.hpp"

namespace collatz::cli {

struct ParseResult {
  std::optional<RunConfig> config;  // empty when help was printed or parsing failed
  int exit_status = kExitPass;
};

/// Parses argv (program name first). Help and usage errors are written to
/// `out` / `err` respectively.
ParseResult parse(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Full tool: parse, run, render. Returns the process exit status.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collatz::cli
