// Golden-file tests for the command-line tool.
//
// Each case is a pair in this directory: <name>.cmd holds the arguments on
// one line, <name>.out the expected output. JSON output is compared without
// the runtime block; the exit status is appended as a final "# exit N" line.
// Set COLLATZ_UPDATE_GOLDEN=1 to rewrite the .out files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kDir{COLLATZ_GOLDEN_DIR};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  const auto first = s.find_first_not_of(" \t");
  return first == std::string::npos ? "" : s.substr(first);
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string normalized_run(const std::string& args) {
  std::vector<std::string> argv{"collatz-strings"};
  for (auto& a : split(args)) argv.push_back(std::move(a));
  std::ostringstream out;
  std::ostringstream err;
  const int status = collatz::cli::main(argv, out, err);

  std::string text = out.str();
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (!doc.is_discarded() && doc.is_object()) {
    nlohmann::json copy = doc;
    copy.erase("runtime");
    text = copy.dump(2) + "\n";
  }
  return text + "# exit " + std::to_string(status) + "\n";
}

std::vector<fs::path> cases() {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(kDir)) {
    if (entry.path().extension() == ".cmd") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("golden outputs") {
  const bool update = std::getenv("COLLATZ_UPDATE_GOLDEN") != nullptr;
  const auto all = cases();
  REQUIRE_FALSE(all.empty());
  for (const auto& cmd : all) {
    const std::string args = trim(slurp(cmd));
    const std::string actual = normalized_run(args);
    fs::path expected_path = cmd;
    expected_path.replace_extension(".out");
    CAPTURE(args);
    if (update) {
      std::ofstream(expected_path, std::ios::binary | std::ios::trunc) << actual;
      continue;
    }
    REQUIRE(fs::exists(expected_path));
    CHECK(actual == slurp(expected_path));
  }
}

TEST_CASE("every documented example has a golden file") {
  std::set<std::string> covered;
  for (const auto& cmd : cases()) covered.insert(trim(slurp(cmd)));

  std::istringstream readme(slurp(kDir.parent_path().parent_path() / "README.md"));
  const std::string prompt = "$ collatz-strings ";
  std::size_t examples = 0;
  for (std::string line; std::getline(readme, line);) {
    if (line.rfind(prompt, 0) != 0) continue;
    ++examples;
    const std::string args = trim(line.substr(prompt.size()));
    CAPTURE(args);
    CHECK(covered.count(args) == 1);
  }
  CHECK(examples > 0);
}
