#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "collatz/checkpoint.hpp"
#include "collatz/errors.hpp"

using namespace collatz;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("collatz_test_" + name)) {}
  ~TempFile() { std::filesystem::remove(path); }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

}  // namespace

TEST_CASE("empty state round-trips") {
  TempFile f("empty");
  const TreeState s = make_tree(1);
  save_checkpoint(s, f.path);
  const TreeState back = load_checkpoint(f.path);
  CHECK(back == s);
  CHECK(state_hash(back) == state_hash(s));
}

TEST_CASE("grown state round-trips, including large positions") {
  TempFile f("grown");
  TreeOptions o;
  o.dense_bound = 1 << 10;
  TreeState s = build_tree(2, 4, o);
  CHECK_FALSE(s.included.sparse_sorted().empty());
  save_checkpoint(s, f.path);
  const TreeState back = load_checkpoint(f.path);
  CHECK(back == s);
  CHECK(state_hash(back) == state_hash(s));

  // Resuming continues exactly where an uninterrupted run would be.
  TreeState resumed = back;
  grow_tree(resumed, 2, o);
  CHECK(resumed == build_tree(2, 6, o));
}

TEST_CASE("ceiling and warnings survive") {
  TempFile f("ceiling");
  TreeOptions o;
  o.ceiling = Nat::pow(2, 70);
  o.root_size = 10;
  const TreeState s = build_tree(2, 2, o);
  save_checkpoint(s, f.path);
  const TreeState back = load_checkpoint(f.path);
  CHECK(back.ceiling == s.ceiling);
  CHECK(back.warnings == s.warnings);
  CHECK(back == s);
}

TEST_CASE("damaged checkpoints are refused") {
  TempFile f("damaged");
  save_checkpoint(build_tree(1, 2), f.path);
  const std::string good = slurp(f.path);

  SUBCASE("bad magic") {
    spit(f.path, "x" + good);
    CHECK_THROWS_AS(load_checkpoint(f.path), VersionMismatch);
  }
  SUBCASE("corrupted header") {
    std::string bad = good;
    bad[bad.find('{') + 1] = '#';
    spit(f.path, bad);
    CHECK_THROWS_AS(load_checkpoint(f.path), VersionMismatch);
  }
  SUBCASE("future version") {
    std::string bad = good;
    const auto at = bad.find("\"version\":1");
    REQUIRE(at != std::string::npos);
    bad.replace(at, 11, "\"version\":2");
    spit(f.path, bad);
    CHECK_THROWS_WITH_AS(load_checkpoint(f.path), doctest::Contains("version"), VersionMismatch);
  }
  SUBCASE("tampered body") {
    std::string bad = good;
    bad.back() = bad.back() == '5' ? '7' : '5';
    spit(f.path, bad);
    CHECK_THROWS_AS(load_checkpoint(f.path), VersionMismatch);
  }
  SUBCASE("truncated") {
    spit(f.path, good.substr(0, good.size() - 4));
    CHECK_THROWS_AS(load_checkpoint(f.path), VersionMismatch);
  }
}

TEST_CASE("missing file is an operational error") {
  CHECK_THROWS_AS(load_checkpoint("/nonexistent/collatz.ckpt"), Error);
}
