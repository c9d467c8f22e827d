#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "collatz/errors.hpp"
#include "collatz/run.hpp"

using namespace collatz;

namespace {

RunConfig config(Command cmd) {
  RunConfig c;
  c.command = cmd;
  return c;
}

}  // namespace

TEST_CASE("command and format names") {
  for (const char* name : {"map", "string", "scan", "stats", "ysig", "zsig", "recur", "tree", "parity", "audit",
                           "coverage", "converge", "pcycles"}) {
    const auto cmd = parse_command(name);
    REQUIRE(cmd.has_value());
    CHECK(to_string(*cmd) == name);
  }
  CHECK_FALSE(parse_command("frobnicate").has_value());
  CHECK(parse_format("csv") == OutputFormat::csv);
  CHECK_FALSE(parse_format("xml").has_value());
}

TEST_CASE("map payload") {
  RunConfig c = config(Command::map);
  c.x = "2";
  const Report r = run(c);
  CHECK(r.exit_status == kExitPass);
  const auto& p = r.payload();
  CHECK(p["F"] == 3);
  CHECK(p["y"] == 2);
  CHECK(p["z"] == 1);
  CHECK(p["role"] == "tail");
  CHECK(r.envelope["tool"] == "collatz-strings");
  CHECK(r.envelope["config"]["x"] == "2");
  CHECK(r.envelope["violations"]["count"] == 0);
}

TEST_CASE("positions beyond 64 bits serialize as strings") {
  RunConfig c = config(Command::map);
  c.x = "340282366920938463463374607431768211457";  // 2^128 + 1
  const Report r = run(c);
  CHECK(r.payload()["x"].is_string());
  CHECK(r.payload()["F"].is_string());
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(validate(config(Command::map)), UsageError);
  RunConfig c = config(Command::string);
  c.x = "1";
  CHECK_THROWS_AS(validate(c), UsageError);
  c.x = "abc";
  CHECK_THROWS_AS(validate(c), UsageError);

  RunConfig recur = config(Command::recur);
  recur.signature = "y:0.1";
  recur.hi = 5;
  CHECK_THROWS_AS(validate(recur), UsageError);
  recur.hi = 6;
  CHECK_NOTHROW(validate(recur));
  recur.generator = "all";
  CHECK_THROWS_AS(validate(recur), UsageError);

  RunConfig audit = config(Command::audit);
  audit.k = 2;
  audit.depth = 3;
  CHECK_THROWS_AS(validate(audit), UsageError);

  RunConfig p = config(Command::pcycles);
  p.bound = 10;
  p.p = 3;
  CHECK_THROWS_AS(validate(p), UsageError);

  RunConfig w = config(Command::parity);
  w.depth = 3;
  w.workers = 0;
  CHECK_THROWS_AS(validate(w), UsageError);
}

TEST_CASE("a failed claim exits with status 2") {
  RunConfig c = config(Command::scan);
  c.bound = 50;
  c.max_steps = 2;
  const Report r = run(c);
  CHECK(r.exit_status == kExitClaimViolated);
  CHECK(r.envelope["violations"]["claim_failed"] == true);
  CHECK(r.envelope["violations"]["count"].get<int>() > 0);
}

TEST_CASE("payload does not depend on worker count") {
  for (Command cmd : {Command::scan, Command::converge, Command::pcycles}) {
    RunConfig a = config(cmd);
    a.bound = 3'000;
    a.p = 5;
    if (cmd != Command::pcycles) a.p.reset();
    RunConfig b = a;
    b.workers = 5;
    const Report ra = run(a);
    const Report rb = run(b);
    CHECK(ra.payload().dump() == rb.payload().dump());
    CHECK(ra.envelope["config"] == rb.envelope["config"]);
  }
}

TEST_CASE("rendering") {
  RunConfig c = config(Command::parity);
  c.depth = 3;
  const Report r = run(c);
  const std::string csv = render(r, OutputFormat::csv);
  CHECK(csv.rfind("bucket,term,ratio,partial_sum\n", 0) == 0);
  CHECK(csv.find("3,2N/16N,1/8,1/2") != std::string::npos);
  const std::string json = render(r, OutputFormat::json);
  CHECK(nlohmann::json::parse(json)["payload"]["sum"] == "1/2");

  RunConfig m = config(Command::map);
  m.x = "7";
  const std::string flat = render(run(m), OutputFormat::csv);
  CHECK(flat.find("F,3") != std::string::npos);
}

TEST_CASE("tree checkpoint, resume and stats stream") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto ckpt = dir / "collatz_run_tree.ckpt";
  const auto jsonl = dir / "collatz_run_tree.jsonl";
  std::filesystem::remove(jsonl);

  RunConfig first = config(Command::tree);
  first.k = 2;
  first.iterations = 2;
  first.checkpoint_path = ckpt.string();
  first.stats_jsonl_path = jsonl.string();
  run(first);

  RunConfig resume = config(Command::tree);
  resume.resume_path = ckpt.string();
  resume.iterations = 2;
  const Report resumed = run(resume);

  RunConfig straight = config(Command::tree);
  straight.k = 2;
  straight.iterations = 4;
  const Report direct = run(straight);
  CHECK(resumed.payload()["state_hash"] == direct.payload()["state_hash"]);
  CHECK(resumed.payload()["iteration"] == 4);

  std::ifstream in(jsonl);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    CHECK(nlohmann::json::parse(line).contains("pigeons_added"));
    ++lines;
  }
  CHECK(lines == 2);
  std::filesystem::remove(ckpt);
  std::filesystem::remove(jsonl);
}

TEST_CASE("coverage command cross-checks the forward oracle") {
  RunConfig c = config(Command::coverage);
  c.k = 2;
  c.bound = 500;
  c.iterations = 12;
  c.ceiling = "1048576";
  const Report r = run(c);
  CHECK(r.exit_status == kExitPass);
  CHECK(r.payload()["cross_check"] == "agree");
  CHECK(r.payload()["hole_count"] == 0);
}
