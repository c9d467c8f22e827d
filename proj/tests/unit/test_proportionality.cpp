#include <doctest.h>

#include "collatz/errors.hpp"
#include "collatz/proportionality.hpp"
#include "oracles.hpp"

using namespace collatz;

TEST_CASE("signature literals round-trip") {
  const auto z = ForwardSignature::parse("z:1,4");
  CHECK(z.exponents == std::vector<unsigned>{1, 4});
  CHECK(z.exponent_sum() == 5);
  CHECK(z.modulus() == Nat{32});
  CHECK(z.str() == "z:1,4");

  const auto y = ReverseSignature::parse("y:0.2,0.1,5.2,0.1");
  REQUIRE(y.length() == 4);
  CHECK(y.steps[2] == ReverseStep{5, Branch::four_thirds});
  CHECK(y.modulus() == Nat{81});
  CHECK(y.str() == "y:0.2,0.1,5.2,0.1");
  CHECK(to_string(parse_signature("y:0.1")) == "y:0.1");
  CHECK(std::holds_alternative<ForwardSignature>(parse_signature("z:2")));

  for (const char* bad : {"", "y:", "y:0.3", "y:1", "z:", "z:0", "x:1", "z:1,,2", "y:a.1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_signature(bad), InvalidArgument);
  }
}

TEST_CASE("worked reverse example") {
  const auto sig = ReverseSignature::parse("y:0.2,0.1,5.2,0.1");
  const auto r = realize(Position{7}, sig);
  CHECK(r.ok);
  CHECK(r.final == Position{5158});
  CHECK(replay_forward(r.final, sig) == Position{7});

  const auto rec = verify_recurrence(sig, 1, 8100);
  CHECK(rec.pass);
  REQUIRE(rec.occurrences.size() == 100);
  for (std::size_t i = 0; i < rec.occurrences.size(); ++i) CHECK(rec.occurrences[i] == 7 + 81 * i);
}

TEST_CASE("realization stops at a residue without a preimage") {
  const auto r = realize(Position{2}, ReverseSignature::parse("y:0.1"));
  CHECK_FALSE(r.ok);
  CHECK(r.final == Position{2});
  CHECK_FALSE(realize(Position{3}, ReverseSignature::parse("y:0.2")).ok);
}

TEST_CASE("reverse pattern under a schedule") {
  const auto p = reverse_pattern(Position{7}, {0, 0, 5, 0});
  REQUIRE(p.has_value());
  CHECK(p->str() == "y:0.2,0.1,5.2,0.1");
  CHECK_FALSE(reverse_pattern(Position{5}, {0}).has_value());
}

TEST_CASE("forward signature matches halving counts") {
  CHECK(forward_signature(Position{7}, 3).str() == "z:3,4,2");
  CHECK_THROWS_AS(forward_signature(Position{1}, 2), TrivialLoop);
  for (std::uint64_t x = 2; x < 500; ++x) {
    const auto sig = forward_signature(Position{x}, 4);
    std::uint64_t y = x;
    for (unsigned z : sig.exponents) {
      REQUIRE(z == oracle::z_class(y));
      y = oracle::conjugate(y);
    }
  }
}

TEST_CASE("forward signature recurrence, brute force") {
  // Occurrences of the signature of x by direct enumeration, compared with the
  // library's verdict.
  for (std::uint64_t x : {2u, 5u, 6u, 12u, 23u}) {
    const auto sig = forward_signature(Position{x}, 3);
    const std::uint64_t m = *sig.modulus().to_u64();
    std::vector<std::uint64_t> brute;
    for (std::uint64_t i = 1; i <= 4 * m; ++i) {
      std::uint64_t y = i;
      bool same = true;
      for (unsigned z : sig.exponents) {
        if (oracle::z_class(y) != z) {
          same = false;
          break;
        }
        y = oracle::conjugate(y);
      }
      if (same) brute.push_back(i);
    }
    const auto rec = verify_recurrence(sig, 1, 4 * m);
    CAPTURE(x);
    CHECK(rec.pass);
    CHECK(rec.occurrences == brute);
    REQUIRE(brute.size() == 4);
    CHECK(brute[0] <= m);
    CHECK(brute[1] - brute[0] == m);
  }
}

TEST_CASE("indexed recurrence verdicts") {
  CHECK(verify_indexed("every third", Nat{3}, 1, 30, [](std::uint64_t i) { return i % 3 == 2; }).pass);
  CHECK_FALSE(verify_indexed("extra", Nat{3}, 1, 30, [](std::uint64_t i) { return i % 3 == 2 || i == 9; }).pass);
  CHECK_FALSE(verify_indexed("late", Nat{3}, 1, 30, [](std::uint64_t i) { return i >= 4 && i % 3 == 1; }).pass);
  CHECK_FALSE(verify_indexed("stops", Nat{3}, 1, 30, [](std::uint64_t i) { return i < 20 && i % 3 == 0; }).pass);
  CHECK_THROWS_AS(verify_indexed("short", Nat{10}, 1, 19, [](std::uint64_t) { return true; }), InsufficientRange);
}

TEST_CASE("generators") {
  CHECK(GeneratorSpec::parse("all").element(5) == Position{5});
  CHECK(GeneratorSpec::parse("heads").element(3) == Position{11});
  const auto eq = GeneratorSpec::parse("equivalents:6");
  CHECK(eq.element(1) == Position{6});
  CHECK(eq.element(3) == Position{91});
  CHECK(eq.str() == "equivalents:6");
  CHECK_THROWS_AS(GeneratorSpec::parse("odd"), InvalidArgument);
}

TEST_CASE("y-proportional sets") {
  for (const char* gen : {"all", "heads", "equivalents:1", "equivalents:2", "equivalents:6"}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      CAPTURE(gen);
      CAPTURE(n);
      const auto report = verify_y_proportional_set(GeneratorSpec::parse(gen), n, 4);
      CHECK(report.pass);
      const std::uint64_t window = *Nat::pow(3, static_cast<unsigned>(n)).to_u64();
      CHECK(report.patterns.size() == (std::size_t{1} << n));
      CHECK(report.patterns.size() + report.dead_ends_first_window == window);
    }
  }
  const auto scheduled = verify_y_proportional_set(GeneratorSpec::parse("all"), 3, 3, {1, 0, 2});
  CHECK(scheduled.pass);
  CHECK_THROWS_AS(verify_y_proportional_set(GeneratorSpec::parse("all"), 7, 3), InvalidArgument);
  CHECK_THROWS_AS(verify_y_proportional_set(GeneratorSpec::parse("all"), 2, 3, {1}), InvalidArgument);
}
