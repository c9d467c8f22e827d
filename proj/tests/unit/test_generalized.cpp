#include <doctest.h>

#include <set>

#include "collatz/errors.hpp"
#include "collatz/generalized.hpp"
#include "collatz/maps.hpp"

using namespace collatz;

namespace {

std::vector<std::uint64_t> as_u64(const std::vector<Nat>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& n : v) out.push_back(*n.to_u64());
  return out;
}

using V = std::vector<std::uint64_t>;

}  // namespace

TEST_CASE("shift parameter") {
  CHECK(ShiftParam{1}.value() == 1);
  CHECK(ShiftParam{5}.value() == 5);
  CHECK(ShiftParam{11}.value() == 11);
  CHECK_THROWS_AS(ShiftParam{3}, InvalidArgument);
  CHECK_THROWS_AS(ShiftParam{9}, InvalidArgument);
  CHECK_THROWS_AS(ShiftParam{4}, InvalidArgument);
}

TEST_CASE("p-steps") {
  const ShiftParam five{5};
  const auto a = accelerated_p_step(Nat{1}, five);
  CHECK(a.next == Nat{1});
  CHECK(a.halvings == 3);
  const auto b = accelerated_p_step(Nat{19}, five);
  CHECK(b.next == Nat{31});
  CHECK(b.halvings == 1);
  CHECK_THROWS_AS(accelerated_p_step(Nat{2}, five), InvalidArgument);

  const ShiftParam one{1};
  for (std::uint64_t n = 1; n < 20'000; n += 2) {
    const auto p = accelerated_p_step(Nat{n}, one);
    const auto q = accelerated_step(Nat{n});
    REQUIRE(p.next == q.next);
    REQUIRE(p.halvings == q.halvings);
  }
}

TEST_CASE("trajectories") {
  const auto t = p_trajectory(Nat{3}, ShiftParam{1});
  CHECK(as_u64(t.path) == V{3, 5, 1});
  REQUIRE(t.cycle.has_value());
  CHECK(as_u64(t.cycle->members) == V{1});
  CHECK_FALSE(t.cap_exceeded);

  const auto capped = p_trajectory(Nat{27}, ShiftParam{1}, 3);
  CHECK(capped.cap_exceeded);
  CHECK_FALSE(capped.cycle.has_value());
}

TEST_CASE("cycle records") {
  const ShiftParam five{5};
  const auto c = cycle_through(Nat{31}, five);
  CHECK(as_u64(c.members) == V{19, 31, 49});
  CHECK(as_u64(c.orbit) == V{19, 31, 49});
  CHECK(c.canonical() == Nat{19});
  CHECK(cycle_is_closed(c, five));

  CycleRecord broken = c;
  broken.orbit[1] = Nat{33};
  CHECK_FALSE(cycle_is_closed(broken, five));
}

TEST_CASE("cycle search") {
  const auto p1 = cycle_search(ShiftParam{1}, 20'000);
  REQUIRE(p1.cycles.size() == 1);
  CHECK(as_u64(p1.cycles[0].members) == V{1});
  CHECK(p1.capped_seeds.empty());

  const auto p5 = cycle_search(ShiftParam{5}, 1'000, 1'000'000, 3);
  std::set<std::uint64_t> canon;
  for (const auto& c : p5.cycles) canon.insert(*c.canonical().to_u64());
  CHECK(canon.count(1));
  CHECK(canon.count(5));
  CHECK(canon.count(19));
  CHECK(cycle_search(ShiftParam{5}, 1'000, 1'000'000, 1).cycles == p5.cycles);
}
