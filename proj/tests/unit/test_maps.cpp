#include <doctest.h>

#include "collatz/errors.hpp"
#include "collatz/maps.hpp"
#include "oracles.hpp"

using namespace collatz;

namespace {

Position pos(std::uint64_t v) { return Position{v}; }

}  // namespace

TEST_CASE("classical and accelerated steps") {
  CHECK(collatz_step(Nat{6}) == Nat{3});
  CHECK(collatz_step(Nat{7}) == Nat{22});
  const auto s1 = accelerated_step(Nat{1});
  CHECK(s1.next == Nat{1});
  CHECK(s1.halvings == 2);
  const auto s5 = accelerated_step(Nat{5});
  CHECK(s5.next == Nat{1});
  CHECK(s5.halvings == 4);
  CHECK(accelerated_step(Nat{3}).next == Nat{5});
  CHECK_THROWS_AS(accelerated_step(Nat{4}), InvalidArgument);
  CHECK_THROWS_AS(accelerated_step(Nat{0}), InvalidArgument);
}

TEST_CASE("enumeration of the odd integers") {
  CHECK(to_position(Nat{1}) == pos(1));
  CHECK(to_position(Nat{7}) == pos(4));
  CHECK(to_odd(pos(4)) == Nat{7});
  CHECK_THROWS_AS(to_position(Nat{4}), InvalidArgument);
}

TEST_CASE("conjugate map on small positions") {
  CHECK(conjugate_step(pos(1)) == pos(1));
  CHECK(conjugate_step(pos(2)) == pos(3));
  CHECK(conjugate_step(pos(7)) == pos(3));
  CHECK(conjugate_step(pos(5)) == pos(4));
  for (std::uint64_t x = 1; x <= 20'000; ++x) {
    REQUIRE(conjugate_step(pos(x)) == pos(oracle::conjugate(x)));
  }
}

TEST_CASE("equivalents") {
  CHECK(raise_equivalent(pos(2)) == pos(7));
  CHECK(raise_equivalent(pos(6), 5) == pos(5803));
  const auto s = strip_equivalents(pos(27));
  CHECK(s.base == pos(2));
  CHECK(s.depth == 2);
  CHECK(strip_equivalents(pos(5)).depth == 0);

  const Position deep = raise_equivalent(pos(6), 100);
  CHECK_FALSE(deep.value().is_small());
  const auto back = strip_equivalents(deep);
  CHECK(back.base == pos(6));
  CHECK(back.depth == 100);
  CHECK(conjugate_step(deep) == conjugate_step(pos(6)));
}

TEST_CASE("interval exponent matches the halving count") {
  CHECK(interval_exponent(pos(1)) == 2);
  CHECK(interval_exponent(pos(2)) == 1);
  CHECK(interval_exponent(pos(7)) == 3);
  CHECK(interval_exponent(pos(3)) == 4);
  CHECK(interval_exponent(pos(5)) == 2);
  for (std::uint64_t x = 1; x <= 5'000; ++x) REQUIRE(interval_exponent(pos(x)) == oracle::z_class(x));
}

TEST_CASE("one-to-one step and its inverse") {
  CHECK(string_step(pos(2)) == pos(3));
  CHECK(string_step(pos(5)) == pos(4));
  CHECK(string_step(pos(4)) == pos(6));
  CHECK_THROWS_AS(string_step(pos(3)), NotInDomain);
  CHECK_THROWS_AS(string_step(pos(7)), NotInDomain);

  const auto p3 = string_preimage(pos(3));
  CHECK(p3.pre_image == pos(2));
  CHECK(p3.branch == Branch::two_thirds);
  const auto p4 = string_preimage(pos(4));
  CHECK(p4.pre_image == pos(5));
  CHECK(p4.branch == Branch::four_thirds);
  CHECK_THROWS_AS(string_preimage(pos(5)), NotInDomain);
}

TEST_CASE("classification") {
  const auto two = classify(pos(2));
  CHECK(two.residue == 2);
  CHECK(two.interval_exponent == 1);
  CHECK(two.role == Role::tail);
  CHECK(classify(pos(3)).role == Role::head);
  CHECK(classify(pos(4)).role == Role::interior);
  CHECK(classify(pos(11)).role == Role::tail_and_head);
  CHECK(classify(pos(1)).role == Role::trivial_loop);
  CHECK(classify(pos(27)).equivalent_depth == 2);
  CHECK(to_string(Role::tail_and_head) == "tail_and_head");
  CHECK(is_head(pos(7)));
  CHECK(is_tail(pos(8)));
  CHECK(inverse_residue(pos(9)) == 0);
}
