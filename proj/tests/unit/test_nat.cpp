#include <doctest.h>

#include <limits>

#include "collatz/errors.hpp"
#include "collatz/nat.hpp"

using collatz::BigInt;
using collatz::Nat;

namespace {

BigInt two_pow(unsigned e) { return BigInt{1} << e; }

}  // namespace

TEST_CASE("small values stay on the fast path") {
  const Nat a{123456789};
  CHECK(a.is_small());
  CHECK(a.str() == "123456789");
  CHECK(a.to_u64() == 123456789u);
  CHECK((a * Nat{1000}).str() == "123456789000");
  CHECK(Nat{7} - Nat{7} == Nat{0});
  CHECK(Nat{10} / 3 == Nat{3});
  CHECK(Nat{10}.mod(3) == 1u);
  CHECK(Nat{48}.countr_zero() == 4u);
  CHECK(Nat{48}.bit_width() == 6u);
}

TEST_CASE("addition past 2^128 promotes") {
  const Nat max = Nat::from_u128(~collatz::u128{0});
  CHECK(max.is_small());
  const Nat next = max + Nat{1};
  CHECK_FALSE(next.is_small());
  CHECK(next.to_big() == two_pow(128));
  CHECK(next > max);
  CHECK(next - Nat{1} == max);
  CHECK((next - Nat{1}).is_small());
}

TEST_CASE("multiplication overflow promotes and matches BigInt") {
  const Nat a = Nat::from_u128(collatz::u128{1} << 100);
  const Nat b = a * a;
  CHECK_FALSE(b.is_small());
  CHECK(b.to_big() == two_pow(200));
  CHECK((b >> 150) == Nat::from_u128(collatz::u128{1} << 50));
  CHECK((Nat{3} << 200).to_big() == BigInt{3} * two_pow(200));
}

TEST_CASE("pow and parse agree") {
  CHECK(Nat::pow(3, 4) == Nat{81});
  const Nat big = Nat::pow(3, 100);
  CHECK(big.str() == "515377520732011331036461129765621272702107522001");
  CHECK(Nat::parse(big.str()) == big);
  CHECK(Nat::parse("00042") == Nat{42});
  CHECK_THROWS_AS(Nat::parse(""), collatz::InvalidArgument);
  CHECK_THROWS_AS(Nat::parse("12a"), collatz::InvalidArgument);
  CHECK_THROWS_AS(Nat::parse("-1"), collatz::InvalidArgument);
}

TEST_CASE("subtraction below zero is rejected") {
  CHECK_THROWS_AS(Nat{1} - Nat{2}, collatz::InvalidArgument);
}

TEST_CASE("ordering across representations") {
  const Nat small{std::numeric_limits<std::uint64_t>::max()};
  const Nat big = Nat::pow(2, 130);
  CHECK(small < big);
  CHECK(big.to_u64() == std::nullopt);
  CHECK(std::hash<Nat>{}(Nat::parse(big.str())) == std::hash<Nat>{}(big));
  CHECK(big.is_even());
  CHECK((big + Nat{1}).mod(4) == 1u);
}
