#include <doctest.h>

#include "collatz/parity.hpp"

using namespace collatz;

namespace {

// Closed form of the partial sums: S_n = 1 - Fib(n+3) / 2^(n+1).
Rational closed_form(std::size_t n) {
  BigInt a = 0;
  BigInt b = 1;
  for (std::size_t i = 0; i < n + 3; ++i) {
    BigInt c = a + b;
    a = b;
    b = c;
  }
  return Rational{1} - Rational{a, BigInt{1} << (n + 1)};
}

}  // namespace

TEST_CASE("first terms") {
  const auto t = parity_table(5);
  REQUIRE(t.rows.size() == 5);
  const Rational expected[] = {{1, 4}, {1, 8}, {2, 16}, {3, 32}, {5, 64}};
  const int pigeons[] = {1, 1, 2, 3, 5};
  const int holes[] = {4, 8, 16, 32, 64};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(t.rows[i].bucket == i + 1);
    CHECK(t.rows[i].ratio == expected[i]);
    CHECK(t.rows[i].pigeons == pigeons[i]);
    CHECK(t.rows[i].pigeonholes == holes[i]);
  }
  CHECK(t.partial_sums.back() == Rational{43, 64});
  CHECK(to_string(t.partial_sums.back()) == "43/64");
}

TEST_CASE("partial sums follow the closed form") {
  const auto t = parity_table(120);
  for (std::size_t n = 1; n <= 120; ++n) REQUIRE(t.partial_sums[n - 1] == closed_form(n));
  const double gap = (Rational{1} - t.partial_sums[79]).convert_to<double>();
  CHECK(gap > 0);
  CHECK(gap < 1e-6);
}

TEST_CASE("rational rendering") {
  CHECK(to_string(Rational{6, 4}) == "3/2");
  CHECK(to_string(Rational{2}) == "2/1");
}
