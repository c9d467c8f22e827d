#pragma once

#include <cstddef>
#include <vector>

#include "collatz/nat.hpp"
#include "collatz/strings.hpp"

namespace collatz {

/// One bucket of the pigeon/pigeonhole series, both counts in units of N.
struct ParityRow {
  std::size_t bucket = 0;  // 1-based
  BigInt pigeons;          // Fibonacci(bucket)
  BigInt pigeonholes;      // 4 * 2^(bucket-1)
  Rational ratio;
};

struct ParityTable {
  std::vector<ParityRow> rows;
  std::vector<Rational> partial_sums;  // exact, partial_sums[i] = sum of rows[0..i]
};

/// First `depth` terms of 1/4 + 1/8 + 2/16 + 3/32 + 5/64 + ... in exact arithmetic.
ParityTable parity_table(std::size_t depth);

/// "p/q" rendering of an exact rational.
std::string to_string(const Rational& r);

}  // namespace collatz
