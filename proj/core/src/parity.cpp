#include "collatz/parity.hpp"

#include "collatz/errors.hpp"

namespace collatz {

ParityTable parity_table(std::size_t depth) {
  if (depth < 1) throw InvalidArgument("parity depth must be >= 1");
  ParityTable table;
  BigInt fib_prev = 0;
  BigInt fib = 1;
  BigInt holes = 4;
  Rational sum = 0;
  for (std::size_t r = 1; r <= depth; ++r) {
    ParityRow row{r, fib, holes, Rational{fib, holes}};
    sum += row.ratio;
    table.rows.push_back(std::move(row));
    table.partial_sums.push_back(sum);
    BigInt next = fib + fib_prev;
    fib_prev = fib;
    fib = std::move(next);
    holes <<= 1;
  }
  return table;
}

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace collatz
