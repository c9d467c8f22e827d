#include "collatz/maps.hpp"

#include "collatz/errors.hpp"

namespace collatz {

namespace {

const Nat kOne{1};
const Nat kTwo{2};
const Nat kThree{3};
const Nat kFour{4};

}  // namespace

std::string_view to_string(Role r) noexcept {
  switch (r) {
    case Role::tail: return "tail";
    case Role::head: return "head";
    case Role::interior: return "interior";
    case Role::tail_and_head: return "tail_and_head";
    case Role::trivial_loop: return "trivial_loop";
  }
  return "unknown";
}

Nat collatz_step(const Nat& n) {
  if (n.is_zero()) throw InvalidArgument("collatz_step requires n >= 1");
  if (n.is_even()) return n >> 1;
  return kThree * n + kOne;
}

AcceleratedStep accelerated_step(const Nat& n) {
  if (n.is_zero() || n.is_even()) throw InvalidArgument("accelerated_step requires odd n, got " + n.str());
  const Nat m = kThree * n + kOne;
  const unsigned j = m.countr_zero();
  return {m >> j, j};
}

Position to_position(const Nat& odd) {
  if (odd.is_zero() || odd.is_even()) throw InvalidArgument("to_position requires odd n, got " + odd.str());
  return Position{(odd + kOne) >> 1};
}

Nat to_odd(const Position& x) { return (x.value() << 1) - kOne; }

Position conjugate_step(const Position& x) {
  const Position base = strip_equivalents(x).base;
  const Nat& b = base.value();
  if (b.is_even()) {
    // 2+2m -> 3+3m
    const Nat m = (b - kTwo) >> 1;
    return Position{kThree + kThree * m};
  }
  // 1+4m -> 1+3m
  const Nat m = (b - kOne) >> 2;
  return Position{kOne + kThree * m};
}

Position raise_equivalent(const Position& x, unsigned count) {
  Nat v = x.value();
  for (unsigned i = 0; i < count; ++i) v = kFour * v - kOne;
  return Position{std::move(v)};
}

StrippedPosition strip_equivalents(const Position& x) {
  Nat v = x.value();
  unsigned depth = 0;
  while (v.mod(4) == 3) {
    v = (v + kOne) >> 2;
    ++depth;
  }
  return {Position{std::move(v)}, depth};
}

unsigned interval_exponent(const Position& x) {
  const auto [base, depth] = strip_equivalents(x);
  return base.value().is_even() ? 2 * depth + 1 : 2 * depth + 2;
}

std::uint32_t inverse_residue(const Position& x) { return x.value().mod(3); }

bool is_head(const Position& x) { return x.value().mod(4) == 3; }

bool is_tail(const Position& x) { return x.value().mod(3) == 2; }

Position string_step(const Position& x) {
  if (is_head(x)) throw NotInDomain("position " + x.str() + " is a head (3 mod 4); string_step undefined");
  const Nat& v = x.value();
  if (v.is_even()) return Position{kThree + kThree * ((v - kTwo) >> 1)};
  return Position{kOne + kThree * ((v - kOne) >> 2)};
}

Preimage string_preimage(const Position& x) {
  const Nat& v = x.value();
  switch (v.mod(3)) {
    case 0:  // 3m+3 -> 2m+2
      return {Position{kTwo * (v / 3)}, Branch::two_thirds};
    case 1:  // 3m+1 -> 4m+1
      return {Position{kFour * (v / 3) + kOne}, Branch::four_thirds};
    default:
      throw NotInDomain("position " + x.str() + " is 2 mod 3; no one-to-one preimage");
  }
}

Classification classify(const Position& x) {
  const auto [base, depth] = strip_equivalents(x);
  Classification c;
  c.residue = inverse_residue(x);
  c.equivalent_depth = depth;
  c.interval_exponent = base.value().is_even() ? 2 * depth + 1 : 2 * depth + 2;
  if (x.value() == kOne) {
    c.role = Role::trivial_loop;
  } else if (is_head(x) && is_tail(x)) {
    c.role = Role::tail_and_head;
  } else if (is_head(x)) {
    c.role = Role::head;
  } else if (is_tail(x)) {
    c.role = Role::tail;
  } else {
    c.role = Role::interior;
  }
  return c;
}

}  // namespace collatz
