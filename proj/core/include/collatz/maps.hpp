#pragma once

// Maps and classifiers on the odd integers and on their enumeration.
//
// Two number spaces appear here. Plain `Nat` arguments are integers n of the
// classical map. `Position` values live in the enumerated space, where the
// odd integers 1, 3, 5, ... are relabelled 1, 2, 3, ...; the conjugate map
// and everything built on it (strings, signatures, the reverse tree) works on
// positions.

#include <compare>
#include <cstdint>
#include <functional>
#include <string_view>

#include "collatz/nat.hpp"

namespace collatz {

/// An element of the enumerated space; always >= 1.
class Position {
 public:
  Position() = default;
  explicit Position(Nat v) : value_(std::move(v)) {}
  explicit Position(std::uint64_t v) : value_(v) {}

  [[nodiscard]] const Nat& value() const noexcept { return value_; }
  [[nodiscard]] std::string str() const { return value_.str(); }

  friend bool operator==(const Position&, const Position&) = default;
  friend std::strong_ordering operator<=>(const Position& a, const Position& b) noexcept {
    return a.value_ <=> b.value_;
  }

 private:
  Nat value_{1};
};

/// Which one-to-one inverse branch applies: 3m+3 -> 2m+2 or 3m+1 -> 4m+1.
enum class Branch : std::uint8_t { two_thirds = 1, four_thirds = 2 };

enum class Role : std::uint8_t { tail, head, interior, tail_and_head, trivial_loop };

std::string_view to_string(Role r) noexcept;

struct AcceleratedStep {
  Nat next;
  unsigned halvings = 0;  // exponent of the largest power of 2 dividing 3n+1
};

struct StrippedPosition {
  Position base;       // never congruent to 3 mod 4
  unsigned depth = 0;  // number of E applications removed
};

struct Preimage {
  Position pre_image;
  Branch branch = Branch::two_thirds;
};

struct Classification {
  std::uint32_t residue = 0;  // position mod 3
  unsigned interval_exponent = 0;
  unsigned equivalent_depth = 0;
  Role role = Role::interior;
};

// Classical integer space.
Nat collatz_step(const Nat& n);
/// Odd-to-odd step (3n+1)/2^j. Throws InvalidArgument on even or zero n.
AcceleratedStep accelerated_step(const Nat& n);

// Enumeration of the odd integers.
/// (n+1)/2 for odd n; throws InvalidArgument for even n.
Position to_position(const Nat& odd);
/// 2x-1.
Nat to_odd(const Position& x);

/// The conjugate map on positions, evaluated from its closed residue form.
Position conjugate_step(const Position& x);

/// Applies x -> 4x-1 `count` times.
Position raise_equivalent(const Position& x, unsigned count = 1);
/// Removes every lower equivalent: inverse of raise_equivalent with maximal depth.
StrippedPosition strip_equivalents(const Position& x);

/// z such that x lies in the residue class of modulus 2^z mapped through F_z.
unsigned interval_exponent(const Position& x);
/// x mod 3; selects the inverse branch (0 -> two_thirds, 1 -> four_thirds, 2 -> none).
std::uint32_t inverse_residue(const Position& x);

/// True when x has a lower equivalent (x = 3 mod 4), i.e. x heads a string.
bool is_head(const Position& x);
/// True when x has no one-to-one preimage (x = 2 mod 3).
bool is_tail(const Position& x);

/// One-to-one forward step 2+2m -> 3+3m, 1+4m -> 1+3m. Throws NotInDomain on heads.
Position string_step(const Position& x);
/// Inverse of string_step. Throws NotInDomain when x = 2 mod 3.
Preimage string_preimage(const Position& x);

Classification classify(const Position& x);

}  // namespace collatz

template <>
struct std::hash<collatz::Position> {
  std::size_t operator()(const collatz::Position& p) const noexcept { return p.value().hash(); }
};
