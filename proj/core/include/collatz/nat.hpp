#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace collatz {

using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

/// Non-negative integer of unbounded size.
///
/// Values below 2^128 live inline in a fixed-width word and every operation
/// on that path is overflow-checked; a result that does not fit is promoted
/// to a heap-held BigInt. Instances are immutable, so copies share the big
/// representation and are safe to hand to other threads.
class Nat {
 public:
  Nat() noexcept = default;
  Nat(std::uint64_t v) noexcept : small_(v) {}  // NOLINT: implicit by design of the numeric API
  explicit Nat(const BigInt& v);

  static Nat from_u128(u128 v) noexcept {
    Nat n;
    n.small_ = v;
    return n;
  }
  static Nat parse(std::string_view decimal);
  static Nat pow(std::uint64_t base, unsigned exponent);

  [[nodiscard]] bool is_small() const noexcept { return big_ == nullptr; }
  [[nodiscard]] u128 small() const noexcept { return small_; }
  [[nodiscard]] std::optional<std::uint64_t> to_u64() const noexcept;
  [[nodiscard]] BigInt to_big() const;
  [[nodiscard]] std::string str() const;
  [[nodiscard]] double to_double() const;

  [[nodiscard]] bool is_zero() const noexcept { return is_small() && small_ == 0; }
  [[nodiscard]] bool is_even() const noexcept;
  /// Remainder modulo a small modulus (m > 0).
  [[nodiscard]] std::uint32_t mod(std::uint32_t m) const;
  /// Number of trailing zero bits; the value must be non-zero.
  [[nodiscard]] unsigned countr_zero() const;
  [[nodiscard]] std::size_t bit_width() const;
  [[nodiscard]] std::size_t hash() const noexcept;

  Nat operator>>(unsigned shift) const;
  Nat operator<<(unsigned shift) const;

  friend Nat operator+(const Nat& a, const Nat& b);
  /// Requires a >= b.
  friend Nat operator-(const Nat& a, const Nat& b);
  friend Nat operator*(const Nat& a, const Nat& b);
  /// Truncating division by a small non-zero divisor.
  friend Nat operator/(const Nat& a, std::uint64_t d);

  friend bool operator==(const Nat& a, const Nat& b) noexcept;
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) noexcept;

 private:
  static Nat normalized(BigInt v);

  u128 small_ = 0;
  std::shared_ptr<const BigInt> big_;
};

std::string to_string(u128 v);

}  // namespace collatz

template <>
struct std::hash<collatz::Nat> {
  std::size_t operator()(const collatz::Nat& n) const noexcept { return n.hash(); }
};
