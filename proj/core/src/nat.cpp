#include "collatz/nat.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "collatz/errors.hpp"

namespace collatz {

namespace {

constexpr u128 kU128Max = ~static_cast<u128>(0);

BigInt widen(u128 v) {
  BigInt b = static_cast<std::uint64_t>(v >> 64);
  b <<= 64;
  b |= static_cast<std::uint64_t>(v);
  return b;
}

unsigned countr_zero_u128(u128 v) {
  const auto lo = static_cast<std::uint64_t>(v);
  if (lo != 0) return static_cast<unsigned>(std::countr_zero(lo));
  return 64U + static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(v >> 64)));
}

}  // namespace

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Nat::Nat(const BigInt& v) {
  if (v.sign() < 0) throw InvalidArgument("Nat cannot hold a negative value");
  *this = normalized(v);
}

Nat Nat::normalized(BigInt v) {
  Nat n;
  if (boost::multiprecision::msb(v | 1) < 128) {
    n.small_ = (static_cast<u128>(static_cast<std::uint64_t>(v >> 64)) << 64) |
               static_cast<u128>(static_cast<std::uint64_t>(v & std::numeric_limits<std::uint64_t>::max()));
  } else {
    n.big_ = std::make_shared<const BigInt>(std::move(v));
  }
  return n;
}

Nat Nat::parse(std::string_view decimal) {
  if (decimal.empty()) throw InvalidArgument("empty number");
  u128 acc = 0;
  bool fits = true;
  for (char c : decimal) {
    if (c < '0' || c > '9') throw InvalidArgument("not a decimal natural number: " + std::string(decimal));
    if (fits) {
      u128 next = 0;
      if (__builtin_mul_overflow(acc, static_cast<u128>(10), &next) ||
          __builtin_add_overflow(next, static_cast<u128>(c - '0'), &next)) {
        fits = false;
      } else {
        acc = next;
      }
    }
  }
  if (fits) return from_u128(acc);
  return normalized(BigInt(std::string(decimal)));
}

Nat Nat::pow(std::uint64_t base, unsigned exponent) {
  Nat result{1};
  Nat b{base};
  while (exponent != 0) {
    if ((exponent & 1U) != 0) result = result * b;
    exponent >>= 1U;
    if (exponent != 0) b = b * b;
  }
  return result;
}

std::optional<std::uint64_t> Nat::to_u64() const noexcept {
  if (!is_small() || small_ > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(small_);
}

BigInt Nat::to_big() const { return is_small() ? widen(small_) : *big_; }

std::string Nat::str() const { return is_small() ? to_string(small_) : big_->str(); }

double Nat::to_double() const {
  return is_small() ? static_cast<double>(small_) : big_->convert_to<double>();
}

bool Nat::is_even() const noexcept {
  return is_small() ? (small_ & 1U) == 0 : !boost::multiprecision::bit_test(*big_, 0);
}

std::uint32_t Nat::mod(std::uint32_t m) const {
  if (is_small()) return static_cast<std::uint32_t>(small_ % m);
  return static_cast<std::uint32_t>(*big_ % m);
}

unsigned Nat::countr_zero() const {
  if (is_zero()) throw InvalidArgument("countr_zero of zero");
  if (is_small()) return countr_zero_u128(small_);
  return static_cast<unsigned>(boost::multiprecision::lsb(*big_));
}

std::size_t Nat::bit_width() const {
  if (is_small()) {
    const auto hi = static_cast<std::uint64_t>(small_ >> 64);
    if (hi != 0) return 64 + std::bit_width(hi);
    return std::bit_width(static_cast<std::uint64_t>(small_));
  }
  return boost::multiprecision::msb(*big_) + 1;
}

std::size_t Nat::hash() const noexcept {
  if (is_small()) {
    const auto lo = static_cast<std::uint64_t>(small_);
    const auto hi = static_cast<std::uint64_t>(small_ >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL;
    h ^= hi + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto limb = big_->backend().limbs(), end = limb + big_->backend().size(); limb != end; ++limb) {
    h ^= static_cast<std::size_t>(*limb);
    h *= 0x100000001b3ULL;
  }
  return h;
}

Nat Nat::operator>>(unsigned shift) const {
  if (is_small()) return from_u128(shift >= 128 ? 0 : small_ >> shift);
  return normalized(*big_ >> shift);
}

Nat Nat::operator<<(unsigned shift) const {
  if (is_small() && (small_ == 0 || (shift < 128 && bit_width() + shift <= 128))) {
    return from_u128(small_ << shift);
  }
  return normalized(to_big() << shift);
}

Nat operator+(const Nat& a, const Nat& b) {
  if (a.is_small() && b.is_small()) {
    u128 r = 0;
    if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Nat::from_u128(r);
  }
  return Nat::normalized(a.to_big() + b.to_big());
}

Nat operator-(const Nat& a, const Nat& b) {
  if (a < b) throw InvalidArgument("Nat subtraction would go negative");
  if (a.is_small()) return Nat::from_u128(a.small_ - b.small_);
  return Nat::normalized(a.to_big() - b.to_big());
}

Nat operator*(const Nat& a, const Nat& b) {
  if (a.is_small() && b.is_small()) {
    u128 r = 0;
    if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Nat::from_u128(r);
  }
  return Nat::normalized(a.to_big() * b.to_big());
}

Nat operator/(const Nat& a, std::uint64_t d) {
  if (d == 0) throw InvalidArgument("division by zero");
  if (a.is_small()) return Nat::from_u128(a.small_ / d);
  return Nat::normalized(*a.big_ / d);
}

bool operator==(const Nat& a, const Nat& b) noexcept {
  if (a.is_small() != b.is_small()) return false;
  return a.is_small() ? a.small_ == b.small_ : *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Nat& a, const Nat& b) noexcept {
  if (a.is_small() && b.is_small()) return a.small_ <=> b.small_;
  if (a.is_small()) return std::strong_ordering::less;
  if (b.is_small()) return std::strong_ordering::greater;
  const int c = a.big_->compare(*b.big_);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace collatz
