#pragma once

// Mapping signatures and their recurrence laws.
//
// A forward signature lists the interval exponents z_1..z_n met along n
// conjugate steps; it is claimed to recur exactly once in every window of
// 2^(z_1+..+z_n) consecutive positions. A reverse signature lists, per
// one-to-one inverse step, how many equivalents were taken first and which
// branch applied; it is claimed to recur exactly once per 3^n positions.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "collatz/maps.hpp"

namespace collatz {

struct ForwardSignature {
  std::vector<unsigned> exponents;

  [[nodiscard]] unsigned exponent_sum() const noexcept;
  [[nodiscard]] Nat modulus() const;  // 2^sum
  /// Compact literal, e.g. "z:1,4".
  [[nodiscard]] std::string str() const;
  static ForwardSignature parse(std::string_view literal);
  friend bool operator==(const ForwardSignature&, const ForwardSignature&) = default;
};

struct ReverseStep {
  unsigned equivalents = 0;
  Branch branch = Branch::two_thirds;
  friend bool operator==(const ReverseStep&, const ReverseStep&) = default;
};

struct ReverseSignature {
  std::vector<ReverseStep> steps;

  [[nodiscard]] std::size_t length() const noexcept { return steps.size(); }
  [[nodiscard]] Nat modulus() const;  // 3^n
  /// Compact literal "y:e.b,e.b,..." (equivalents.branch), e.g. "y:0.2,0.1,5.2,0.1".
  [[nodiscard]] std::string str() const;
  static ReverseSignature parse(std::string_view literal);
  friend bool operator==(const ReverseSignature&, const ReverseSignature&) = default;
};

using Signature = std::variant<ForwardSignature, ReverseSignature>;

/// Parses either literal form ("z:..." or "y:...").
Signature parse_signature(std::string_view literal);
std::string to_string(const Signature& sig);

/// Interval exponents of x, F(x), ... for `steps` steps. Throws TrivialLoop for x = 1.
ForwardSignature forward_signature(const Position& x, std::size_t steps);

struct Realization {
  Position final;
  bool ok = false;
};

/// Applies each step of `sig` (equivalents, then the matching inverse branch).
/// ok = false at the first residue that does not admit the recorded branch;
/// `final` is then the position reached so far.
Realization realize(const Position& x, const ReverseSignature& sig);

/// Undoes a successful realization: string_step then strip the recorded
/// equivalents, last step first. Returns the starting position.
Position replay_forward(const Position& final, const ReverseSignature& sig);

/// Branch pattern of x under a fixed equivalents schedule; nullopt once a
/// residue of 2 is met.
std::optional<ReverseSignature> reverse_pattern(const Position& x, const std::vector<unsigned>& equivalents);

struct RecurrenceReport {
  std::string signature;
  Nat window;  // modulus
  std::uint64_t range_lo = 0;
  std::uint64_t range_hi = 0;
  std::vector<std::uint64_t> occurrences;  // sorted indices within [lo, hi]
  std::uint64_t complete_windows = 0;
  bool pass = false;
  std::optional<std::uint64_t> first_violation;
};

struct RecurrenceOptions {
  unsigned workers = 1;
};

/// Scans [lo, hi] and checks that occurrences form x0 + modulus*N0 with the
/// first one inside the first window, so every complete window of `modulus`
/// consecutive positions holds exactly one. Throws InsufficientRange unless
/// [lo, hi] holds at least two complete windows.
RecurrenceReport verify_recurrence(const Signature& sig, std::uint64_t range_lo, std::uint64_t range_hi,
                                   const RecurrenceOptions& options = {});

/// Same check over an arbitrary index predicate.
RecurrenceReport verify_indexed(std::string label, const Nat& modulus, std::uint64_t range_lo,
                                std::uint64_t range_hi, const std::function<bool(std::uint64_t)>& occurs,
                                const RecurrenceOptions& options = {});

enum class Generator : std::uint8_t { all_positions, heads, equivalents_of };

struct GeneratorSpec {
  Generator kind = Generator::all_positions;
  std::uint64_t seed = 1;  // only for equivalents_of

  /// Element with 1-based index i of the generated sequence.
  [[nodiscard]] Position element(std::uint64_t index) const;
  [[nodiscard]] std::string str() const;
  /// "all", "heads" or "equivalents:<x>".
  static GeneratorSpec parse(std::string_view text);
};

struct SetRecurrenceReport {
  std::string generator;
  std::size_t n = 0;
  std::uint64_t windows = 0;
  std::vector<unsigned> schedule;
  std::uint64_t dead_ends_first_window = 0;  // elements that hit residue 2
  std::vector<RecurrenceReport> patterns;  // one per pattern realized in the first window
  bool pass = false;
};

inline constexpr std::size_t kDefaultMaxSignatureLength = 6;

/// For every branch pattern of length n realized in the first 3^n elements of
/// the generated sequence (under `schedule`, default all zeros), checks
/// exactly-one-per-window over `windows` windows of the sequence index.
SetRecurrenceReport verify_y_proportional_set(const GeneratorSpec& generator, std::size_t n, std::uint64_t windows,
                                              std::vector<unsigned> schedule = {},
                                              std::size_t max_n = kDefaultMaxSignatureLength);

}  // namespace collatz
