#pragma once

// JSON views of every report type. Nat values that fit in 64 bits become
// JSON integers; larger ones become decimal strings. Exact rationals are
// "p/q" strings, usually next to a double approximation.

#include <nlohmann/json.hpp>

#include "collatz/generalized.hpp"
#include "collatz/parity.hpp"
#include "collatz/proportionality.hpp"
#include "collatz/strings.hpp"
#include "collatz/tree.hpp"

namespace collatz {

nlohmann::json to_json(const Nat& n);
nlohmann::json to_json(const Position& p);
nlohmann::json rational_json(const Rational& r);

nlohmann::json to_json(const StringChain& chain);
nlohmann::json to_json(const LengthStats& stats, std::uint64_t min_support = 1);
nlohmann::json to_json(const PartitionReport& report);
nlohmann::json to_json(const StringStatsReport& report);
nlohmann::json to_json(const RecurrenceReport& report);
nlohmann::json to_json(const SetRecurrenceReport& report);
nlohmann::json to_json(const IterationStats& stats);
nlohmann::json to_json(const ParityTable& table);
nlohmann::json to_json(const AuditReport& report);
nlohmann::json to_json(const CoverageReport& report);
nlohmann::json to_json(const ConvergenceReport& report);
nlohmann::json to_json(const CycleRecord& cycle);
nlohmann::json to_json(const CycleSearchReport& report);

/// Summary of a tree (no position lists); includes the state hash.
nlohmann::json tree_summary(const TreeState& state);

}  // namespace collatz
