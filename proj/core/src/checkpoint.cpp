#include "collatz/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "collatz/errors.hpp"
#include "collatz/reports.hpp"

namespace collatz {

namespace {

using nlohmann::json;

constexpr std::string_view kMagic = "collatz-tree-checkpoint";

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void text(std::string_view s) {
    bytes(s.data(), s.size());
    bytes("\n", 1);
  }
  void word(std::uint64_t w) {
    unsigned char le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<unsigned char>(w >> (8 * i));
    bytes(le, sizeof le);
  }
  [[nodiscard]] std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::vector<std::uint64_t> trimmed_words(const PositionSet& set) {
  std::vector<std::uint64_t> words = set.dense_words();
  while (!words.empty() && words.back() == 0) words.pop_back();
  return words;
}

json stats_json(const TreeState& state) {
  json stats = json::array();
  for (const auto& s : state.stats) stats.push_back(to_json(s));
  return stats;
}

Nat nat_from_json(const json& j) {
  if (j.is_number_unsigned()) return Nat{j.get<std::uint64_t>()};
  if (j.is_string()) return Nat::parse(j.get<std::string>());
  throw VersionMismatch("checkpoint header holds a malformed number");
}

IterationStats stats_from_json(const json& j) {
  IterationStats s;
  s.iteration = j.at("iteration").get<std::size_t>();
  s.seeds = j.at("seeds").get<std::uint64_t>();
  s.pigeons_added = j.at("pigeons_added").get<std::uint64_t>();
  s.expected_pigeons = nat_from_json(j.at("expected_pigeons"));
  s.max_position = nat_from_json(j.at("max_position"));
  s.pigeon_hole_ratio = Rational{j.at("pigeon_hole_ratio").get<std::string>()};
  s.duplicates = j.at("duplicates").get<std::uint64_t>();
  s.root_overlap = j.at("root_overlap").get<std::uint64_t>();
  s.cap_hits = j.at("cap_hits").get<std::uint64_t>();
  s.pruned_heads = j.at("pruned_heads").get<std::uint64_t>();
  s.truncated_chains = j.at("truncated_chains").get<std::uint64_t>();
  return s;
}

std::string hash_parts(const std::vector<std::uint64_t>& words, const std::vector<Nat>& sparse,
                       const std::vector<Position>& frontier, const json& stats) {
  Fnv1a h;
  h.word(words.size());
  for (std::uint64_t w : words) h.word(w);
  h.word(sparse.size());
  for (const Nat& n : sparse) h.text(n.str());
  h.word(frontier.size());
  for (const Position& p : frontier) h.text(p.str());
  h.text(stats.dump());
  return h.hex();
}

}  // namespace

std::string state_hash(const TreeState& state) {
  return hash_parts(trimmed_words(state.included), state.included.sparse_sorted(), state.frontier,
                    stats_json(state));
}

void save_checkpoint(const TreeState& state, const std::filesystem::path& path) {
  const auto words = trimmed_words(state.included);
  const auto sparse = state.included.sparse_sorted();
  const json stats = stats_json(state);

  json header = {{"version", kCheckpointVersion},
                 {"root_k", state.root_k},
                 {"root_size", state.root_size},
                 {"iteration", state.iteration},
                 {"dense_bound", state.included.dense_bound()},
                 {"ceiling", state.ceiling ? json(state.ceiling->str()) : json(nullptr)},
                 {"bitmap_words", words.size()},
                 {"sparse_count", sparse.size()},
                 {"frontier_count", state.frontier.size()},
                 {"stats", stats},
                 {"warnings", state.warnings},
                 {"payload_hash", hash_parts(words, sparse, state.frontier, stats)}};

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open checkpoint for writing: " + path.string());
  out << kMagic << '\n' << header.dump() << '\n';
  for (std::uint64_t w : words) {
    unsigned char le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<unsigned char>(w >> (8 * i));
    out.write(reinterpret_cast<const char*>(le), sizeof le);
  }
  for (const Nat& n : sparse) out << n.str() << '\n';
  for (const Position& p : state.frontier) out << p.str() << '\n';
  if (!out) throw Error("failed writing checkpoint: " + path.string());
}

TreeState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint: " + path.string());

  std::string magic;
  std::getline(in, magic);
  if (magic != kMagic) throw VersionMismatch("not a tree checkpoint (bad magic line): " + path.string());

  std::string header_line;
  std::getline(in, header_line);
  json header;
  try {
    header = json::parse(header_line);
  } catch (const json::exception& e) {
    throw VersionMismatch(std::string("malformed checkpoint header: ") + e.what());
  }
  if (!header.is_object() || !header.contains("version") || !header["version"].is_number_integer()) {
    throw VersionMismatch("checkpoint header has no version");
  }
  if (header["version"].get<int>() != kCheckpointVersion) {
    throw VersionMismatch("checkpoint version " + header["version"].dump() + " is not supported (expected " +
                          std::to_string(kCheckpointVersion) + ")");
  }

  try {
    TreeState state;
    state.root_k = header.at("root_k").get<unsigned>();
    state.root_size = header.at("root_size").get<std::uint64_t>();
    state.iteration = header.at("iteration").get<std::size_t>();
    if (!header.at("ceiling").is_null()) state.ceiling = Nat::parse(header.at("ceiling").get<std::string>());
    state.warnings = header.at("warnings").get<std::vector<std::string>>();
    for (const auto& s : header.at("stats")) state.stats.push_back(stats_from_json(s));

    const auto word_count = header.at("bitmap_words").get<std::uint64_t>();
    std::vector<std::uint64_t> words(word_count);
    for (auto& w : words) {
      unsigned char le[8];
      if (!in.read(reinterpret_cast<char*>(le), sizeof le)) throw VersionMismatch("truncated checkpoint bitmap");
      w = 0;
      for (int i = 0; i < 8; ++i) w |= static_cast<std::uint64_t>(le[i]) << (8 * i);
    }
    auto read_lines = [&](std::uint64_t count) {
      std::vector<Nat> out;
      out.reserve(count);
      std::string line;
      for (std::uint64_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw VersionMismatch("truncated checkpoint body");
        out.push_back(Nat::parse(line));
      }
      return out;
    };
    const auto sparse = read_lines(header.at("sparse_count").get<std::uint64_t>());
    for (Nat& n : read_lines(header.at("frontier_count").get<std::uint64_t>())) state.frontier.emplace_back(std::move(n));

    state.included = PositionSet::restore(header.at("dense_bound").get<std::uint64_t>(), std::move(words), sparse);
    const std::string expected = header.at("payload_hash").get<std::string>();
    if (state_hash(state) != expected) throw VersionMismatch("checkpoint payload hash mismatch");
    return state;
  } catch (const json::exception& e) {
    throw VersionMismatch(std::string("malformed checkpoint header: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw VersionMismatch(std::string("malformed checkpoint body: ") + e.what());
  }
}

}  // namespace collatz
