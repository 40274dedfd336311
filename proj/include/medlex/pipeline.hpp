#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "medlex/model.hpp"
#include "medlex/strategies.hpp"
#include "medlex/textprep.hpp"

namespace medlex {

struct MapConfig {
  SuffixTable suffixes = SuffixTable::defaults();
  KeywordTable keywords = KeywordTable::defaults();
  StopConfig stops = StopConfig::defaults();
  std::set<std::string> function_words = default_function_words();
  int iter_rounds = 1;
};

struct Resolution {
  std::optional<Category> category;
  Provenance provenance = Provenance::Unmapped;

  friend bool operator==(const Resolution&, const Resolution&) = default;
};

/// Unanimous votes from two or more strategies give MULTI; otherwise the
/// first voter in SUFF, KW_E, KW_1N order decides. Throws std::logic_error
/// when a strategy votes twice.
Resolution resolve_votes(std::span<const Vote> votes);

/// Per-entry work of the first mapping pass.
struct EntryAnalysis {
  std::string key;                         // lowercase normalized term
  std::optional<std::string> first_noun;   // from senses[0]
  Tagger tagger = Tagger::None;
  std::vector<Vote> votes;                 // in strategy order
  Resolution resolution;
};

EntryAnalysis analyze_entry(const Entry& entry, const MapConfig& config);

/// Copies the senses of the referenced entry into synonym entries that have
/// no definition of their own. Throws ParseError for dangling references and
/// std::invalid_argument for duplicate ids.
std::vector<Entry> resolve_synonyms(std::span<const Entry> entries);

struct MapResult {
  std::vector<MappingOutcome> outcomes;  // input order
  std::vector<std::string> warnings;
  std::vector<std::size_t> mapped_per_round;  // cumulative mapped count after each pass
};

/// Maps a dictionary. The first pass and each ITER pass run the per-entry
/// work in an OpenMP parallel loop; `threads` <= 0 keeps the runtime default.
/// The result does not depend on the thread count.
MapResult map_dictionary(std::span<const Entry> entries, const MapConfig& config, int threads = 0);

namespace reference {

/// Single-threaded mapping with an ordered-map ITER index. Kept as the
/// oracle for map_dictionary and as the benchmark baseline.
MapResult map_dictionary(std::span<const Entry> entries, const MapConfig& config);

}  // namespace reference

struct MappingStats {
  std::array<std::size_t, kAssignableCount> per_category{};
  std::array<std::size_t, kProvenanceCount> per_provenance{};
  std::array<std::size_t, kProvenanceCount> disagreements{};
  std::size_t mapped = 0;
  std::size_t unmapped = 0;

  std::size_t total() const { return mapped + unmapped; }
  friend bool operator==(const MappingStats&, const MappingStats&) = default;
};

MappingStats mapping_stats(std::span<const MappingOutcome> outcomes);

/// Plain-text category and strategy tables as printed by `medlex map`.
std::string format_stats(const MappingStats& stats);

}  // namespace medlex
