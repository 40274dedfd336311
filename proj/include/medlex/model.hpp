#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "medlex/category.hpp"

namespace medlex {

/// The three vote-casting strategies, in precedence order.
enum class Strategy : std::uint8_t { Suff, KwE, Kw1N };

inline constexpr std::size_t kStrategyCount = 3;

/// How a MappingOutcome got its category.
enum class Provenance : std::uint8_t { Suff, KwE, Kw1N, Multi, Iter, Unmapped };

inline constexpr std::size_t kProvenanceCount = 6;

/// Which token source produced the first noun of an entry's definition.
enum class Tagger : std::uint8_t { None, Conllu, Heuristic };

std::string_view to_string(Strategy s);
std::string_view to_string(Provenance p);
std::string_view to_string(Tagger t);
std::optional<Strategy> parse_strategy(std::string_view text);
std::optional<Provenance> parse_provenance(std::string_view text);
std::optional<Tagger> parse_tagger(std::string_view text);

constexpr Provenance provenance_of(Strategy s) { return static_cast<Provenance>(s); }

struct Token {
  std::string surface;
  std::string upos;
  std::size_t start = 0;  // code point offsets into the definition text
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Definition {
  std::string text;
  std::optional<std::vector<Token>> tokens;
};

struct Entry {
  std::string id;
  std::string term;
  std::vector<Definition> senses;  // only senses[0] is consulted
  std::optional<std::string> synonym_of;
};

struct Vote {
  Strategy strategy = Strategy::Suff;
  Category category = Category::Condition;
  std::string trigger;                   // suffix (without '-') or keyword
  std::optional<std::size_t> position;   // containment matches only

  friend bool operator==(const Vote&, const Vote&) = default;
};

/// "SUFF:PROCEDURE:-biopsi", "KW_E:SERVICE:tjeneste:9", "KW_1N:CONDITION:sykdom".
std::string format_vote(const Vote& v);
Vote parse_vote(std::string_view text);

struct MappingOutcome {
  std::string entry_id;
  std::string term;
  std::optional<Category> category;
  Provenance provenance = Provenance::Unmapped;
  std::vector<Vote> votes;
  std::optional<std::string> corrected_by;
  Tagger tagger = Tagger::None;

  /// True when the votes named more than one category and precedence decided.
  bool disagreement() const;

  friend bool operator==(const MappingOutcome&, const MappingOutcome&) = default;
};

/// Returns a description of the first violated MappingOutcome invariant, or
/// nullopt if the outcome is well-formed.
std::optional<std::string> check_outcome(const MappingOutcome& o);

struct LexiconRecord {
  std::string term;
  std::string normalized_term;  // merge key: NFC, single spaces, lowercased in lowercase mode
  Category category = Category::Condition;
  std::set<std::string> sources;
  std::string provenance;

  friend bool operator==(const LexiconRecord&, const LexiconRecord&) = default;
};

}  // namespace medlex
