#pragma once

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "medlex/model.hpp"

namespace medlex {

/// Words and phrases removed before the first noun of a definition is taken.
/// All items are stored lowercase.
struct StopConfig {
  std::set<std::string> stop_nouns;
  std::set<std::pair<std::string, std::string>> stop_phrases;  // (noun, preposition)
  std::set<std::string> abbreviations;                         // "plur.", "lat."

  /// Classifies one stoplist line: two tokens form a stop phrase, a single
  /// token ending in '.' is an abbreviation, anything else a stop noun.
  /// Throws std::invalid_argument for items of three or more tokens.
  void add(std::string_view item);

  /// "form av", "uttrykk", "plur." and "lat.".
  static StopConfig defaults();
};

/// One item per line, '#' starts a comment. Throws ParseError.
StopConfig read_stoplist(std::istream& in, const std::string& source);

/// Word list in the same line format (used for function words).
std::set<std::string> read_word_list(std::istream& in, const std::string& source);

/// Function words treated as non-nouns by heuristic_tag.
const std::set<std::string>& default_function_words();

using TokenMap = std::map<std::string, std::vector<Token>>;

/// Reads CoNLL-U. Each sentence must carry a `# sent_id = <entry id>`
/// comment. Multiword ranges ("3-4") and empty nodes ("5.1") are skipped.
/// Offsets are aligned against `# text =` when present, otherwise computed as
/// if tokens were joined by single spaces. Sentences whose id is not in
/// `known_ids` are skipped with a warning; an empty `known_ids` accepts all.
TokenMap ingest_conllu(std::istream& in, const std::unordered_set<std::string>& known_ids,
                       std::vector<std::string>* warnings = nullptr,
                       const std::string& source = "<conllu>");

/// Whitespace/punctuation tokenizer for when no tagged input is available.
/// Tokens in `function_words` and abbreviation-shaped tokens (ending in '.',
/// at most 6 characters, not at the end of the text) are tagged X,
/// digit-only tokens NUM, the rest NOUN.
std::vector<Token> heuristic_tag(std::string_view text, const std::set<std::string>& function_words);

/// UPOS tags accepted as nouns: NOUN and PROPN.
bool is_nominal(std::string_view upos);

/// Leftmost noun of a definition after stoplist filtering, lowercased.
std::optional<std::string> extract_first_noun(std::span<const Token> tokens, const StopConfig& stops);

}  // namespace medlex
