#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "medlex/model.hpp"

namespace medlex {

struct TableRow {
  std::string trigger;  // lowercase, NFC; suffixes without the leading '-'
  Category category = Category::Condition;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Result of reading a trigger table file. Duplicate triggers are reported
/// as lint findings and only their first row is kept.
struct LoadedTable {
  std::vector<TableRow> rows;
  std::vector<std::string> findings;
};

/// `trigger<TAB>CATEGORY` per line, '#' comments. A leading '-' on the
/// trigger is stripped. Throws ParseError.
LoadedTable read_table(std::istream& in, const std::string& source);

/// Suffix -> category table. Construction rejects empty, duplicate and
/// OTHER-labelled rows with std::invalid_argument.
class SuffixTable {
 public:
  explicit SuffixTable(std::vector<TableRow> rows);

  /// The built-in suffix list (42 suffixes).
  static SuffixTable defaults();

  const std::vector<TableRow>& rows() const { return rows_; }
  std::optional<Category> lookup(std::string_view suffix) const;

  /// Suffix pairs where one ends the other but the categories differ. With
  /// longest-match selection such pairs make the short suffix's category
  /// unreachable for some words, which is almost always a table mistake.
  std::vector<std::string> lint() const;

 private:
  std::vector<TableRow> rows_;
  std::unordered_map<std::string, Category> index_;
};

/// Keyword -> category table with exact lookup and a byte trie over the
/// keywords eligible for containment matching (longer than four characters).
class KeywordTable {
 public:
  static constexpr std::size_t kMinContainedLength = 5;

  explicit KeywordTable(std::vector<TableRow> rows);

  /// The built-in keyword list (29 rows).
  static KeywordTable defaults();

  const std::vector<TableRow>& rows() const { return rows_; }
  std::optional<Category> lookup(std::string_view keyword) const;

  struct Match {
    std::size_t row = 0;
    std::size_t byte_length = 0;
  };

  /// Longest eligible keyword starting exactly at `byte_offset`.
  std::optional<Match> longest_at(std::string_view haystack, std::size_t byte_offset) const;

 private:
  struct Node {
    std::vector<std::pair<unsigned char, std::size_t>> children;  // sorted by byte
    std::optional<std::size_t> row;
  };

  void insert(std::string_view key, std::size_t row);

  std::vector<TableRow> rows_;
  std::unordered_map<std::string, Category> index_;
  std::vector<Node> trie_;
};

struct KeywordHit {
  std::string keyword;
  Category category = Category::Condition;
  std::size_t position = 0;  // code point index of the match start

  friend bool operator==(const KeywordHit&, const KeywordHit&) = default;
};

/// Longest table suffix that is a proper suffix of `term`.
std::optional<Vote> suffix_vote(std::string_view term, const SuffixTable& table);

/// Leftmost keyword longer than four characters occurring at character
/// index >= 1; ties on the start position go to the longest keyword.
std::optional<KeywordHit> contained_keyword(std::string_view haystack, const KeywordTable& table);

std::optional<Vote> kw_entry_vote(std::string_view term, const KeywordTable& table);

/// Exact keyword match on the first noun, falling back to containment.
std::optional<Vote> kw_firstnoun_vote(const std::optional<std::string>& first_noun,
                                      const KeywordTable& table);

}  // namespace medlex
