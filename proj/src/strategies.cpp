#include "medlex/strategies.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "medlex/error.hpp"
#include "medlex/text.hpp"

namespace medlex {

namespace {

void validate_rows(const std::vector<TableRow>& rows, std::string_view what) {
  std::set<std::string_view> seen;
  for (const auto& r : rows) {
    if (r.trigger.empty()) throw std::invalid_argument(std::string(what) + " with empty trigger");
    if (!is_assignable(r.category)) {
      throw std::invalid_argument(std::string(what) + " '" + r.trigger + "' mapped to OTHER");
    }
    if (!seen.insert(r.trigger).second) {
      throw std::invalid_argument("duplicate " + std::string(what) + " '" + r.trigger + "'");
    }
  }
}

}  // namespace

LoadedTable read_table(std::istream& in, const std::string& source) {
  LoadedTable out;
  std::unordered_map<std::string, std::size_t> first_line;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim_ascii(line).empty() || trim_ascii(line).front() == '#') continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2) {
      throw ParseError(source, lineno, "expected trigger<TAB>CATEGORY");
    }
    std::string_view trigger = trim_ascii(cols[0]);
    if (!trigger.empty() && trigger.front() == '-') trigger.remove_prefix(1);
    std::string norm;
    try {
      norm = normalize_term(trigger, true);
    } catch (const std::invalid_argument&) {
      throw ParseError(source, lineno, "empty trigger");
    }
    if (norm.find_first_of(":;") != std::string::npos) {
      throw ParseError(source, lineno, "trigger may not contain ':' or ';'");
    }
    const auto category = parse_category(cols[1]);
    if (!category) throw ParseError(source, lineno, "unknown category '" + std::string(cols[1]) + "'");
    if (!is_assignable(*category)) throw ParseError(source, lineno, "OTHER is not assignable");

    if (auto it = first_line.find(norm); it != first_line.end()) {
      out.findings.push_back(source + ":" + std::to_string(lineno) + ": duplicate trigger '" +
                             norm + "' (first seen on line " + std::to_string(it->second) + ")");
      continue;
    }
    first_line.emplace(norm, lineno);
    out.rows.push_back({std::move(norm), *category});
  }
  return out;
}

// ---------------------------------------------------------------------------

SuffixTable::SuffixTable(std::vector<TableRow> rows) : rows_(std::move(rows)) {
  validate_rows(rows_, "suffix");
  for (const auto& r : rows_) index_.emplace(r.trigger, r.category);
}

std::optional<Category> SuffixTable::lookup(std::string_view suffix) const {
  if (auto it = index_.find(std::string(suffix)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::vector<std::string> SuffixTable::lint() const {
  std::vector<std::string> findings;
  for (const auto& a : rows_) {
    for (const auto& b : rows_) {
      if (a.trigger.size() <= b.trigger.size()) continue;
      if (a.trigger.ends_with(b.trigger) && a.category != b.category) {
        findings.push_back("suffix '-" + a.trigger + "' (" + std::string(to_string(a.category)) +
                           ") ends with '-" + b.trigger + "' (" +
                           std::string(to_string(b.category)) + ")");
      }
    }
  }
  return findings;
}

// ---------------------------------------------------------------------------

KeywordTable::KeywordTable(std::vector<TableRow> rows) : rows_(std::move(rows)) {
  validate_rows(rows_, "keyword");
  trie_.emplace_back();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    index_.emplace(rows_[i].trigger, rows_[i].category);
    if (utf8_length(rows_[i].trigger) >= kMinContainedLength) insert(rows_[i].trigger, i);
  }
}

void KeywordTable::insert(std::string_view key, std::size_t row) {
  std::size_t node = 0;
  for (unsigned char byte : key) {
    auto& kids = trie_[node].children;
    auto it = std::lower_bound(kids.begin(), kids.end(), byte,
                               [](const auto& child, unsigned char b) { return child.first < b; });
    if (it != kids.end() && it->first == byte) {
      node = it->second;
      continue;
    }
    const std::size_t next = trie_.size();
    kids.insert(it, {byte, next});
    trie_.emplace_back();
    node = next;
  }
  trie_[node].row = row;
}

std::optional<Category> KeywordTable::lookup(std::string_view keyword) const {
  if (auto it = index_.find(std::string(keyword)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::optional<KeywordTable::Match> KeywordTable::longest_at(std::string_view haystack,
                                                            std::size_t byte_offset) const {
  std::optional<Match> best;
  std::size_t node = 0;
  for (std::size_t i = byte_offset; i < haystack.size(); ++i) {
    const auto byte = static_cast<unsigned char>(haystack[i]);
    const auto& kids = trie_[node].children;
    auto it = std::lower_bound(kids.begin(), kids.end(), byte,
                               [](const auto& child, unsigned char b) { return child.first < b; });
    if (it == kids.end() || it->first != byte) break;
    node = it->second;
    if (trie_[node].row) best = Match{*trie_[node].row, i + 1 - byte_offset};
  }
  return best;
}

// ---------------------------------------------------------------------------

std::optional<Vote> suffix_vote(std::string_view term, const SuffixTable& table) {
  // Walk candidate start positions left to right so the first hit is the
  // longest suffix. Position 0 would be the whole term, not a proper suffix.
  for (std::size_t start = 1; start < term.size(); ++start) {
    if (!utf8_is_boundary(term, start)) continue;
    const std::string_view candidate = term.substr(start);
    if (auto category = table.lookup(candidate)) {
      return Vote{Strategy::Suff, *category, std::string(candidate), std::nullopt};
    }
  }
  return std::nullopt;
}

std::optional<KeywordHit> contained_keyword(std::string_view haystack, const KeywordTable& table) {
  for (std::size_t start = 1; start < haystack.size(); ++start) {
    if (!utf8_is_boundary(haystack, start)) continue;
    if (auto m = table.longest_at(haystack, start)) {
      const auto& row = table.rows()[m->row];
      return KeywordHit{row.trigger, row.category, utf8_char_index(haystack, start)};
    }
  }
  return std::nullopt;
}

std::optional<Vote> kw_entry_vote(std::string_view term, const KeywordTable& table) {
  if (auto hit = contained_keyword(term, table)) {
    return Vote{Strategy::KwE, hit->category, std::move(hit->keyword), hit->position};
  }
  return std::nullopt;
}

std::optional<Vote> kw_firstnoun_vote(const std::optional<std::string>& first_noun,
                                      const KeywordTable& table) {
  if (!first_noun) return std::nullopt;
  if (auto category = table.lookup(*first_noun)) {
    return Vote{Strategy::Kw1N, *category, *first_noun, std::nullopt};
  }
  if (auto hit = contained_keyword(*first_noun, table)) {
    return Vote{Strategy::Kw1N, hit->category, std::move(hit->keyword), hit->position};
  }
  return std::nullopt;
}

}  // namespace medlex
