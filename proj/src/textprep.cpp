#include "medlex/textprep.hpp"

#include <stdexcept>

#include "medlex/error.hpp"
#include "medlex/text.hpp"

namespace medlex {

namespace {

std::vector<std::string> whitespace_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

// Strips a trailing '\r' and a comment introduced by '#'.
std::string_view clean_line(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  return trim_ascii(line);
}

bool is_word_char(char32_t cp) { return !is_unicode_space(cp) && !is_unicode_punct(cp); }

}  // namespace

void StopConfig::add(std::string_view item) {
  std::string norm;
  try {
    norm = normalize_term(item, true);
  } catch (const std::invalid_argument&) {
    return;
  }
  const auto parts = whitespace_tokens(norm);
  if (parts.size() == 2) {
    stop_phrases.emplace(parts[0], parts[1]);
  } else if (parts.size() == 1) {
    if (norm.back() == '.') {
      abbreviations.insert(norm);
    } else {
      stop_nouns.insert(norm);
    }
  } else {
    throw std::invalid_argument("stoplist item '" + norm + "' has more than two tokens");
  }
}

StopConfig StopConfig::defaults() {
  StopConfig c;
  for (const char* item : {"form av", "uttrykk", "plur.", "lat."}) c.add(item);
  return c;
}

StopConfig read_stoplist(std::istream& in, const std::string& source) {
  StopConfig c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto item = clean_line(line);
    if (item.empty()) continue;
    try {
      c.add(item);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  return c;
}

std::set<std::string> read_word_list(std::istream& in, const std::string& source) {
  std::set<std::string> words;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto item = clean_line(line);
    if (item.empty()) continue;
    if (whitespace_tokens(item).size() != 1) {
      throw ParseError(source, lineno, "expected a single word");
    }
    words.insert(fold_case(item));
  }
  return words;
}

const std::set<std::string>& default_function_words() {
  static const std::set<std::string> words = {
      // prepositions
      "av", "i", "på", "til", "fra", "med", "for", "om", "ved", "under", "over", "etter",
      "mot", "hos", "uten", "mellom", "gjennom", "innen", "langs", "blant", "rundt", "bak",
      "foran", "utenfor", "innenfor", "inn", "ut", "opp", "ned", "per", "pr", "via", "overfor",
      // conjunctions and subjunctions
      "og", "eller", "men", "som", "at", "der", "når", "da", "hvis", "fordi", "enn", "så",
      "både", "samt", "enten", "verken", "hvor", "hvilken", "hvilket", "hvilke",
      // determiners and pronouns
      "en", "ei", "et", "den", "det", "de", "denne", "dette", "disse", "sin", "sitt", "sine",
      "seg", "hans", "hennes", "deres", "dens", "dets", "man", "noen", "noe", "ingen", "alle",
      "hver", "annen", "annet", "andre", "ene", "egen", "eget", "egne", "samme",
      // auxiliaries, particles and frequent adverbs
      "er", "var", "blir", "ble", "har", "hadde", "kan", "kunne", "skal", "vil", "være",
      "bli", "ha", "å", "ikke", "også", "særlig", "spesielt", "vanligvis", "ofte", "gjerne",
      "mest", "mer", "meget", "svært", "oftest",
  };
  return words;
}

TokenMap ingest_conllu(std::istream& in, const std::unordered_set<std::string>& known_ids,
                       std::vector<std::string>* warnings, const std::string& source) {
  TokenMap out;
  std::set<std::string> seen_ids;

  std::optional<std::string> sent_id;
  std::optional<std::string> text;
  std::vector<std::pair<std::string, std::string>> rows;  // (FORM, UPOS)
  std::size_t sentence_line = 0;

  auto flush = [&]() {
    if (!sent_id && rows.empty()) {
      text.reset();
      return;
    }
    if (!sent_id) throw ParseError(source, sentence_line, "sentence without '# sent_id'");
    if (!seen_ids.insert(*sent_id).second) {
      throw ParseError(source, sentence_line, "duplicate sent_id '" + *sent_id + "'");
    }
    if (!known_ids.empty() && !known_ids.contains(*sent_id)) {
      if (warnings) {
        warnings->push_back(source + ":" + std::to_string(sentence_line) + ": sent_id '" +
                            *sent_id + "' matches no entry; skipped");
      }
    } else {
      std::vector<Token> tokens;
      tokens.reserve(rows.size());
      std::size_t cursor = 0;  // byte cursor into text
      std::size_t synth = 0;   // code point cursor when no text is available
      for (auto& [form, upos] : rows) {
        Token t;
        t.surface = form;
        t.upos = upos;
        std::size_t found = std::string::npos;
        if (text) found = text->find(form, cursor);
        if (found != std::string::npos) {
          t.start = utf8_char_index(*text, found);
          t.end = t.start + utf8_length(form);
          cursor = found + form.size();
        } else {
          t.start = synth;
          t.end = synth + utf8_length(form);
        }
        synth = t.end + 1;
        tokens.push_back(std::move(t));
      }
      out.emplace(*sent_id, std::move(tokens));
    }
    sent_id.reset();
    text.reset();
    rows.clear();
  };

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim_ascii(line).empty()) {
      flush();
      continue;
    }
    if (sentence_line == 0 || (!sent_id && rows.empty())) sentence_line = lineno;
    if (line.front() == '#') {
      auto body = trim_ascii(line.substr(1));
      auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const auto key = trim_ascii(body.substr(0, eq));
      const auto value = trim_ascii(body.substr(eq + 1));
      if (key == "sent_id") {
        if (sent_id) throw ParseError(source, lineno, "second sent_id in one sentence");
        if (value.empty()) throw ParseError(source, lineno, "empty sent_id");
        sent_id = std::string(value);
      } else if (key == "text") {
        text = std::string(value);
      }
      continue;
    }
    const auto cols = split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError(source, lineno,
                       "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    }
    const auto id = cols[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) continue;
    if (cols[1].empty()) throw ParseError(source, lineno, "empty FORM column");
    rows.emplace_back(std::string(cols[1]), std::string(cols[3]));
  }
  flush();
  return out;
}

std::vector<Token> heuristic_tag(std::string_view text, const std::set<std::string>& function_words) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::size_t cp_index = 0;

  std::string word;
  std::size_t word_start = 0;

  auto emit = [&](std::string surface, std::size_t start, std::size_t end, bool abbreviation) {
    Token t;
    t.start = start;
    t.end = end;
    if (abbreviation) {
      t.upos = "X";
    } else {
      const std::string folded = fold_case(surface);
      bool digits = true;
      for (unsigned char ch : surface) digits = digits && ch >= '0' && ch <= '9';
      if (function_words.contains(folded)) {
        t.upos = "X";
      } else if (digits) {
        t.upos = "NUM";
      } else {
        t.upos = "NOUN";
      }
    }
    t.surface = std::move(surface);
    tokens.push_back(std::move(t));
  };

  while (pos < text.size()) {
    const std::size_t byte_before = pos;
    const char32_t cp = utf8_next(text, pos);
    const bool joiner = (cp == U'-' || cp == U'\'') && !word.empty() && pos < text.size() &&
                        [&] {
                          std::size_t peek = pos;
                          return is_word_char(utf8_next(text, peek));
                        }();
    if (is_word_char(cp) || joiner) {
      if (word.empty()) word_start = cp_index;
      word.append(text.substr(byte_before, pos - byte_before));
    } else if (!word.empty()) {
      const std::size_t len = cp_index - word_start;
      // A period glued to a short word forms an abbreviation token unless it
      // ends the text.
      const bool followed = pos < text.size() && [&] {
        std::size_t peek = pos;
        return !is_word_char(utf8_next(text, peek));
      }();
      if (cp == U'.' && len + 1 <= 6 && followed) {
        emit(word + ".", word_start, cp_index + 1, true);
      } else {
        emit(word, word_start, cp_index, false);
      }
      word.clear();
    }
    ++cp_index;
  }
  if (!word.empty()) emit(word, word_start, cp_index, false);
  return tokens;
}

bool is_nominal(std::string_view upos) { return upos == "NOUN" || upos == "PROPN"; }

std::optional<std::string> extract_first_noun(std::span<const Token> tokens, const StopConfig& stops) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string lower = fold_case(tokens[i].surface);
    if (stops.abbreviations.contains(lower)) continue;
    if (!is_nominal(tokens[i].upos)) continue;
    if (stops.stop_nouns.contains(lower)) continue;
    if (i + 1 < tokens.size() &&
        stops.stop_phrases.contains({lower, fold_case(tokens[i + 1].surface)})) {
      continue;
    }
    return lower;
  }
  return std::nullopt;
}

}  // namespace medlex
