#include "medlex/io.hpp"

#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "medlex/error.hpp"
#include "medlex/text.hpp"

namespace medlex {

using nlohmann::json;

namespace {

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool skippable(std::string_view line) {
  const auto t = trim_ascii(line);
  return t.empty() || t.front() == '#';
}

std::string checked_term(std::string_view raw, const std::string& source, std::size_t lineno) {
  if (raw.find_first_of("\t\n\r") != std::string_view::npos) {
    throw ParseError(source, lineno, "term contains a tab or newline");
  }
  try {
    return normalize_term(raw, false);
  } catch (const std::invalid_argument&) {
    throw ParseError(source, lineno, "empty term");
  }
}

std::string json_id(const json& v, const std::string& source, std::size_t lineno) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(source, lineno, "missing or non-string \"id\"");
}

Entry entry_from_json(const json& obj, const std::string& source, std::size_t lineno) {
  if (!obj.is_object()) throw ParseError(source, lineno, "expected a JSON object");
  Entry e;
  e.id = json_id(obj.value("id", json()), source, lineno);
  if (!obj.contains("term") || !obj["term"].is_string()) {
    throw ParseError(source, lineno, "missing or non-string \"term\"");
  }
  e.term = checked_term(obj["term"].get<std::string>(), source, lineno);
  if (obj.contains("definition") && !obj["definition"].is_null()) {
    const auto& def = obj["definition"];
    if (def.is_string()) {
      if (!trim_ascii(def.get<std::string>()).empty()) e.senses.push_back({def.get<std::string>(), {}});
    } else if (def.is_array()) {
      for (const auto& s : def) {
        if (!s.is_string()) throw ParseError(source, lineno, "definition senses must be strings");
        e.senses.push_back({s.get<std::string>(), {}});
      }
    } else {
      throw ParseError(source, lineno, "\"definition\" must be a string or a list of strings");
    }
  }
  if (obj.contains("synonym_of") && !obj["synonym_of"].is_null()) {
    e.synonym_of = json_id(obj["synonym_of"], source, lineno);
  }
  return e;
}

std::string dash_if_empty(std::string s) { return s.empty() ? "-" : s; }

}  // namespace

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return in;
}

Format format_for_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".json") ? Format::JsonLines : Format::Tsv;
}

Format parse_format(std::string_view name) {
  if (name == "tsv") return Format::Tsv;
  if (name == "jsonl" || name == "json") return Format::JsonLines;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

std::vector<Entry> read_dictionary(std::istream& in, Format format, const std::string& source) {
  std::vector<Entry> entries;
  std::unordered_map<std::string, std::size_t> seen;
  std::string raw;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = strip_cr(raw);
    if (skippable(line)) continue;

    Entry e;
    if (format == Format::JsonLines) {
      json obj;
      try {
        obj = json::parse(line);
      } catch (const json::parse_error& err) {
        throw ParseError(source, lineno, std::string("invalid JSON: ") + err.what());
      }
      e = entry_from_json(obj, source, lineno);
    } else {
      const auto cols = split(line, '\t');
      if (first && cols.size() >= 2 && cols[0] == "id" && cols[1] == "term") {
        first = false;
        continue;
      }
      if (cols.size() < 2 || cols.size() > 4) {
        throw ParseError(source, lineno,
                         "expected id<TAB>term<TAB>definition[<TAB>synonym_of], found " +
                             std::to_string(cols.size()) + " columns");
      }
      e.id = std::string(trim_ascii(cols[0]));
      e.term = checked_term(cols[1], source, lineno);
      if (cols.size() >= 3 && !trim_ascii(cols[2]).empty()) e.senses.push_back({std::string(cols[2]), {}});
      if (cols.size() == 4 && !trim_ascii(cols[3]).empty()) e.synonym_of = std::string(trim_ascii(cols[3]));
    }
    first = false;
    if (e.id.empty()) throw ParseError(source, lineno, "empty id");
    if (auto [it, inserted] = seen.emplace(e.id, lineno); !inserted) {
      throw ParseError(source, lineno,
                       "duplicate id '" + e.id + "' (first on line " + std::to_string(it->second) + ")");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

void attach_tokens(std::vector<Entry>& entries, const TokenMap& tokens) {
  for (auto& e : entries) {
    auto it = tokens.find(e.id);
    if (it == tokens.end()) continue;
    if (e.senses.empty()) e.senses.push_back({"", {}});
    e.senses.front().tokens = it->second;
  }
}

void write_outcomes(std::ostream& out, std::span<const MappingOutcome> outcomes, Format format) {
  if (format == Format::JsonLines) {
    for (const auto& o : outcomes) {
      json votes = json::array();
      for (const auto& v : o.votes) votes.push_back(format_vote(v));
      json obj = {
          {"id", o.entry_id},
          {"term", o.term},
          {"category", o.category ? json(std::string(to_string(*o.category))) : json()},
          {"provenance", std::string(to_string(o.provenance))},
          {"votes", votes},
          {"tagger", std::string(to_string(o.tagger))},
      };
      out << obj.dump() << '\n';
    }
    return;
  }
  out << "id\tterm\tcategory\tprovenance\tvotes\ttagger\n";
  for (const auto& o : outcomes) {
    std::vector<std::string> votes;
    for (const auto& v : o.votes) votes.push_back(format_vote(v));
    out << o.entry_id << '\t' << o.term << '\t'
        << (o.category ? std::string(to_string(*o.category)) : std::string("-")) << '\t'
        << to_string(o.provenance) << '\t' << dash_if_empty(join(votes, ";")) << '\t'
        << to_string(o.tagger) << '\n';
  }
}

std::vector<MappingOutcome> read_outcomes(std::istream& in, const std::string& source) {
  std::vector<MappingOutcome> outcomes;
  std::string raw;
  std::size_t lineno = 0;
  bool first = true;
  auto fail = [&](const std::string& msg) { throw ParseError(source, lineno, msg); };

  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = strip_cr(raw);
    if (skippable(line)) continue;
    MappingOutcome o;
    try {
      if (trim_ascii(line).front() == '{') {
        const json obj = json::parse(line);
        o.entry_id = json_id(obj.value("id", json()), source, lineno);
        o.term = checked_term(obj.at("term").get<std::string>(), source, lineno);
        if (!obj.at("category").is_null()) o.category = category_from_string(obj["category"].get<std::string>());
        const auto prov = parse_provenance(obj.at("provenance").get<std::string>());
        if (!prov) fail("unknown provenance");
        o.provenance = *prov;
        for (const auto& v : obj.value("votes", json::array())) o.votes.push_back(parse_vote(v.get<std::string>()));
        if (obj.contains("tagger")) {
          const auto t = parse_tagger(obj["tagger"].get<std::string>());
          if (!t) fail("unknown tagger");
          o.tagger = *t;
        }
      } else {
        const auto cols = split(line, '\t');
        if (first && cols[0] == "id") {
          first = false;
          continue;
        }
        if (cols.size() != 5 && cols.size() != 6) fail("expected 5 or 6 tab-separated columns");
        o.entry_id = std::string(cols[0]);
        o.term = checked_term(cols[1], source, lineno);
        if (cols[2] != "-") o.category = category_from_string(cols[2]);
        const auto prov = parse_provenance(cols[3]);
        if (!prov) fail("unknown provenance '" + std::string(cols[3]) + "'");
        o.provenance = *prov;
        if (cols[4] != "-") {
          for (auto v : split(cols[4], ';')) o.votes.push_back(parse_vote(v));
        }
        if (cols.size() == 6) {
          const auto t = parse_tagger(cols[5]);
          if (!t) fail("unknown tagger '" + std::string(cols[5]) + "'");
          o.tagger = *t;
        }
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
    first = false;
    if (o.entry_id.empty()) fail("empty id");
    if (auto err = check_outcome(o)) fail(*err);
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

std::map<std::string, Category> read_gold(std::istream& in, const std::string& source) {
  std::map<std::string, Category> gold;
  std::string raw;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = strip_cr(raw);
    if (skippable(line)) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2) throw ParseError(source, lineno, "expected term<TAB>CATEGORY");
    if (first && cols[0] == "term" && !parse_category(cols[1])) {
      first = false;
      continue;
    }
    first = false;
    std::string term;
    try {
      term = normalize_term(cols[0], true);
    } catch (const std::invalid_argument&) {
      throw ParseError(source, lineno, "empty term");
    }
    const auto label = parse_category(cols[1]);
    if (!label) {
      throw ParseError(source, lineno,
                       "unknown gold label '" + std::string(cols[1]) + "' for term '" + term + "'");
    }
    if (auto [it, inserted] = gold.emplace(term, *label); !inserted && it->second != *label) {
      throw ParseError(source, lineno, "conflicting gold labels for term '" + term + "'");
    }
  }
  return gold;
}

}  // namespace medlex
