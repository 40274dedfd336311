#include "medlex/merge.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <omp.h>

#include <json.hpp>

#include "medlex/error.hpp"
#include "medlex/report.hpp"
#include "medlex/text.hpp"

namespace medlex {

using nlohmann::json;

std::string_view to_string(ResourceMode m) {
  switch (m) {
    case ResourceMode::Fixed: return "FIXED";
    case ResourceMode::PerEntry: return "PER_ENTRY";
    case ResourceMode::Chaptered: return "CHAPTERED";
  }
  return "?";
}

void ResourceSpec::validate() const {
  if (name.empty()) throw std::invalid_argument("resource without a name");
  if (name.find_first_of(",\t;") != std::string::npos) {
    throw std::invalid_argument("resource name '" + name + "' may not contain ',', ';' or tabs");
  }
  switch (mode) {
    case ResourceMode::Fixed:
      if (!fixed_category) throw std::invalid_argument(name + ": FIXED mode needs a category");
      if (!is_assignable(*fixed_category)) throw std::invalid_argument(name + ": OTHER is not assignable");
      if (!chapter_rules.empty()) throw std::invalid_argument(name + ": FIXED mode takes no chapter rules");
      break;
    case ResourceMode::PerEntry:
      if (fixed_category || !chapter_rules.empty()) {
        throw std::invalid_argument(name + ": PER_ENTRY mode takes no category or rules");
      }
      if (!layout.category) throw std::invalid_argument(name + ": PER_ENTRY mode needs a category column");
      break;
    case ResourceMode::Chaptered:
      if (chapter_rules.empty()) throw std::invalid_argument(name + ": CHAPTERED mode needs at least one rule");
      if (!layout.chapter) throw std::invalid_argument(name + ": CHAPTERED mode needs a chapter column");
      for (const auto& r : chapter_rules) {
        if (!r.target.exclude && !is_assignable(r.target.category)) {
          throw std::invalid_argument(name + ": OTHER is not assignable");
        }
      }
      break;
  }
}

bool chapter_matches(std::string_view pattern, std::string_view chapter) {
  auto decode = [](std::string_view s) {
    std::u32string out;
    const std::string folded = fold_case(trim_ascii(s));
    std::size_t pos = 0;
    while (pos < folded.size()) out.push_back(utf8_next(folded, pos));
    return out;
  };
  const std::u32string p = decode(pattern);
  const std::u32string s = decode(chapter);
  std::size_t pi = 0, si = 0;
  std::size_t star = std::u32string::npos, mark = 0;
  while (si < s.size()) {
    if (pi < p.size() && (p[pi] == U'?' || p[pi] == s[si])) {
      ++pi;
      ++si;
    } else if (pi < p.size() && p[pi] == U'*') {
      star = pi++;
      mark = si;
    } else if (star != std::u32string::npos) {
      pi = star + 1;
      si = ++mark;
    } else {
      return false;
    }
  }
  while (pi < p.size() && p[pi] == U'*') ++pi;
  return pi == p.size();
}

// ---------------------------------------------------------------------------
// Manifest

namespace {

ResourceMode parse_mode(std::string_view text) {
  std::string key(trim_ascii(text));
  for (char& ch : key) {
    if (ch == '-') ch = '_';
    if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
  }
  if (key == "FIXED") return ResourceMode::Fixed;
  if (key == "PER_ENTRY") return ResourceMode::PerEntry;
  if (key == "CHAPTERED") return ResourceMode::Chaptered;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

RuleTarget parse_target(std::string_view text) {
  const auto t = trim_ascii(text);
  if (t == "EXCLUDE" || t == "exclude") return RuleTarget::excluded();
  const Category c = category_from_string(t);
  if (!is_assignable(c)) throw std::invalid_argument("OTHER is not assignable");
  return RuleTarget::to(c);
}

std::size_t parse_column(std::string_view text) {
  std::size_t value = 0;
  const auto t = trim_ascii(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || value == 0) {
    throw std::invalid_argument("bad column number '" + std::string(text) + "'");
  }
  return value;
}

int parse_rank(std::string_view text) {
  int value = 0;
  const auto t = trim_ascii(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw std::invalid_argument("bad trust_rank '" + std::string(text) + "'");
  }
  return value;
}

void apply_layout_item(ColumnLayout& layout, std::string_view key, std::optional<std::size_t> col) {
  if (key == "header") {
    layout.header = true;
    return;
  }
  if (!col) throw std::invalid_argument("layout key '" + std::string(key) + "' needs a column");
  if (key == "term") {
    layout.term = *col;
  } else if (key == "category") {
    layout.category = col;
  } else if (key == "chapter") {
    layout.chapter = col;
  } else if (key == "code") {
    layout.code = col;
  } else {
    throw std::invalid_argument("unknown layout key '" + std::string(key) + "'");
  }
}

// "term=1,chapter=2,code=3,header"
ColumnLayout parse_layout(std::string_view text) {
  ColumnLayout layout;
  const auto t = trim_ascii(text);
  if (t.empty() || t == "-") return layout;
  for (auto item : split(t, ',')) {
    item = trim_ascii(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      apply_layout_item(layout, item, std::nullopt);
    } else {
      apply_layout_item(layout, trim_ascii(item.substr(0, eq)), parse_column(item.substr(eq + 1)));
    }
  }
  return layout;
}

void fill_layout_defaults(ResourceSpec& spec) {
  if (spec.mode == ResourceMode::PerEntry && !spec.layout.category) spec.layout.category = 2;
  if (spec.mode == ResourceMode::Chaptered && !spec.layout.chapter) spec.layout.chapter = 2;
}

void fill_category_field(ResourceSpec& spec, std::string_view text) {
  const auto t = trim_ascii(text);
  if (t.empty() || t == "-") return;
  if (spec.mode == ResourceMode::Fixed) {
    spec.fixed_category = category_from_string(t);
  } else if (spec.mode == ResourceMode::Chaptered) {
    spec.chapter_default = parse_target(t);
  } else {
    throw std::invalid_argument("PER_ENTRY mode takes no category");
  }
}

// "Procedure codes=PROCEDURE;Social problems=EXCLUDE"
std::vector<ChapterRule> parse_rules(std::string_view text) {
  std::vector<ChapterRule> rules;
  const auto t = trim_ascii(text);
  if (t.empty() || t == "-") return rules;
  for (auto item : split(t, ';')) {
    item = trim_ascii(item);
    if (item.empty()) continue;
    const auto eq = item.rfind('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("rule '" + std::string(item) + "' lacks '='");
    rules.push_back({std::string(trim_ascii(item.substr(0, eq))), parse_target(item.substr(eq + 1))});
  }
  return rules;
}

ResourceSpec spec_from_json(const json& obj, const std::filesystem::path& base_dir) {
  ResourceSpec spec;
  spec.name = obj.at("name").get<std::string>();
  spec.file = obj.at("file").get<std::string>();
  spec.mode = parse_mode(obj.at("mode").get<std::string>());
  if (obj.contains("category") && obj["category"].is_string()) {
    fill_category_field(spec, obj["category"].get<std::string>());
  }
  if (obj.contains("rules")) {
    const auto& rules = obj["rules"];
    if (rules.is_string()) {
      spec.chapter_rules = parse_rules(rules.get<std::string>());
    } else {
      for (const auto& r : rules) {
        spec.chapter_rules.push_back({r.at("pattern").get<std::string>(),
                                      parse_target(r.at("target").get<std::string>())});
      }
    }
  }
  spec.trust_rank = obj.at("trust_rank").get<int>();
  if (obj.contains("layout")) {
    const auto& layout = obj["layout"];
    if (layout.is_string()) {
      spec.layout = parse_layout(layout.get<std::string>());
    } else {
      for (const auto& [key, value] : layout.items()) {
        if (key == "header") {
          spec.layout.header = value.get<bool>();
        } else {
          apply_layout_item(spec.layout, key, value.get<std::size_t>());
        }
      }
    }
  }
  if (spec.file.is_relative()) spec.file = base_dir / spec.file;
  fill_layout_defaults(spec);
  return spec;
}

}  // namespace

std::vector<ResourceSpec> read_manifest(std::istream& in, Format format, const std::string& source,
                                        const std::filesystem::path& base_dir) {
  std::vector<ResourceSpec> specs;
  std::set<std::string> names;
  auto add = [&](ResourceSpec spec, std::size_t lineno) {
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, lineno, e.what());
    }
    if (!names.insert(spec.name).second) {
      throw ParseError(source, lineno, "duplicate resource name '" + spec.name + "'");
    }
    specs.push_back(std::move(spec));
  };

  if (format == Format::JsonLines) {
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ParseError(source, 0, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError(source, 0, "manifest must be a JSON array");
    std::size_t index = 0;
    for (const auto& obj : doc) {
      ++index;
      try {
        add(spec_from_json(obj, base_dir), index);
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(source, index, e.what());
      }
    }
    return specs;
  }

  std::string raw;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim_ascii(line).empty() || trim_ascii(line).front() == '#') continue;
    const auto cols = split(line, '\t');
    if (!header_seen) {
      header_seen = true;
      if (cols[0] == "name") continue;
    }
    if (cols.size() < 6 || cols.size() > 7) {
      throw ParseError(source, lineno, "expected name, file, mode, category, rules, trust_rank[, layout]");
    }
    try {
      ResourceSpec spec;
      spec.name = std::string(trim_ascii(cols[0]));
      spec.file = std::string(trim_ascii(cols[1]));
      if (spec.file.is_relative()) spec.file = base_dir / spec.file;
      spec.mode = parse_mode(cols[2]);
      fill_category_field(spec, cols[3]);
      spec.chapter_rules = parse_rules(cols[4]);
      spec.trust_rank = parse_rank(cols[5]);
      if (cols.size() == 7) spec.layout = parse_layout(cols[6]);
      fill_layout_defaults(spec);
      add(std::move(spec), lineno);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  return specs;
}

std::vector<ResourceSpec> read_manifest(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_manifest(in, format_for_path(path), path.string(), path.parent_path());
}

// ---------------------------------------------------------------------------
// Ingestion

IngestResult ingest_resource(const ResourceSpec& spec, std::istream& in, const std::string& source) {
  spec.validate();
  IngestResult result;
  result.name = spec.name;
  result.trust_rank = spec.trust_rank;
  result.mode = spec.mode;
  result.fixed_category = spec.fixed_category;

  std::size_t needed = spec.layout.term;
  for (auto col : {spec.layout.category, spec.layout.chapter, spec.layout.code}) {
    if (col) needed = std::max(needed, *col);
  }

  std::string raw;
  std::size_t lineno = 0;
  bool header_pending = spec.layout.header;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim_ascii(line).empty() || trim_ascii(line).front() == '#') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto cols = split(line, '\t');
    if (cols.size() < needed) {
      throw ParseError(source, lineno, "expected at least " + std::to_string(needed) + " columns");
    }
    ResourceRecord rec;
    try {
      rec.term = normalize_term(cols[spec.layout.term - 1], false);
    } catch (const std::invalid_argument&) {
      throw ParseError(source, lineno, "empty term");
    }
    rec.source = spec.name;
    rec.line = lineno;
    if (spec.layout.code) {
      const auto code = trim_ascii(cols[*spec.layout.code - 1]);
      if (!code.empty()) rec.code = std::string(code);
    }
    ++result.ingested;

    switch (spec.mode) {
      case ResourceMode::Fixed:
        rec.category = *spec.fixed_category;
        break;
      case ResourceMode::PerEntry: {
        const auto label = cols[*spec.layout.category - 1];
        const auto c = parse_category(label);
        if (!c || !is_assignable(*c)) {
          throw ParseError(source, lineno, "unknown category '" + std::string(label) + "'");
        }
        rec.category = *c;
        break;
      }
      case ResourceMode::Chaptered: {
        const auto chapter = cols[*spec.layout.chapter - 1];
        std::optional<RuleTarget> target;
        for (const auto& rule : spec.chapter_rules) {
          if (chapter_matches(rule.pattern, chapter)) {
            target = rule.target;
            break;
          }
        }
        if (!target) target = spec.chapter_default;
        if (!target) {
          throw ParseError(source, lineno,
                           "chapter '" + std::string(chapter) + "' matches no rule and there is no default");
        }
        if (target->exclude) {
          ++result.excluded;
          continue;
        }
        rec.category = target->category;
        break;
      }
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

IngestResult ingest_resource(const ResourceSpec& spec) {
  auto in = open_input(spec.file);
  return ingest_resource(spec, in, spec.file.string());
}

std::vector<IngestResult> ingest_all(std::span<const ResourceSpec> specs, int threads) {
  std::vector<IngestResult> results(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  const auto n = static_cast<std::ptrdiff_t>(specs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      results[k] = ingest_resource(specs[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

// ---------------------------------------------------------------------------
// Merging

namespace {

struct SourceInfo {
  std::string name;
  int rank = 0;
  bool mapped = false;
};

struct Candidate {
  std::size_t source = 0;
  Category category = Category::Condition;
  std::string provenance;
};

}  // namespace

MergeResult merge_lexicons(const MappedSource& mapped, std::span<const IngestResult> resources,
                           bool lowercase) {
  std::vector<SourceInfo> sources;
  sources.push_back({mapped.name, mapped.trust_rank, true});
  std::set<std::string> names{mapped.name};
  for (const auto& r : resources) {
    if (!names.insert(r.name).second) throw std::invalid_argument("duplicate source name '" + r.name + "'");
    sources.push_back({r.name, r.trust_rank, false});
  }

  MergeResult result;
  MergeReport& report = result.report;

  // Group key -> candidates in input order (mapped dictionary first).
  std::map<std::string, std::vector<Candidate>> groups;
  {
    ResourceCounts counts{mapped.name, "Multiple", mapped.outcomes.size(), 0, 0};
    for (const auto& o : mapped.outcomes) {
      if (!o.category) {
        ++counts.excluded;
        continue;
      }
      ++counts.kept;
      groups[normalize_term(o.term, lowercase)].push_back(
          {0, *o.category, std::string(to_string(o.provenance))});
    }
    report.resources.push_back(std::move(counts));
    report.input_records += report.resources.back().kept;
  }
  for (std::size_t r = 0; r < resources.size(); ++r) {
    const auto& res = resources[r];
    report.resources.push_back(
        {res.name,
         res.mode == ResourceMode::Fixed && res.fixed_category ? std::string(to_string(*res.fixed_category))
                                                               : std::string("Multiple"),
         res.ingested, res.kept(), res.excluded});
    report.input_records += res.kept();
    for (const auto& rec : res.records) {
      groups[normalize_term(rec.term, lowercase)].push_back({r + 1, rec.category, res.name});
    }
  }

  std::vector<std::string> conflicts;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> overlaps;
  std::set<std::pair<std::string, std::size_t>> warned;

  for (auto& [key, members] : groups) {
    // One category per source: its first row in input order.
    std::vector<std::pair<std::size_t, const Candidate*>> per_source;
    for (const auto& c : members) {
      auto it = std::find_if(per_source.begin(), per_source.end(),
                             [&](const auto& p) { return p.first == c.source; });
      if (it == per_source.end()) {
        per_source.emplace_back(c.source, &c);
      } else if (it->second->category != c.category && warned.emplace(key, c.source).second) {
        report.warnings.push_back(sources[c.source].name + " lists '" + key + "' as both " +
                                  std::string(to_string(it->second->category)) + " and " +
                                  std::string(to_string(c.category)) + "; first row kept");
      }
    }
    std::sort(per_source.begin(), per_source.end());

    int best_rank = sources[per_source.front().first].rank;
    for (const auto& [s, c] : per_source) best_rank = std::min(best_rank, sources[s].rank);

    const Candidate* winner = nullptr;
    bool conflict = false;
    for (const auto& [s, c] : per_source) {
      if (sources[s].rank != best_rank) continue;
      if (!winner) {
        winner = c;
      } else if (winner->category != c->category) {
        conflict = true;
      }
    }
    if (conflict) {
      std::string msg = key + ":";
      for (const auto& [s, c] : per_source) {
        if (sources[s].rank == best_rank) {
          msg += " " + sources[s].name + "=" + std::string(to_string(c->category));
        }
      }
      conflicts.push_back(std::move(msg));
      continue;
    }

    LexiconRecord rec;
    rec.term = key;
    rec.normalized_term = key;
    rec.category = winner->category;
    rec.provenance = winner->provenance;
    for (const auto& [s, c] : per_source) rec.sources.insert(sources[s].name);

    if (per_source.front().first == 0 && !sources[winner->source].mapped &&
        per_source.front().second->category != winner->category) {
      report.corrections.push_back(
          {key, per_source.front().second->category, winner->category, sources[winner->source].name});
    }
    for (std::size_t a = 0; a < per_source.size(); ++a) {
      for (std::size_t b = a + 1; b < per_source.size(); ++b) {
        ++overlaps[{per_source[a].first, per_source[b].first}];
      }
    }
    ++report.final_counts[index_of(rec.category)];
    result.records.push_back(std::move(rec));
  }
  if (!conflicts.empty()) throw MergeConflictError(std::move(conflicts));

  std::stable_sort(result.records.begin(), result.records.end(),
                   [](const LexiconRecord& x, const LexiconRecord& y) {
                     return x.normalized_term < y.normalized_term;
                   });
  for (const auto& [pair, count] : overlaps) {
    report.overlaps.push_back({sources[pair.first].name, sources[pair.second].name, count});
  }
  report.output_records = result.records.size();
  return result;
}

void apply_corrections(std::vector<MappingOutcome>& outcomes, std::span<const Correction> corrections,
                       bool lowercase) {
  std::unordered_map<std::string, const Correction*> by_term;
  for (const auto& c : corrections) by_term.emplace(c.term, &c);
  for (auto& o : outcomes) {
    if (!o.category) continue;
    auto it = by_term.find(normalize_term(o.term, lowercase));
    if (it != by_term.end() && it->second->from == *o.category) o.corrected_by = it->second->resource;
  }
}

// ---------------------------------------------------------------------------
// Export and reporting

void export_lexicon(std::ostream& out, std::span<const LexiconRecord> records, Format format) {
  if (format == Format::JsonLines) {
    for (const auto& r : records) {
      json obj = {{"term", r.term},
                  {"category", std::string(to_string(r.category))},
                  {"sources", std::vector<std::string>(r.sources.begin(), r.sources.end())},
                  {"provenance", r.provenance}};
      out << obj.dump() << '\n';
    }
    return;
  }
  out << "term\tcategory\tsources\tprovenance\n";
  for (const auto& r : records) {
    out << r.term << '\t' << to_string(r.category) << '\t'
        << join(std::vector<std::string>(r.sources.begin(), r.sources.end()), ",") << '\t'
        << r.provenance << '\n';
  }
}

void export_lexicon(const std::filesystem::path& path, std::span<const LexiconRecord> records,
                    Format format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  export_lexicon(out, records, format);
  out.flush();
  if (!out) throw IoError(path.string() + ": write failed");
}

std::string format_merge_report(const MergeReport& report) {
  std::string out;
  TextTable resources({"Resource", "Category", "# ingested", "# kept", "# excluded"});
  std::size_t ingested = 0, kept = 0, excluded = 0;
  for (const auto& r : report.resources) {
    resources.add_row({r.name, r.category, std::to_string(r.ingested), std::to_string(r.kept),
                       std::to_string(r.excluded)});
    ingested += r.ingested;
    kept += r.kept;
    excluded += r.excluded;
  }
  resources.add_rule();
  resources.add_row({"Total", "", std::to_string(ingested), std::to_string(kept), std::to_string(excluded)});
  out += resources.str();

  out += "\n";
  TextTable overlaps({"Source", "Overlaps with", "# terms"});
  for (const auto& o : report.overlaps) overlaps.add_row({o.a, o.b, std::to_string(o.terms)});
  out += overlaps.str();

  out += "\nCorrections of mapped categories: " + std::to_string(report.corrections.size()) + "\n";
  for (const auto& c : report.corrections) {
    out += "  " + c.term + ": " + std::string(to_string(c.from)) + " -> " + std::string(to_string(c.to)) +
           " (" + c.resource + ")\n";
  }

  out += "\n";
  TextTable finals({"Category", "# entries"});
  std::vector<std::pair<std::size_t, Category>> order;
  for (Category c : kAssignable) order.emplace_back(report.final_counts[index_of(c)], c);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [count, c] : order) finals.add_row({std::string(to_string(c)), std::to_string(count)});
  finals.add_rule();
  finals.add_row({"Total", std::to_string(report.output_records)});
  out += finals.str();
  out += "\nRecords before deduplication: " + std::to_string(report.input_records) + "\n";
  return out;
}

}  // namespace medlex
