#include "medlex/pipeline.hpp"

#include <exception>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <omp.h>

#include "medlex/error.hpp"
#include "medlex/report.hpp"
#include "medlex/text.hpp"

namespace medlex {

Resolution resolve_votes(std::span<const Vote> votes) {
  std::array<const Vote*, kStrategyCount> by_strategy{};
  for (const auto& v : votes) {
    auto& slot = by_strategy[static_cast<std::size_t>(v.strategy)];
    if (slot) {
      throw std::logic_error("resolve_votes: strategy " + std::string(to_string(v.strategy)) +
                             " voted twice");
    }
    slot = &v;
  }
  if (votes.empty()) return {};
  bool unanimous = true;
  for (const auto& v : votes) unanimous = unanimous && v.category == votes.front().category;
  if (votes.size() >= 2 && unanimous) return {votes.front().category, Provenance::Multi};
  for (const Vote* v : by_strategy) {
    if (v) return {v->category, provenance_of(v->strategy)};
  }
  return {};
}

EntryAnalysis analyze_entry(const Entry& entry, const MapConfig& config) {
  EntryAnalysis a;
  a.key = normalize_term(entry.term, true);

  if (!entry.senses.empty()) {
    const Definition& def = entry.senses.front();
    if (def.tokens) {
      a.tagger = Tagger::Conllu;
      a.first_noun = extract_first_noun(*def.tokens, config.stops);
    } else if (!trim_ascii(def.text).empty()) {
      a.tagger = Tagger::Heuristic;
      const auto tokens = heuristic_tag(def.text, config.function_words);
      a.first_noun = extract_first_noun(tokens, config.stops);
    }
  }

  if (auto v = suffix_vote(a.key, config.suffixes)) a.votes.push_back(std::move(*v));
  if (auto v = kw_entry_vote(a.key, config.keywords)) a.votes.push_back(std::move(*v));
  if (auto v = kw_firstnoun_vote(a.first_noun, config.keywords)) a.votes.push_back(std::move(*v));
  a.resolution = resolve_votes(a.votes);
  return a;
}

std::vector<Entry> resolve_synonyms(std::span<const Entry> entries) {
  std::unordered_map<std::string, std::size_t> by_id;
  by_id.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!by_id.emplace(entries[i].id, i).second) {
      throw std::invalid_argument("duplicate entry id '" + entries[i].id + "'");
    }
  }
  std::vector<Entry> out(entries.begin(), entries.end());
  for (auto& e : out) {
    if (!e.synonym_of) continue;
    const bool has_definition =
        !e.senses.empty() && (e.senses.front().tokens || !trim_ascii(e.senses.front().text).empty());
    if (has_definition) continue;
    auto it = by_id.find(*e.synonym_of);
    if (it == by_id.end()) {
      throw ParseError("<dictionary>", 0,
                       "entry '" + e.id + "' is a synonym of unknown entry '" + *e.synonym_of + "'");
    }
    e.senses = entries[it->second].senses;
  }
  return out;
}

namespace {

MappingOutcome to_outcome(const Entry& e, EntryAnalysis&& a) {
  MappingOutcome o;
  o.entry_id = e.id;
  o.term = normalize_term(e.term, false);
  o.category = a.resolution.category;
  o.provenance = a.resolution.provenance;
  o.votes = std::move(a.votes);
  o.tagger = a.tagger;
  return o;
}

void verify(std::span<const MappingOutcome> outcomes) {
  for (const auto& o : outcomes) {
    if (auto err = check_outcome(o)) {
      throw std::logic_error("outcome for '" + o.entry_id + "' violates invariant: " + *err);
    }
  }
}

struct IterIndexEntry {
  Category category;
  std::size_t first;
};

// Mapped term -> category of its earliest mapped occurrence in input order.
std::unordered_map<std::string, IterIndexEntry> build_iter_index(
    std::span<const MappingOutcome> outcomes, std::span<const EntryAnalysis> analysis,
    std::set<std::string>& warned, std::vector<std::string>& warnings) {
  std::unordered_map<std::string, IterIndexEntry> index;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].category) continue;
    auto [it, inserted] = index.emplace(analysis[i].key, IterIndexEntry{*outcomes[i].category, i});
    if (!inserted && it->second.category != *outcomes[i].category &&
        warned.insert(analysis[i].key).second) {
      warnings.push_back("term '" + analysis[i].key + "' is mapped to both " +
                         std::string(to_string(it->second.category)) + " (entry '" +
                         outcomes[it->second.first].entry_id + "') and " +
                         std::string(to_string(*outcomes[i].category)) + " (entry '" +
                         outcomes[i].entry_id + "'); ITER uses the first");
    }
  }
  return index;
}

}  // namespace

MapResult map_dictionary(std::span<const Entry> entries, const MapConfig& config, int threads) {
  if (config.iter_rounds < 0) throw std::invalid_argument("iter_rounds must be >= 0");
  const std::vector<Entry> prepared = resolve_synonyms(entries);
  const auto n = static_cast<std::ptrdiff_t>(prepared.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

  std::vector<EntryAnalysis> analysis(prepared.size());
  std::vector<MappingOutcome> outcomes(prepared.size());
  std::vector<std::exception_ptr> errors(prepared.size());

#pragma omp parallel for schedule(dynamic, 64) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      analysis[k] = analyze_entry(prepared[k], config);
      EntryAnalysis copy = analysis[k];
      outcomes[k] = to_outcome(prepared[k], std::move(copy));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  MapResult result;
  auto count_mapped = [&] {
    std::size_t mapped = 0;
    for (const auto& o : outcomes) mapped += o.category.has_value();
    return mapped;
  };
  result.mapped_per_round.push_back(count_mapped());

  std::set<std::string> warned;
  std::vector<std::optional<Category>> propagated(prepared.size());
  for (int round = 0; round < config.iter_rounds; ++round) {
    const auto index = build_iter_index(outcomes, analysis, warned, result.warnings);

#pragma omp parallel for schedule(static) num_threads(nthreads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      propagated[k].reset();
      if (outcomes[k].category || !analysis[k].first_noun) continue;
      if (auto it = index.find(*analysis[k].first_noun); it != index.end()) {
        propagated[k] = it->second.category;
      }
    }

    for (std::size_t k = 0; k < prepared.size(); ++k) {
      if (!propagated[k]) continue;
      outcomes[k].category = propagated[k];
      outcomes[k].provenance = Provenance::Iter;
    }
    result.mapped_per_round.push_back(count_mapped());
  }

  verify(outcomes);
  result.outcomes = std::move(outcomes);
  return result;
}

MappingStats mapping_stats(std::span<const MappingOutcome> outcomes) {
  MappingStats s;
  for (const auto& o : outcomes) {
    const auto p = static_cast<std::size_t>(o.provenance);
    ++s.per_provenance[p];
    if (o.disagreement()) ++s.disagreements[p];
    if (o.category) {
      ++s.per_category[index_of(*o.category)];
      ++s.mapped;
    } else {
      ++s.unmapped;
    }
  }
  return s;
}

std::string format_stats(const MappingStats& stats) {
  TextTable categories({"Category", "# entries"});
  for (Category c : kAssignable) {
    categories.add_row({std::string(to_string(c)), std::to_string(stats.per_category[index_of(c)])});
  }
  categories.add_rule();
  categories.add_row({"Total mapped", std::to_string(stats.mapped)});
  categories.add_row({"Not mapped", std::to_string(stats.unmapped)});
  categories.add_rule();
  categories.add_row({"Total", std::to_string(stats.total())});

  TextTable strategies({"Strategy", "# entries", "disagreements"});
  for (Provenance p : {Provenance::Suff, Provenance::KwE, Provenance::Kw1N, Provenance::Multi,
                       Provenance::Iter}) {
    const auto k = static_cast<std::size_t>(p);
    strategies.add_row({std::string(to_string(p)), std::to_string(stats.per_provenance[k]),
                        std::to_string(stats.disagreements[k])});
  }
  strategies.add_rule();
  strategies.add_row({"Total", std::to_string(stats.mapped), ""});

  return categories.str() + "\n" + strategies.str();
}

}  // namespace medlex
