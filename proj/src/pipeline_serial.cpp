#include <map>
#include <stdexcept>

#include "medlex/pipeline.hpp"
#include "medlex/text.hpp"

namespace medlex::reference {

MapResult map_dictionary(std::span<const Entry> entries, const MapConfig& config) {
  if (config.iter_rounds < 0) throw std::invalid_argument("iter_rounds must be >= 0");
  const std::vector<Entry> prepared = resolve_synonyms(entries);

  std::vector<EntryAnalysis> analysis;
  std::vector<MappingOutcome> outcomes;
  analysis.reserve(prepared.size());
  outcomes.reserve(prepared.size());
  for (const auto& e : prepared) {
    analysis.push_back(analyze_entry(e, config));
    MappingOutcome o;
    o.entry_id = e.id;
    o.term = normalize_term(e.term, false);
    o.category = analysis.back().resolution.category;
    o.provenance = analysis.back().resolution.provenance;
    o.votes = analysis.back().votes;
    o.tagger = analysis.back().tagger;
    outcomes.push_back(std::move(o));
  }

  MapResult result;
  auto count_mapped = [&] {
    std::size_t mapped = 0;
    for (const auto& o : outcomes) mapped += o.category.has_value();
    return mapped;
  };
  result.mapped_per_round.push_back(count_mapped());

  for (int round = 0; round < config.iter_rounds; ++round) {
    std::map<std::string, Category> mapped_terms;
    for (std::size_t j = 0; j < outcomes.size(); ++j) {
      if (outcomes[j].category) mapped_terms.try_emplace(analysis[j].key, *outcomes[j].category);
    }
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (outcomes[i].category || !analysis[i].first_noun) continue;
      if (auto it = mapped_terms.find(*analysis[i].first_noun); it != mapped_terms.end()) {
        outcomes[i].category = it->second;
        outcomes[i].provenance = Provenance::Iter;
      }
    }
    result.mapped_per_round.push_back(count_mapped());
  }

  result.outcomes = std::move(outcomes);
  return result;
}

}  // namespace medlex::reference
