#include "medlex/eval.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "medlex/error.hpp"
#include "medlex/report.hpp"
#include "medlex/text.hpp"

namespace medlex {

// ---------------------------------------------------------------------------
// Overlap

std::optional<double> OverlapResult::percent_correct() const {
  if (total.overlap == 0) return std::nullopt;
  return 100.0 * static_cast<double>(total.correct) / static_cast<double>(total.overlap);
}

OverlapResult overlap_eval(std::span<const MappingOutcome> mapped, std::span<const ResourceRecord> resource,
                           bool lowercase) {
  std::unordered_map<std::string, Category> predicted;
  for (const auto& o : mapped) {
    if (o.category) predicted.emplace(normalize_term(o.term, lowercase), *o.category);
  }
  std::unordered_map<std::string, Category> reference;
  OverlapResult result;
  for (const auto& rec : resource) {
    const std::string key = normalize_term(rec.term, lowercase);
    if (!reference.emplace(key, rec.category).second) continue;
    auto it = predicted.find(key);
    if (it == predicted.end()) continue;
    auto& cell = result.by_category[index_of(rec.category)];
    ++cell.overlap;
    ++result.total.overlap;
    if (it->second == rec.category) {
      ++cell.correct;
      ++result.total.correct;
    }
  }
  return result;
}

std::string format_overlap_report(std::span<const OverlapRow> rows) {
  TextTable table({"Resource", "# overlap", "Correct (%)", "Category"});
  OverlapCount pooled;
  for (const auto& r : rows) {
    table.add_row({r.resource, std::to_string(r.result.total.overlap),
                   format_percent(r.result.total.correct, r.result.total.overlap), r.category});
    pooled.overlap += r.result.total.overlap;
    pooled.correct += r.result.total.correct;
  }
  table.add_rule();
  table.add_row({"Total", std::to_string(pooled.overlap), format_percent(pooled.correct, pooled.overlap), ""});
  return table.str();
}

std::string overlap_report_tsv(std::span<const OverlapRow> rows) {
  std::ostringstream out;
  out << "resource\tcategory\toverlap\tcorrect\tpercent_correct\n";
  for (const auto& r : rows) {
    out << r.resource << "\t*\t" << r.result.total.overlap << '\t' << r.result.total.correct << '\t'
        << format_percent(r.result.total.correct, r.result.total.overlap) << '\n';
    for (Category c : kAssignable) {
      const auto& cell = r.result.by_category[index_of(c)];
      if (cell.overlap == 0) continue;
      out << r.resource << '\t' << to_string(c) << '\t' << cell.overlap << '\t' << cell.correct << '\t'
          << format_percent(cell.correct, cell.overlap) << '\n';
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

// Unbiased draw from [0, n) by rejection; std distributions are not
// reproducible across standard library implementations.
std::size_t uniform_below(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<std::size_t>(x % bound);
}

}  // namespace

std::vector<std::string> stratified_sample(std::span<const MappingOutcome> outcomes, std::size_t quota,
                                           std::uint64_t seed) {
  if (quota == 0) throw std::invalid_argument("quota must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<char> selected(outcomes.size(), 0);

  std::array<std::vector<std::size_t>, kAssignableCount> by_category;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].category) by_category[index_of(*outcomes[i].category)].push_back(i);
  }

  for (Category c : kAssignable) {
    const auto& members = by_category[index_of(c)];
    if (members.size() <= quota) {
      for (std::size_t i : members) selected[i] = 1;
      continue;
    }
    std::array<std::vector<std::size_t>, kSampleStrata.size()> strata;
    for (std::size_t i : members) {
      for (std::size_t s = 0; s < kSampleStrata.size(); ++s) {
        if (outcomes[i].provenance == kSampleStrata[s]) strata[s].push_back(i);
      }
    }
    std::array<std::size_t, kSampleStrata.size()> take{};
    std::size_t remaining = quota;
    while (remaining > 0) {
      for (std::size_t s = 0; s < strata.size() && remaining > 0; ++s) {
        if (take[s] < strata[s].size()) {
          ++take[s];
          --remaining;
        }
      }
    }
    for (std::size_t s = 0; s < strata.size(); ++s) {
      auto& pool = strata[s];
      for (std::size_t k = 0; k < take[s]; ++k) {
        const std::size_t j = k + uniform_below(rng, pool.size() - k);
        std::swap(pool[k], pool[j]);
        selected[pool[k]] = 1;
      }
    }
  }

  std::vector<std::string> ids;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (selected[i]) ids.push_back(outcomes[i].entry_id);
  }
  return ids;
}

// ---------------------------------------------------------------------------
// Scoring

LabelGroup parse_label_group(std::string_view text) {
  LabelGroup group;
  group.name = std::string(trim_ascii(text));
  for (auto part : split(group.name, '+')) {
    const Category c = category_from_string(part);
    if (std::find(group.members.begin(), group.members.end(), c) != group.members.end()) {
      throw std::invalid_argument("label group '" + group.name + "' repeats a member");
    }
    group.members.push_back(c);
  }
  if (group.members.size() < 2) throw std::invalid_argument("label group '" + group.name + "' needs two labels");
  return group;
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {}

std::size_t ConfusionMatrix::row_sum(std::size_t gold) const {
  std::size_t s = 0;
  for (std::size_t p = 0; p < size(); ++p) s += at(gold, p);
  return s;
}

std::size_t ConfusionMatrix::col_sum(std::size_t predicted) const {
  std::size_t s = 0;
  for (std::size_t g = 0; g < size(); ++g) s += at(g, predicted);
  return s;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t s = 0;
  for (std::size_t c : counts_) s += c;
  return s;
}

std::string ConfusionMatrix::to_csv() const {
  std::string out = "gold\\predicted";
  for (const auto& l : labels_) out += "," + l;
  out += '\n';
  for (std::size_t g = 0; g < size(); ++g) {
    out += labels_[g];
    for (std::size_t p = 0; p < size(); ++p) out += "," + std::to_string(at(g, p));
    out += '\n';
  }
  return out;
}

EvalReport score(const LabelMap& gold, const LabelMap& predicted, const ScoreOptions& options) {
  // Label space: one slot per category, groups take the slot of their first
  // member in canonical order.
  std::array<std::optional<std::size_t>, kLabelCount> slot{};
  std::vector<std::string> labels;
  std::array<int, kLabelCount> group_of{};
  group_of.fill(-1);
  for (std::size_t g = 0; g < options.merge_groups.size(); ++g) {
    for (Category c : options.merge_groups[g].members) {
      if (group_of[index_of(c)] >= 0) {
        throw std::invalid_argument(std::string(to_string(c)) + " appears in more than one label group");
      }
      group_of[index_of(c)] = static_cast<int>(g);
    }
  }
  std::vector<std::optional<std::size_t>> group_slot(options.merge_groups.size());
  for (Category c : kAllLabels) {
    if (c == Category::Other && options.exclude_other) continue;
    const int g = group_of[index_of(c)];
    if (g >= 0) {
      auto& gs = group_slot[static_cast<std::size_t>(g)];
      if (!gs) {
        gs = labels.size();
        labels.push_back(options.merge_groups[static_cast<std::size_t>(g)].name);
      }
      slot[index_of(c)] = gs;
    } else {
      slot[index_of(c)] = labels.size();
      labels.emplace_back(to_string(c));
    }
  }
  // Excluded OTHER still needs a slot for the with-OTHER accuracy.
  auto label_of = [&](Category c) -> std::size_t {
    return slot[index_of(c)] ? *slot[index_of(c)] : std::numeric_limits<std::size_t>::max();
  };

  for (const auto& [term, label] : gold) {
    if (!predicted.contains(term)) throw MissingPredictionError(term);
  }
  for (const auto& [term, label] : predicted) {
    if (!is_assignable(label)) throw std::invalid_argument("prediction for '" + term + "' is OTHER");
  }

  EvalReport report;
  report.matrix = ConfusionMatrix(labels);
  for (const auto& [term, g] : gold) {
    const Category p = predicted.at(term);
    const bool hit = g != Category::Other && label_of(g) == label_of(p);
    ++report.scored_with_other;
    report.matched_with_other += hit;
    if (g != Category::Other) {
      ++report.scored_without_other;
      report.matched_without_other += hit;
    }
    if (g == Category::Other && options.exclude_other) continue;
    report.matrix.add(label_of(g), label_of(p));
  }

  std::vector<std::size_t> global_pred(labels.size(), 0);
  if (options.global_precision) {
    for (const auto& [term, p] : predicted) ++global_pred[label_of(p)];
  }

  double psum = 0.0, rsum = 0.0;
  std::size_t pn = 0, rn = 0;
  for (std::size_t l = 0; l < labels.size(); ++l) {
    LabelScore row;
    row.label = labels[l];
    row.gold = report.matrix.row_sum(l);
    row.predicted = options.global_precision ? global_pred[l] : report.matrix.col_sum(l);
    row.matched = report.matrix.at(l, l);
    if (row.predicted > 0) {
      row.precision = static_cast<double>(row.matched) / static_cast<double>(row.predicted);
      psum += *row.precision;
      ++pn;
    }
    if (row.gold > 0) {
      row.recall = static_cast<double>(row.matched) / static_cast<double>(row.gold);
      rsum += *row.recall;
      ++rn;
    }
    report.matched += row.matched;
    report.rows.push_back(std::move(row));
  }
  report.scored = report.matrix.total();
  report.accuracy = report.scored ? static_cast<double>(report.matched) / static_cast<double>(report.scored) : 0.0;
  if (pn) report.macro_precision = psum / static_cast<double>(pn);
  if (rn) report.macro_recall = rsum / static_cast<double>(rn);
  return report;
}

LabelMap predictions_from(std::span<const MappingOutcome> outcomes) {
  LabelMap out;
  for (const auto& o : outcomes) {
    if (o.category) out.emplace(normalize_term(o.term, true), *o.category);
  }
  return out;
}

std::vector<StrategyAccuracy> strategy_accuracy(const LabelMap& gold, std::span<const MappingOutcome> outcomes) {
  constexpr std::array<Provenance, 5> order = {Provenance::Suff, Provenance::KwE, Provenance::Kw1N,
                                               Provenance::Iter, Provenance::Multi};
  std::array<StrategyAccuracy, kProvenanceCount> acc{};
  for (const auto& o : outcomes) {
    if (!o.category) continue;
    auto it = gold.find(normalize_term(o.term, true));
    if (it == gold.end()) continue;
    auto& a = acc[static_cast<std::size_t>(o.provenance)];
    ++a.total;
    a.correct += it->second == *o.category;
  }
  std::vector<StrategyAccuracy> rows;
  for (Provenance p : order) {
    auto a = acc[static_cast<std::size_t>(p)];
    if (a.total == 0) continue;
    a.provenance = p;
    rows.push_back(a);
  }
  return rows;
}

namespace {

std::string fixed3(const std::optional<double>& v) {
  if (!v) return "N/A";
  // Report rounding for the averaged values: half-up on the third decimal.
  const auto thousandths = static_cast<long long>(*v * 1000.0 + 0.5 + 1e-9);
  std::string frac = std::to_string(thousandths % 1000);
  return std::to_string(thousandths / 1000) + "." + std::string(3 - frac.size(), '0') + frac;
}

}  // namespace

std::string format_score_report(const EvalReport& report, std::string_view title) {
  std::string out(title);
  out += "\n";
  TextTable table({"Category", "Prec", "Recall", "#"});
  for (const auto& r : report.rows) {
    table.add_row({r.label, format_ratio(r.matched, r.predicted), format_ratio(r.matched, r.gold),
                   std::to_string(r.gold)});
  }
  table.add_rule();
  table.add_row({"Total (macro)", fixed3(report.macro_precision), fixed3(report.macro_recall),
                 std::to_string(report.scored)});
  table.add_row({"Total (micro)", format_ratio(report.matched, report.scored),
                 format_ratio(report.matched, report.scored), std::to_string(report.scored)});
  out += table.str();
  out += "Correct including OTHER: " + format_percent(report.matched_with_other, report.scored_with_other) +
         "% (" + std::to_string(report.matched_with_other) + "/" + std::to_string(report.scored_with_other) + ")\n";
  out += "Correct excluding OTHER: " +
         format_percent(report.matched_without_other, report.scored_without_other) + "% (" +
         std::to_string(report.matched_without_other) + "/" + std::to_string(report.scored_without_other) + ")\n";
  return out;
}

std::string score_report_tsv(const EvalReport& report) {
  std::string out = "label\tgold\tpredicted\tmatched\tprecision\trecall\n";
  for (const auto& r : report.rows) {
    out += r.label + "\t" + std::to_string(r.gold) + "\t" + std::to_string(r.predicted) + "\t" +
           std::to_string(r.matched) + "\t" + format_ratio(r.matched, r.predicted) + "\t" +
           format_ratio(r.matched, r.gold) + "\n";
  }
  out += "TOTAL_MICRO\t" + std::to_string(report.scored) + "\t" + std::to_string(report.scored) + "\t" +
         std::to_string(report.matched) + "\t" + format_ratio(report.matched, report.scored) + "\t" +
         format_ratio(report.matched, report.scored) + "\n";
  out += "TOTAL_MACRO\t" + std::to_string(report.scored) + "\t\t\t" + fixed3(report.macro_precision) + "\t" +
         fixed3(report.macro_recall) + "\n";
  return out;
}

std::string format_strategy_accuracy(std::span<const StrategyAccuracy> rows) {
  TextTable table({"Strategy", "# evaluated", "# correct", "Correct (%)"});
  for (const auto& r : rows) {
    table.add_row({std::string(to_string(r.provenance)), std::to_string(r.total), std::to_string(r.correct),
                   format_percent(r.correct, r.total)});
  }
  return table.str();
}

}  // namespace medlex
