#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "medlex/merge.hpp"
#include "medlex/model.hpp"

namespace medlex {

using LabelMap = std::map<std::string, Category>;

// ---------------------------------------------------------------------------
// Overlap evaluation against an external resource.

struct OverlapCount {
  std::size_t overlap = 0;
  std::size_t correct = 0;

  friend bool operator==(const OverlapCount&, const OverlapCount&) = default;
};

struct OverlapResult {
  OverlapCount total;
  std::array<OverlapCount, kAssignableCount> by_category{};  // keyed by the resource's category

  /// 100 * correct / overlap, nullopt when nothing overlaps.
  std::optional<double> percent_correct() const;
};

/// Terms present in both the mapped dictionary and the resource; a term is
/// correct when both assign the same category. Only the first occurrence of
/// a term on either side counts.
OverlapResult overlap_eval(std::span<const MappingOutcome> mapped, std::span<const ResourceRecord> resource,
                           bool lowercase = true);

struct OverlapRow {
  std::string resource;
  std::string category;
  OverlapResult result;
};

/// Per-resource overlap table plus a pooled total row.
std::string format_overlap_report(std::span<const OverlapRow> rows);
std::string overlap_report_tsv(std::span<const OverlapRow> rows);

// ---------------------------------------------------------------------------
// Stratified sampling for manual evaluation.

/// Provenance strata visited round-robin by the sampler.
inline constexpr std::array<Provenance, 5> kSampleStrata = {
    Provenance::Suff, Provenance::KwE, Provenance::Kw1N, Provenance::Multi, Provenance::Iter};

/// Per category: every mapped entry when there are at most `quota`,
/// otherwise `quota` entries spread round-robin over the provenance strata and
/// drawn at random within each stratum. Returned ids follow input order.
std::vector<std::string> stratified_sample(std::span<const MappingOutcome> outcomes, std::size_t quota,
                                           std::uint64_t seed);

// ---------------------------------------------------------------------------
// Gold-label scoring.

/// Labels collapsed into one row/column, e.g. {"ORG+SER", {ORGANIZATION, SERVICE}}.
struct LabelGroup {
  std::string name;
  std::vector<Category> members;
};

/// "ORG+SER" or "ORGANIZATION+SERVICE"; throws std::invalid_argument.
LabelGroup parse_label_group(std::string_view text);

struct ScoreOptions {
  std::vector<LabelGroup> merge_groups;
  bool exclude_other = false;
  /// Count predictions over the whole predicted map for precision
  /// denominators instead of only the scored terms.
  bool global_precision = false;
};

class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t at(std::size_t gold, std::size_t predicted) const { return counts_[gold * size() + predicted]; }
  void add(std::size_t gold, std::size_t predicted) { ++counts_[gold * size() + predicted]; }

  std::size_t row_sum(std::size_t gold) const;
  std::size_t col_sum(std::size_t predicted) const;
  std::size_t total() const;

  /// Header row of labels, then one row per gold label.
  std::string to_csv() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> counts_;
};

struct LabelScore {
  std::string label;
  std::size_t gold = 0;       // terms with this gold label
  std::size_t predicted = 0;  // precision denominator
  std::size_t matched = 0;
  std::optional<double> precision;
  std::optional<double> recall;
};

struct EvalReport {
  std::vector<LabelScore> rows;  // same order as matrix labels
  ConfusionMatrix matrix{{}};
  std::size_t scored = 0;
  std::size_t matched = 0;
  double accuracy = 0.0;
  std::size_t matched_with_other = 0;  // OTHER terms kept, all counted wrong
  std::size_t scored_with_other = 0;
  std::size_t matched_without_other = 0;
  std::size_t scored_without_other = 0;
  std::optional<double> macro_precision;  // mean over rows with a defined value
  std::optional<double> macro_recall;
};

/// Scores gold labels against predictions. Every gold term must have a
/// prediction (MissingPredictionError otherwise).
EvalReport score(const LabelMap& gold, const LabelMap& predicted, const ScoreOptions& options = {});

struct StrategyAccuracy {
  Provenance provenance = Provenance::Suff;
  std::size_t total = 0;
  std::size_t correct = 0;
};

/// Share of correct outcomes per provenance over the gold-labelled mapped
/// outcomes. Provenances without outcomes are omitted.
std::vector<StrategyAccuracy> strategy_accuracy(const LabelMap& gold, std::span<const MappingOutcome> outcomes);

/// Lowercase normalized term -> category of the first mapped outcome.
LabelMap predictions_from(std::span<const MappingOutcome> outcomes);

std::string format_score_report(const EvalReport& report, std::string_view title);
std::string score_report_tsv(const EvalReport& report);
std::string format_strategy_accuracy(std::span<const StrategyAccuracy> rows);

}  // namespace medlex
