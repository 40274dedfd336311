#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "medlex/io.hpp"
#include "medlex/model.hpp"

namespace medlex {

enum class ResourceMode { Fixed, PerEntry, Chaptered };

std::string_view to_string(ResourceMode m);

/// Where rows of a chapter go: a category, or dropped.
struct RuleTarget {
  bool exclude = false;
  Category category = Category::Condition;

  static RuleTarget excluded() { return {true, Category::Condition}; }
  static RuleTarget to(Category c) { return {false, c}; }
};

/// `pattern` is matched case-insensitively against the whole chapter value;
/// '*' and '?' are wildcards.
struct ChapterRule {
  std::string pattern;
  RuleTarget target;
};

/// 1-based column numbers of a resource file.
struct ColumnLayout {
  std::size_t term = 1;
  std::optional<std::size_t> category;
  std::optional<std::size_t> chapter;
  std::optional<std::size_t> code;
  bool header = false;
};

struct ResourceSpec {
  std::string name;
  ResourceMode mode = ResourceMode::Fixed;
  std::optional<Category> fixed_category;     // FIXED
  std::vector<ChapterRule> chapter_rules;     // CHAPTERED, first match wins
  std::optional<RuleTarget> chapter_default;  // CHAPTERED
  int trust_rank = 0;                         // lower is more trusted
  std::filesystem::path file;
  ColumnLayout layout;

  /// Throws std::invalid_argument if mode-specific fields are inconsistent.
  void validate() const;
};

bool chapter_matches(std::string_view pattern, std::string_view chapter);

/// Manifest: TSV with header
/// `name  file  mode  category  rules  trust_rank  layout`, or a JSON array of
/// objects with the same keys. Relative file paths resolve against the
/// manifest's directory. Throws ParseError.
std::vector<ResourceSpec> read_manifest(const std::filesystem::path& path);
std::vector<ResourceSpec> read_manifest(std::istream& in, Format format, const std::string& source,
                                        const std::filesystem::path& base_dir);

struct ResourceRecord {
  std::string term;
  Category category = Category::Condition;
  std::string source;
  std::optional<std::string> code;
  std::size_t line = 0;
};

struct IngestResult {
  std::string name;
  int trust_rank = 0;
  ResourceMode mode = ResourceMode::Fixed;
  std::optional<Category> fixed_category;
  std::vector<ResourceRecord> records;
  std::size_t ingested = 0;
  std::size_t excluded = 0;

  std::size_t kept() const { return records.size(); }
};

/// Reads one resource file according to its spec. Throws ParseError with the
/// row number for unknown categories and unmatched chapters.
IngestResult ingest_resource(const ResourceSpec& spec);
IngestResult ingest_resource(const ResourceSpec& spec, std::istream& in, const std::string& source);

/// Ingests all resources, one OpenMP task per file. Errors are rethrown in
/// manifest order.
std::vector<IngestResult> ingest_all(std::span<const ResourceSpec> specs, int threads = 0);

/// The automatically mapped dictionary as a merge input.
struct MappedSource {
  std::string name = "MO";
  int trust_rank = 100;
  std::span<const MappingOutcome> outcomes;
};

struct ResourceCounts {
  std::string name;
  std::string category;  // category name or "Multiple"
  std::size_t ingested = 0;
  std::size_t kept = 0;
  std::size_t excluded = 0;
};

struct OverlapPair {
  std::string a;
  std::string b;
  std::size_t terms = 0;
};

struct Correction {
  std::string term;
  Category from = Category::Condition;
  Category to = Category::Condition;
  std::string resource;

  friend bool operator==(const Correction&, const Correction&) = default;
};

struct MergeReport {
  std::vector<ResourceCounts> resources;  // mapped dictionary first
  std::vector<OverlapPair> overlaps;
  std::vector<Correction> corrections;
  std::array<std::size_t, kAssignableCount> final_counts{};
  std::size_t input_records = 0;
  std::size_t output_records = 0;
  std::vector<std::string> warnings;
};

struct MergeResult {
  std::vector<LexiconRecord> records;  // sorted by normalized term
  MergeReport report;
};

/// Groups every categorized record by normalized term (lowercased when
/// `lowercase` is set) and keeps one record per group. The most trusted
/// source decides the category; overriding a mapped-dictionary category logs
/// a correction. Throws MergeConflictError when equally trusted sources
/// disagree.
MergeResult merge_lexicons(const MappedSource& mapped, std::span<const IngestResult> resources,
                           bool lowercase);

/// Marks `corrected_by` on mapped outcomes overridden during a merge. The
/// mapped category itself is left as the strategies produced it.
void apply_corrections(std::vector<MappingOutcome>& outcomes, std::span<const Correction> corrections,
                       bool lowercase);

/// TSV `term, category, sources, provenance` with a header, or JSON lines.
void export_lexicon(std::ostream& out, std::span<const LexiconRecord> records, Format format);
void export_lexicon(const std::filesystem::path& path, std::span<const LexiconRecord> records,
                    Format format);

std::string format_merge_report(const MergeReport& report);

}  // namespace medlex
