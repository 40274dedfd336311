#include "medlex/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <CLI11.hpp>

#include "medlex/error.hpp"
#include "medlex/eval.hpp"
#include "medlex/io.hpp"
#include "medlex/merge.hpp"
#include "medlex/pipeline.hpp"

namespace medlex::cli {

namespace fs = std::filesystem;

namespace {

struct MapOptions {
  std::string dict, suffixes, keywords, stops, function_words, conllu, out;
  std::string format = "tsv";
  int iter = 1;
  bool lax = false;
};

struct MergeOptions {
  std::string manifest, mapped, out, report;
  std::string format = "tsv";
  std::string mapped_name = "MO";
  int mapped_rank = 100;
  bool lowercase = false;
};

struct OverlapOptions {
  std::string mapped, manifest, out;
  bool case_sensitive = false;
};

struct GoldOptions {
  std::string gold, mapped, out, matrix;
  std::vector<std::string> merge_labels;
  bool exclude_other = false;
  bool global_precision = false;
};

struct SampleOptions {
  std::string mapped, out;
  std::size_t quota = 100;
  std::uint64_t seed = 0;
  bool blind = false;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError(path + ": cannot open for writing");
  f << content;
  f.flush();
  if (!f) throw IoError(path + ": write failed");
}

std::vector<MappingOutcome> load_outcomes(const std::string& path) {
  auto in = open_input(path);
  return read_outcomes(in, path);
}

int cmd_map(const MapOptions& o, int threads, std::ostream& out, std::ostream& err) {
  MapConfig config;
  std::vector<std::string> findings;

  if (!o.suffixes.empty()) {
    auto in = open_input(o.suffixes);
    auto table = read_table(in, o.suffixes);
    findings.insert(findings.end(), table.findings.begin(), table.findings.end());
    config.suffixes = SuffixTable(std::move(table.rows));
  }
  for (auto& f : config.suffixes.lint()) findings.push_back("suffix table: " + f);
  if (!o.keywords.empty()) {
    auto in = open_input(o.keywords);
    auto table = read_table(in, o.keywords);
    findings.insert(findings.end(), table.findings.begin(), table.findings.end());
    config.keywords = KeywordTable(std::move(table.rows));
  }
  if (!o.stops.empty()) {
    auto in = open_input(o.stops);
    config.stops = read_stoplist(in, o.stops);
  }
  if (!o.function_words.empty()) {
    auto in = open_input(o.function_words);
    config.function_words = read_word_list(in, o.function_words);
  }
  if (!findings.empty()) {
    if (!o.lax) throw LintError(findings);
    for (const auto& f : findings) err << "warning: " << f << '\n';
  }
  config.iter_rounds = o.iter;

  std::vector<Entry> entries;
  {
    auto in = open_input(o.dict);
    entries = read_dictionary(in, format_for_path(o.dict), o.dict);
  }
  if (!o.conllu.empty()) {
    std::unordered_set<std::string> ids;
    for (const auto& e : entries) ids.insert(e.id);
    std::vector<std::string> warnings;
    auto in = open_input(o.conllu);
    attach_tokens(entries, ingest_conllu(in, ids, &warnings, o.conllu));
    for (const auto& w : warnings) err << "warning: " << w << '\n';
  }

  const MapResult result = map_dictionary(entries, config, threads);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';

  const Format format = parse_format(o.format);
  if (o.out.empty()) {
    write_outcomes(out, result.outcomes, format);
  } else {
    std::ostringstream buf;
    write_outcomes(buf, result.outcomes, format);
    write_file(o.out, buf.str());
    out << format_stats(mapping_stats(result.outcomes));
  }
  return kOk;
}

int cmd_merge(const MergeOptions& o, int threads, std::ostream& out) {
  const auto specs = read_manifest(o.manifest);
  const auto outcomes = load_outcomes(o.mapped);
  const auto resources = ingest_all(specs, threads);
  const MergeResult merged =
      merge_lexicons(MappedSource{o.mapped_name, o.mapped_rank, outcomes}, resources, o.lowercase);

  std::ostringstream buf;
  export_lexicon(buf, merged.records, parse_format(o.format));
  write_file(o.out, buf.str());

  std::string report = format_merge_report(merged.report);
  for (const auto& w : merged.report.warnings) report += "warning: " + w + "\n";
  if (!o.report.empty()) write_file(o.report, report);
  out << report;
  return kOk;
}

int cmd_overlap(const OverlapOptions& o, int threads, std::ostream& out) {
  const auto specs = read_manifest(o.manifest);
  const auto outcomes = load_outcomes(o.mapped);
  const auto resources = ingest_all(specs, threads);
  std::vector<OverlapRow> rows;
  for (const auto& r : resources) {
    rows.push_back({r.name,
                    r.mode == ResourceMode::Fixed && r.fixed_category ? std::string(to_string(*r.fixed_category))
                                                                      : std::string("Multiple"),
                    overlap_eval(outcomes, r.records, !o.case_sensitive)});
  }
  if (!o.out.empty()) write_file(o.out, overlap_report_tsv(rows));
  out << format_overlap_report(rows);
  return kOk;
}

int cmd_gold(const GoldOptions& o, std::ostream& out) {
  LabelMap gold;
  {
    auto in = open_input(o.gold);
    gold = read_gold(in, o.gold);
  }
  const auto outcomes = load_outcomes(o.mapped);
  const LabelMap predicted = predictions_from(outcomes);

  ScoreOptions plain;
  plain.exclude_other = o.exclude_other;
  plain.global_precision = o.global_precision;
  const EvalReport base = score(gold, predicted, plain);

  std::string text = format_score_report(base, "Per-category scores");
  // Data lines of each report get a leading section column.
  auto add_section = [](const std::string& body, const std::string& section) {
    std::string lines_out;
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) lines_out += section + "\t" + line + "\n";
    return lines_out;
  };
  const std::string base_tsv = score_report_tsv(base);
  std::string tsv = "section\t" + base_tsv.substr(0, base_tsv.find('\n') + 1) + add_section(base_tsv, "all");

  const EvalReport* matrix_source = &base;
  EvalReport merged;
  if (!o.merge_labels.empty()) {
    ScoreOptions grouped = plain;
    std::string name;
    for (const auto& g : o.merge_labels) {
      grouped.merge_groups.push_back(parse_label_group(g));
      name += (name.empty() ? "" : ",") + grouped.merge_groups.back().name;
    }
    merged = score(gold, predicted, grouped);
    text += "\n" + format_score_report(merged, "Per-category scores with merged labels (" + name + ")");
    tsv += add_section(score_report_tsv(merged), "merged");
    matrix_source = &merged;
  }

  LabelMap strategy_gold = gold;
  if (o.exclude_other) std::erase_if(strategy_gold, [](const auto& kv) { return kv.second == Category::Other; });
  text += "\nAccuracy per mapping strategy\n" + format_strategy_accuracy(strategy_accuracy(strategy_gold, outcomes));

  if (!o.out.empty()) write_file(o.out, tsv);
  if (!o.matrix.empty()) write_file(o.matrix, matrix_source->matrix.to_csv());
  out << text;
  return kOk;
}

int cmd_sample(const SampleOptions& o, std::ostream& out) {
  const auto outcomes = load_outcomes(o.mapped);
  const auto ids = stratified_sample(outcomes, o.quota, o.seed);
  std::unordered_set<std::string> chosen(ids.begin(), ids.end());

  std::string body = o.blind ? "id\tterm\n" : "id\tterm\tcategory\tprovenance\n";
  for (const auto& oc : outcomes) {
    if (!chosen.contains(oc.entry_id)) continue;
    body += oc.entry_id + "\t" + oc.term;
    if (!o.blind) {
      body += "\t" + std::string(to_string(*oc.category)) + "\t" + std::string(to_string(oc.provenance));
    }
    body += "\n";
  }
  if (o.out.empty()) {
    out << body;
  } else {
    write_file(o.out, body);
    out << "sampled " << ids.size() << " of " << outcomes.size() << " entries\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Medical entity lexicon builder: map dictionary terms to categories, merge "
               "terminology resources, evaluate the result."};
  app.name(args.empty() ? "medlex" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = OpenMP default); output does not depend on it")
      ->check(CLI::NonNegativeNumber);

  MapOptions map_opts;
  auto* map_cmd = app.add_subcommand("map", "Categorize dictionary entries");
  map_cmd->add_option("--dict", map_opts.dict, "Dictionary (TSV or .jsonl)")->required();
  map_cmd->add_option("--suffixes", map_opts.suffixes, "Suffix table TSV (default: built-in)");
  map_cmd->add_option("--keywords", map_opts.keywords, "Keyword table TSV (default: built-in)");
  map_cmd->add_option("--stops", map_opts.stops, "Stoplist (default: built-in)");
  map_cmd->add_option("--function-words", map_opts.function_words, "Function words for the heuristic tagger");
  map_cmd->add_option("--conllu", map_opts.conllu, "POS-tagged definitions in CoNLL-U");
  map_cmd->add_option("--iter", map_opts.iter, "ITER rounds")->check(CLI::NonNegativeNumber);
  map_cmd->add_option("--out", map_opts.out, "Outcome file (default: standard output, no stats)");
  map_cmd->add_option("--format", map_opts.format, "tsv or jsonl")->check(CLI::IsMember({"tsv", "jsonl"}));
  map_cmd->add_flag("--lax", map_opts.lax, "Report lint findings as warnings");

  MergeOptions merge_opts;
  auto* merge_cmd = app.add_subcommand("merge", "Merge mapped entries with external resources");
  merge_cmd->add_option("--manifest", merge_opts.manifest, "Resource manifest")->required();
  merge_cmd->add_option("--mapped", merge_opts.mapped, "Outcome file from `map`")->required();
  merge_cmd->add_option("--out", merge_opts.out, "Merged lexicon")->required();
  merge_cmd->add_flag("--lowercase", merge_opts.lowercase, "Deduplicate on lowercased terms");
  merge_cmd->add_option("--format", merge_opts.format, "tsv or jsonl")->check(CLI::IsMember({"tsv", "jsonl"}));
  merge_cmd->add_option("--mapped-name", merge_opts.mapped_name, "Source name of the mapped dictionary");
  merge_cmd->add_option("--mapped-rank", merge_opts.mapped_rank, "Trust rank of the mapped dictionary");
  merge_cmd->add_option("--report", merge_opts.report, "Also write the merge report to this file");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate mapped entries");
  eval_cmd->require_subcommand(1);

  OverlapOptions overlap_opts;
  auto* overlap_cmd = eval_cmd->add_subcommand("overlap", "Accuracy on terms shared with external resources");
  overlap_cmd->add_option("--mapped", overlap_opts.mapped, "Outcome file from `map`")->required();
  overlap_cmd->add_option("--manifest", overlap_opts.manifest, "Resource manifest")->required();
  overlap_cmd->add_option("--out", overlap_opts.out, "Machine-readable TSV report");
  overlap_cmd->add_flag("--case-sensitive", overlap_opts.case_sensitive, "Match terms without lowercasing");

  GoldOptions gold_opts;
  auto* gold_cmd = eval_cmd->add_subcommand("gold", "Precision, recall and confusion matrix against gold labels");
  gold_cmd->add_option("--gold", gold_opts.gold, "Gold labels, term<TAB>CATEGORY")->required();
  gold_cmd->add_option("--mapped", gold_opts.mapped, "Outcome file from `map`")->required();
  gold_cmd->add_option("--merge-labels", gold_opts.merge_labels, "Label group such as ORG+SER (repeatable)");
  gold_cmd->add_flag("--exclude-other", gold_opts.exclude_other, "Drop OTHER-labelled terms before scoring");
  gold_cmd->add_flag("--global-precision", gold_opts.global_precision,
                     "Precision denominators over all predictions");
  gold_cmd->add_option("--out", gold_opts.out, "Machine-readable TSV report");
  gold_cmd->add_option("--matrix", gold_opts.matrix, "Confusion matrix CSV");

  SampleOptions sample_opts;
  auto* sample_cmd = eval_cmd->add_subcommand("sample", "Stratified sample for manual annotation");
  sample_cmd->add_option("--mapped", sample_opts.mapped, "Outcome file from `map`")->required();
  sample_cmd->add_option("--quota", sample_opts.quota, "Terms per category")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample_opts.seed, "Random seed")->required();
  sample_cmd->add_option("--out", sample_opts.out, "Sample TSV (default: standard output)");
  sample_cmd->add_flag("--blind", sample_opts.blind, "Omit mapped category and provenance");

  std::vector<char*> argv;
  std::vector<std::string> storage = args.empty() ? std::vector<std::string>{"medlex"} : args;
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*map_cmd) return cmd_map(map_opts, threads, out, err);
    if (*merge_cmd) return cmd_merge(merge_opts, threads, out);
    if (*overlap_cmd) return cmd_overlap(overlap_opts, threads, out);
    if (*gold_cmd) return cmd_gold(gold_opts, out);
    if (*sample_cmd) return cmd_sample(sample_opts, out);
  } catch (const LintError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& f : e.findings()) err << "  " << f << '\n';
    return kLintError;
  } catch (const MergeConflictError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& c : e.conflicts()) err << "  " << c << '\n';
    return kMergeConflict;
  } catch (const MissingPredictionError& e) {
    err << "error: " << e.what() << '\n';
    return kMissingGold;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kUsage;
}

}  // namespace medlex::cli
