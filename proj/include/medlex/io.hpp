#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "medlex/model.hpp"
#include "medlex/textprep.hpp"

namespace medlex {

enum class Format { Tsv, JsonLines };

/// JSON-lines for .jsonl/.json paths, TSV otherwise.
Format format_for_path(const std::filesystem::path& path);
Format parse_format(std::string_view name);

/// Dictionary input. TSV rows are `id<TAB>term<TAB>definition[<TAB>synonym_of]`
/// with an optional `id<TAB>term...` header and '#' comment lines. JSON lines
/// carry the same fields; "definition" may be a string or a list of senses.
/// Terms must be non-empty and free of tabs and newlines. Throws ParseError.
std::vector<Entry> read_dictionary(std::istream& in, Format format, const std::string& source);

/// Sets senses[0].tokens for every entry that has a token sequence.
void attach_tokens(std::vector<Entry>& entries, const TokenMap& tokens);

/// Outcome table: `id, term, category, provenance, votes, tagger`. Absent
/// values are written as "-"; votes are ';'-joined.
void write_outcomes(std::ostream& out, std::span<const MappingOutcome> outcomes, Format format);
std::vector<MappingOutcome> read_outcomes(std::istream& in, const std::string& source);

/// Gold labels, `term<TAB>CATEGORY` (OTHER allowed), keyed by the lowercase
/// normalized term. Throws ParseError naming the offending term.
std::map<std::string, Category> read_gold(std::istream& in, const std::string& source);

/// Opens a file for reading or throws ParseError(path, 0, "cannot open").
std::ifstream open_input(const std::filesystem::path& path);

}  // namespace medlex
