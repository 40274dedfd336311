#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace medlex {

/// Entity type assigned to a lexicon term. The first twelve values are
/// assignable by mapping and merging; `Other` only ever appears as a gold
/// label in evaluation files.
enum class Category : std::uint8_t {
  Abbrev,
  AnatLoc,
  Condition,
  Discipline,
  Microorg,
  Organization,
  Person,
  Physiology,
  Procedure,
  Service,
  Substance,
  Tool,
  Other,
};

inline constexpr std::size_t kAssignableCount = 12;
inline constexpr std::size_t kLabelCount = 13;

inline constexpr std::array<Category, kAssignableCount> kAssignable = {
    Category::Abbrev,    Category::AnatLoc,      Category::Condition,
    Category::Discipline, Category::Microorg,    Category::Organization,
    Category::Person,    Category::Physiology,   Category::Procedure,
    Category::Service,   Category::Substance,    Category::Tool,
};

inline constexpr std::array<Category, kLabelCount> kAllLabels = {
    Category::Abbrev,    Category::AnatLoc,      Category::Condition,
    Category::Discipline, Category::Microorg,    Category::Organization,
    Category::Person,    Category::Physiology,   Category::Procedure,
    Category::Service,   Category::Substance,    Category::Tool,
    Category::Other,
};

constexpr std::size_t index_of(Category c) { return static_cast<std::size_t>(c); }
constexpr bool is_assignable(Category c) { return c != Category::Other; }

/// Machine spelling, e.g. "ANAT_LOC".
std::string_view to_string(Category c);

/// Accepts the machine spelling, the hyphenated table spelling ("ANAT-LOC"),
/// any ASCII case, and a few abbreviations seen in reports ("MICROORGANISM",
/// "ORG", "SER", "COND.", "SUBST.", "PROC.").
std::optional<Category> parse_category(std::string_view text);

/// Like parse_category but throws std::invalid_argument on unknown labels.
Category category_from_string(std::string_view text);

}  // namespace medlex
