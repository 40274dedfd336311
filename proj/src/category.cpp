#include "medlex/category.hpp"

#include <stdexcept>
#include <string>

namespace medlex {

namespace {

constexpr std::array<std::string_view, kLabelCount> kNames = {
    "ABBREV",     "ANAT_LOC",  "CONDITION",  "DISCIPLINE", "MICROORG",
    "ORGANIZATION", "PERSON",  "PHYSIOLOGY", "PROCEDURE",  "SERVICE",
    "SUBSTANCE",  "TOOL",      "OTHER",
};

struct Alias {
  std::string_view name;
  Category category;
};

constexpr std::array<Alias, 7> kAliases = {{
    {"MICROORGANISM", Category::Microorg},
    {"ORG", Category::Organization},
    {"SER", Category::Service},
    {"COND", Category::Condition},
    {"SUBST", Category::Substance},
    {"PROC", Category::Procedure},
    {"ALOC", Category::AnatLoc},
}};

}  // namespace

std::string_view to_string(Category c) { return kNames.at(index_of(c)); }

std::optional<Category> parse_category(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (!text.empty() && text.back() == '.') text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  std::string key;
  key.reserve(text.size());
  for (char ch : text) {
    if (ch == '-') ch = '_';
    if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
    key.push_back(ch);
  }
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == key) return static_cast<Category>(i);
  }
  for (const auto& alias : kAliases) {
    if (alias.name == key) return alias.category;
  }
  return std::nullopt;
}

Category category_from_string(std::string_view text) {
  if (auto c = parse_category(text)) return *c;
  throw std::invalid_argument("unknown category '" + std::string(text) + "'");
}

}  // namespace medlex
