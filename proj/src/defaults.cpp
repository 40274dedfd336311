#include <initializer_list>
#include <utility>

#include "medlex/strategies.hpp"

namespace medlex {

namespace {

std::vector<TableRow> expand(std::initializer_list<std::pair<Category, std::initializer_list<const char*>>> groups) {
  std::vector<TableRow> rows;
  for (const auto& [category, triggers] : groups) {
    for (const char* t : triggers) rows.push_back({t, category});
  }
  return rows;
}

}  // namespace

SuffixTable SuffixTable::defaults() {
  return SuffixTable(expand({
      {Category::Condition,
       {"agi", "algi", "algia", "blastom", "cele", "cytose", "donti", "dynia", "emi", "emia",
        "epsi", "ism", "isme", "ismus", "itis", "oma", "pati", "plasi", "plegi", "ruptur",
        "sarkom", "sis", "trofi", "temi", "toni", "tropi"}},
      {Category::Discipline, {"iatri", "logi"}},
      {Category::Microorg, {"coccus", "bacillus", "bacter"}},
      {Category::Person, {"iater", "olog"}},
      {Category::Procedure, {"biopsi", "grafi", "metri", "skopi", "tomi"}},
      {Category::Substance, {"cillin"}},
      {Category::Tool, {"graf", "meter", "skop"}},
  }));
}

KeywordTable KeywordTable::defaults() {
  return KeywordTable(expand({
      {Category::Abbrev, {"forkortelse"}},
      {Category::AnatLoc, {"celler", "muskel", "kroppsdel"}},
      {Category::Condition, {"sykdom", "tilstand", "mangel"}},
      {Category::Discipline, {"studium", "forskning", "teori"}},
      {Category::Microorg, {"bakterie", "organisme", "virus"}},
      {Category::Organization, {"foretak", "institutt"}},
      {Category::Person, {"lege", "pasient", "individ"}},
      {Category::Physiology, {"refleks", "sammentrekning"}},
      {Category::Procedure, {"behandling", "fjerning"}},
      {Category::Service, {"tjeneste", "omsorg"}},
      {Category::Substance, {"stoff", "løsning", "medikament"}},
      {Category::Tool, {"instrument", "verktøy"}},
  }));
}

}  // namespace medlex
