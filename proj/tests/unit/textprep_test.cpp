#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "medlex/error.hpp"
#include "medlex/io.hpp"
#include "medlex/textprep.hpp"

using namespace medlex;

namespace {

std::vector<Token> tag(std::string_view text) { return heuristic_tag(text, default_function_words()); }

std::optional<std::string> first_noun(std::string_view text) {
  const auto tokens = tag(text);
  return extract_first_noun(tokens, StopConfig::defaults());
}

}  // namespace

TEST(StopConfig, ClassifiesItemsByShape) {
  StopConfig s;
  s.add("Form  av");
  s.add("uttrykk");
  s.add("plur.");
  EXPECT_TRUE(s.stop_phrases.contains({"form", "av"}));
  EXPECT_TRUE(s.stop_nouns.contains("uttrykk"));
  EXPECT_TRUE(s.abbreviations.contains("plur."));
  EXPECT_THROW(s.add("en form av"), std::invalid_argument);
}

TEST(StopConfig, DefaultsHoldOnlyTheNamedItems) {
  const auto d = StopConfig::defaults();
  EXPECT_EQ(d.stop_phrases.size(), 1u);
  EXPECT_EQ(d.stop_nouns, std::set<std::string>{"uttrykk"});
  EXPECT_EQ(d.abbreviations, (std::set<std::string>{"lat.", "plur."}));
}

TEST(StopConfig, ShippedFileMatchesDefaults) {
  auto in = open_input(fixture::data_dir() / "stops.txt");
  const auto loaded = read_stoplist(in, "stops.txt");
  const auto d = StopConfig::defaults();
  EXPECT_EQ(loaded.stop_phrases, d.stop_phrases);
  EXPECT_EQ(loaded.stop_nouns, d.stop_nouns);
  EXPECT_EQ(loaded.abbreviations, d.abbreviations);
}

TEST(StopConfig, ReportsLineOfBadItem) {
  std::istringstream in("# comment\nuttrykk\nen form av\n");
  try {
    read_stoplist(in, "s.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(HeuristicTag, OffsetsAreCodePoints) {
  const auto t = tag("kroppsdel i æren, 12 ting");
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[0].surface, "kroppsdel");
  EXPECT_EQ(t[0].upos, "NOUN");
  EXPECT_EQ(t[1].upos, "X");
  EXPECT_EQ(t[2].surface, "æren");
  EXPECT_EQ(t[2].start, 12u);
  EXPECT_EQ(t[2].end, 16u);
  EXPECT_EQ(t[3].upos, "NUM");
}

TEST(HeuristicTag, JoinsHyphenatedWordsAndAbbreviations) {
  const auto t = tag("lat. røntgen-undersøkelse av lunge-");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].surface, "lat.");
  EXPECT_EQ(t[0].upos, "X");
  EXPECT_EQ(t[1].surface, "røntgen-undersøkelse");
  EXPECT_EQ(t[3].surface, "lunge");
}

TEST(HeuristicTag, FinalPeriodIsNotAnAbbreviation) {
  const auto t = tag("lege.");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].surface, "lege");
  EXPECT_EQ(t[0].upos, "NOUN");
}

TEST(FirstNoun, SkipsStopItems) {
  EXPECT_EQ(first_noun("form av omsorg i hjemmet"), "omsorg");
  EXPECT_EQ(first_noun("uttrykk for sammentrekning av muskler"), "sammentrekning");
  EXPECT_EQ(first_noun("lat. kroppsdel som utgjør hodet"), "kroppsdel");
  EXPECT_EQ(first_noun("plur. Celler i blodet"), "celler");
  EXPECT_EQ(first_noun("og som i"), std::nullopt);
}

TEST(FirstNoun, StopPhraseNeedsItsPreposition) {
  EXPECT_EQ(first_noun("form for behandling"), "form");
}

TEST(FirstNoun, ProperNounsCount) {
  const std::vector<Token> t = {{"Akershus", "PROPN", 0, 8}, {"sykehus", "NOUN", 9, 16}};
  EXPECT_EQ(extract_first_noun(t, StopConfig::defaults()), "akershus");
}

TEST(Conllu, ParsesSentencesAndAlignsOffsets) {
  std::istringstream in(
      "# sent_id = e1\n"
      "# text = forkortelse for  Ahus\n"
      "1\tforkortelse\tforkortelse\tNOUN\t_\t_\t0\t_\t_\t_\n"
      "2-3\tforAhus\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "2\tfor\tfor\tADP\t_\t_\t0\t_\t_\t_\n"
      "2.1\tx\tx\tX\t_\t_\t_\t_\t_\t_\n"
      "3\tAhus\tAhus\tPROPN\t_\t_\t0\t_\t_\t_\n"
      "\n"
      "# sent_id = zz\n"
      "1\tstoff\tstoff\tNOUN\t_\t_\t0\t_\t_\t_\n");
  std::vector<std::string> warnings;
  const auto map = ingest_conllu(in, {"e1"}, &warnings, "t.conllu");
  ASSERT_EQ(map.size(), 1u);
  const auto& t = map.at("e1");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[2].surface, "Ahus");
  EXPECT_EQ(t[2].start, 17u);
  EXPECT_EQ(t[2].end, 21u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Conllu, SynthesizesOffsetsWithoutText) {
  std::istringstream in("# sent_id = a\n1\tab\tab\tNOUN\t_\t_\t0\t_\t_\t_\n2\tcd\tcd\tNOUN\t_\t_\t0\t_\t_\t_\n");
  const auto t = ingest_conllu(in, {}).at("a");
  EXPECT_EQ(t[1].start, 3u);
  EXPECT_EQ(t[1].end, 5u);
}

TEST(Conllu, RejectsMalformedLines) {
  std::istringstream wrong_columns("# sent_id = a\n1\tab\tab\tNOUN\n");
  try {
    ingest_conllu(wrong_columns, {}, nullptr, "x.conllu");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream no_id("1\tab\tab\tNOUN\t_\t_\t0\t_\t_\t_\n");
  EXPECT_THROW(ingest_conllu(no_id, {}), ParseError);
  std::istringstream dup("# sent_id = a\n1\tab\tab\tNOUN\t_\t_\t0\t_\t_\t_\n\n# sent_id = a\n1\tab\tab\tNOUN\t_\t_\t0\t_\t_\t_\n");
  EXPECT_THROW(ingest_conllu(dup, {}), ParseError);
}

// On the tagged fixture the heuristic tagger and the CoNLL-U tags pick the
// same first noun.
TEST(Conllu, HeuristicAgreesWithTaggedFixture) {
  auto din = open_input(fixture::path("dict.tsv"));
  const auto entries = read_dictionary(din, Format::Tsv, "dict.tsv");
  auto cin = open_input(fixture::path("dict.conllu"));
  const auto tagged = ingest_conllu(cin, {});
  ASSERT_EQ(tagged.size(), 24u);
  for (const auto& e : entries) {
    auto it = tagged.find(e.id);
    if (it == tagged.end()) continue;
    const auto& stops = StopConfig::defaults();
    EXPECT_EQ(extract_first_noun(it->second, stops),
              extract_first_noun(tag(e.senses.at(0).text), stops))
        << e.id;
  }
}
