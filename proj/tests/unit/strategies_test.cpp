#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "medlex/error.hpp"
#include "medlex/io.hpp"
#include "medlex/strategies.hpp"
#include "medlex/text.hpp"
#include "oracles.hpp"

using namespace medlex;

namespace {

std::string random_word(std::mt19937& rng, const std::vector<std::string>& alphabet, std::size_t max_len) {
  std::string w;
  const std::size_t n = 1 + rng() % max_len;
  for (std::size_t i = 0; i < n; ++i) w += alphabet[rng() % alphabet.size()];
  return w;
}

const std::vector<std::string> kLetters = {"a", "e", "i", "o", "s", "t", "l", "g", "m", "ø", "å", "k", "r"};

}  // namespace

TEST(ReadTable, StripsDashAndKeepsFirstDuplicate) {
  std::istringstream in("# c\n-itis\tCONDITION\n-ITIS\tPROCEDURE\n\nlege\tperson\n");
  const auto t = read_table(in, "t.tsv");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0], (TableRow{"itis", Category::Condition}));
  EXPECT_EQ(t.rows[1], (TableRow{"lege", Category::Person}));
  EXPECT_EQ(t.findings.size(), 1u);
}

TEST(ReadTable, RejectsBadRows) {
  std::istringstream other("x\tOTHER\n");
  EXPECT_THROW(read_table(other, "t"), ParseError);
  std::istringstream unknown("x\tDISEASE\n");
  EXPECT_THROW(read_table(unknown, "t"), ParseError);
  std::istringstream colon("a:b\tTOOL\n");
  EXPECT_THROW(read_table(colon, "t"), ParseError);
  std::istringstream one_col("x\n");
  EXPECT_THROW(read_table(one_col, "t"), ParseError);
}

TEST(ReadTable, ShippedTablesMatchBuiltins) {
  auto sin = open_input(fixture::data_dir() / "suffixes.tsv");
  const auto s = read_table(sin, "suffixes.tsv");
  EXPECT_TRUE(s.findings.empty());
  EXPECT_EQ(s.rows, SuffixTable::defaults().rows());
  auto kin = open_input(fixture::data_dir() / "keywords.tsv");
  const auto k = read_table(kin, "keywords.tsv");
  EXPECT_TRUE(k.findings.empty());
  EXPECT_EQ(k.rows, KeywordTable::defaults().rows());
}

TEST(SuffixTable, BuiltinShape) {
  const auto t = SuffixTable::defaults();
  EXPECT_EQ(t.rows().size(), 42u);
  EXPECT_TRUE(t.lint().empty());
  EXPECT_EQ(t.lookup("logi"), Category::Discipline);
  EXPECT_EQ(KeywordTable::defaults().rows().size(), 29u);
}

TEST(SuffixTable, LintFlagsNestedConflicts) {
  SuffixTable t({{"ose", Category::Condition}, {"tose", Category::Substance}, {"itis", Category::Condition},
                 {"titis", Category::Condition}});
  const auto f = t.lint();
  ASSERT_EQ(f.size(), 1u);
  EXPECT_NE(f[0].find("tose"), std::string::npos);
  EXPECT_THROW(SuffixTable({{"a", Category::Tool}, {"a", Category::Tool}}), std::invalid_argument);
  EXPECT_THROW(SuffixTable({{"a", Category::Other}}), std::invalid_argument);
}

TEST(SuffixVote, LongestProperSuffix) {
  const auto t = SuffixTable::defaults();
  auto v = suffix_vote("nyrebiopsi", t);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->category, Category::Procedure);
  EXPECT_EQ(v->trigger, "biopsi");
  EXPECT_EQ(suffix_vote("leukemia", t)->trigger, "emia");
  EXPECT_EQ(suffix_vote("gastroskopi", t)->trigger, "skopi");
  EXPECT_FALSE(suffix_vote("itis", t));
  EXPECT_FALSE(suffix_vote("paracetamol", t));
}

TEST(SuffixVote, MatchesBruteForceOracle) {
  std::mt19937 rng(3);
  std::vector<TableRow> rows;
  std::set<std::string> seen;
  while (rows.size() < 40) {
    auto s = random_word(rng, kLetters, 4);
    if (seen.insert(s).second) rows.push_back({s, kAssignable[rng() % kAssignable.size()]});
  }
  const SuffixTable table(rows);
  for (int i = 0; i < 3000; ++i) {
    const auto term = random_word(rng, kLetters, 8);
    const auto got = suffix_vote(term, table);
    const auto want = oracle::suffix(term, rows);
    ASSERT_EQ(got.has_value(), want.has_value()) << term;
    if (got) {
      EXPECT_EQ(got->trigger, want->suffix) << term;
      EXPECT_EQ(got->category, want->category) << term;
      EXPECT_EQ(got->strategy, Strategy::Suff);
    }
  }
}

TEST(Containment, MatchesBruteForceOracle) {
  std::mt19937 rng(5);
  const std::vector<std::string> small = {"a", "b", "ø", "c"};
  std::vector<TableRow> rows;
  std::set<std::string> seen;
  while (rows.size() < 30) {
    auto k = random_word(rng, small, 7);
    if (seen.insert(k).second) rows.push_back({k, kAssignable[rng() % kAssignable.size()]});
  }
  const KeywordTable table(rows);
  for (int i = 0; i < 3000; ++i) {
    const auto hay = random_word(rng, small, 14);
    const auto got = contained_keyword(hay, table);
    const auto want = oracle::contained(hay, rows);
    ASSERT_EQ(got.has_value(), want.has_value()) << hay;
    if (got) {
      EXPECT_EQ(got->keyword, want->keyword) << hay;
      EXPECT_EQ(got->position, want->position) << hay;
      EXPECT_EQ(got->category, want->category) << hay;
    }
  }
}

TEST(Containment, NeverShortOrAtStart) {
  std::mt19937 rng(9);
  std::vector<TableRow> rows;
  std::set<std::string> seen;
  while (rows.size() < 60) {
    auto k = random_word(rng, kLetters, 7);
    if (seen.insert(k).second) rows.push_back({k, kAssignable[rng() % kAssignable.size()]});
  }
  const KeywordTable table(rows);
  for (int i = 0; i < 5000; ++i) {
    const auto hay = random_word(rng, kLetters, 16);
    if (auto hit = contained_keyword(hay, table)) {
      EXPECT_GE(utf8_length(hit->keyword), 5u);
      EXPECT_GE(hit->position, 1u);
    }
    if (auto v = kw_entry_vote(hay, table)) {
      ASSERT_TRUE(v->position);
      EXPECT_GE(*v->position, 1u);
      EXPECT_GE(utf8_length(v->trigger), 5u);
    }
  }
}

TEST(Containment, ShortKeywordsOnlyMatchExactly) {
  std::vector<TableRow> rows = KeywordTable::defaults().rows();
  rows.push_back({"tap", Category::Condition});
  rows.push_back({"person", Category::Person});
  const KeywordTable table(rows);
  EXPECT_FALSE(kw_firstnoun_vote(std::string("katapleksi"), table));
  EXPECT_EQ(kw_firstnoun_vote(std::string("tap"), table)->category, Category::Condition);
  const auto v = kw_entry_vote("schizoid personlighetstype", table);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->category, Category::Person);
  EXPECT_EQ(v->position, 9u);
}

TEST(Containment, ExactMatchPrecedesContainment) {
  const KeywordTable table({{"sykdom", Category::Condition}, {"hjertesykdom", Category::Tool}});
  const auto v = kw_firstnoun_vote(std::string("hjertesykdom"), table);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->category, Category::Tool);
  EXPECT_FALSE(v->position);
  const auto e = kw_entry_vote("hjertesykdom", table);
  EXPECT_EQ(e->category, Category::Condition);
}

TEST(Containment, PositionCountsCodePoints) {
  const auto v = kw_entry_vote("ørebehandling", KeywordTable::defaults());
  ASSERT_TRUE(v);
  EXPECT_EQ(v->trigger, "behandling");
  EXPECT_EQ(v->position, 3u);
}
