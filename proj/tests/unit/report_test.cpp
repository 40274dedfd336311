#include <gtest/gtest.h>

#include <random>

#include "medlex/model.hpp"
#include "medlex/report.hpp"

using namespace medlex;

TEST(FormatFixed, HalfUpRounding) {
  EXPECT_EQ(format_percent(1, 8), "12.5");
  EXPECT_EQ(format_percent(1, 3), "33.3");
  EXPECT_EQ(format_percent(2, 3), "66.7");
  EXPECT_EQ(format_percent(1, 2000), "0.1");   // 0.05 rounds up
  EXPECT_EQ(format_percent(1, 2001), "0.0");
  EXPECT_EQ(format_ratio(1, 2000), "0.001");   // 0.0005 rounds up
  EXPECT_EQ(format_ratio(7, 7), "1.000");
  EXPECT_EQ(format_percent(3, 0), "N/A");
}

TEST(FormatFixed, AgreesWithLongDivision) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20000; ++i) {
    const std::size_t den = 1 + rng() % 100000;
    const std::size_t num = rng() % (den + 1);
    // Value in tenths of a percent, rounded half-up.
    const std::size_t scaled = num * 1000;
    const std::size_t q = scaled / den + ((scaled % den) * 2 >= den ? 1 : 0);
    const std::string want = std::to_string(q / 10) + "." + std::to_string(q % 10);
    ASSERT_EQ(format_percent(num, den), want) << num << "/" << den;
  }
}

TEST(TextTable, AlignsByCodePoints) {
  TextTable t({"Name", "n"});
  t.add_row({"fødsel", "1"});
  t.add_rule();
  t.add_row({"x", "100"});
  EXPECT_EQ(t.str(), "Name      n\n-----------\nfødsel    1\n-----------\nx       100\n");
}

TEST(Votes, FormatAndParse) {
  const Vote s{Strategy::Suff, Category::Procedure, "biopsi", std::nullopt};
  const Vote e{Strategy::KwE, Category::Service, "tjeneste", 9};
  const Vote n{Strategy::Kw1N, Category::Condition, "sykdom", std::nullopt};
  EXPECT_EQ(format_vote(s), "SUFF:PROCEDURE:-biopsi");
  EXPECT_EQ(format_vote(e), "KW_E:SERVICE:tjeneste:9");
  EXPECT_EQ(format_vote(n), "KW_1N:CONDITION:sykdom");
  for (const auto& v : {s, e, n}) EXPECT_EQ(parse_vote(format_vote(v)), v);
  EXPECT_EQ(parse_vote("KW-1N:condition:sykdom"), n);
  EXPECT_THROW(parse_vote("SUFF:OTHER:-x"), std::invalid_argument);
  EXPECT_THROW(parse_vote("NOPE:TOOL:x"), std::invalid_argument);
}

TEST(Outcome, InvariantChecks) {
  MappingOutcome o;
  o.entry_id = "a";
  o.term = "x";
  EXPECT_FALSE(check_outcome(o));
  o.category = Category::Tool;
  EXPECT_TRUE(check_outcome(o));
  o.provenance = Provenance::Iter;
  EXPECT_FALSE(check_outcome(o));
  o.votes.push_back({Strategy::Suff, Category::Tool, "skop", std::nullopt});
  EXPECT_TRUE(check_outcome(o));
  o.provenance = Provenance::Suff;
  EXPECT_FALSE(check_outcome(o));
  o.category = Category::Person;
  EXPECT_TRUE(check_outcome(o));
}
