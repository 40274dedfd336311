#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "fixtures.hpp"

using fixture::cli;
using fixture::slurp;
using fixture::spit;
using fixture::TempDir;

namespace {

std::string dict() { return fixture::path("dict.tsv"); }
std::string manifest() { return fixture::path("manifest.tsv"); }

std::string map_to(const TempDir& tmp, const std::string& name = "mapped.tsv") {
  const auto out = tmp / name;
  const auto r = cli({"map", "--dict", dict(), "--out", out});
  EXPECT_EQ(r.code, 0) << r.err;
  return out;
}

}  // namespace

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"map"}).code, 1);
  EXPECT_EQ(cli({"map", "--dict", dict(), "--iter", "-1"}).code, 1);
  EXPECT_EQ(cli({"eval", "sample", "--mapped", "x"}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
}

TEST(Cli, MapToStdoutCarriesOnlyOutcomes) {
  const auto r = cli({"map", "--dict", dict()});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "id\tterm\tcategory\tprovenance\tvotes\ttagger");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 51);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, MapWithOutPrintsStats) {
  TempDir tmp("cli");
  const auto r = cli({"map", "--dict", dict(), "--out", tmp / "o.tsv", "--conllu", fixture::path("dict.conllu")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Total mapped         47"), std::string::npos) << r.out;
  EXPECT_NE(slurp(tmp / "o.tsv").find("\tconllu\n"), std::string::npos);
}

TEST(Cli, ExplicitTablesMatchBuiltins) {
  TempDir tmp("cli");
  const auto data = fixture::data_dir();
  ASSERT_EQ(cli({"map", "--dict", dict(), "--out", tmp / "a.tsv"}).code, 0);
  ASSERT_EQ(cli({"map", "--dict", dict(), "--out", tmp / "b.tsv", "--suffixes", (data / "suffixes.tsv").string(),
                 "--keywords", (data / "keywords.tsv").string(), "--stops", (data / "stops.txt").string()})
                .code,
            0);
  EXPECT_EQ(slurp(tmp / "a.tsv"), slurp(tmp / "b.tsv"));
}

TEST(Cli, JsonLinesOutput) {
  TempDir tmp("cli");
  ASSERT_EQ(cli({"map", "--dict", dict(), "--out", tmp / "o.jsonl", "--format", "jsonl"}).code, 0);
  const auto r = cli({"eval", "sample", "--mapped", tmp / "o.jsonl", "--quota", "3", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, InputErrorsExitTwo) {
  TempDir tmp("cli");
  spit(tmp / "dup.tsv", "a\tx\td\na\ty\td\n");
  auto r = cli({"map", "--dict", tmp / "dup.tsv"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("dup.tsv:2"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(cli({"map", "--dict", tmp / "missing.tsv"}).code, 2);
  EXPECT_EQ(cli({"merge", "--manifest", tmp / "missing.tsv", "--mapped", dict(), "--out", tmp / "x"}).code, 2);
  EXPECT_EQ(cli({"map", "--dict", dict(), "--out", (tmp.path() / "no" / "dir.tsv").string()}).code, 2);
  spit(tmp / "badconllu", "# sent_id = e01\n1\tx\n");
  r = cli({"map", "--dict", dict(), "--conllu", tmp / "badconllu"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("badconllu:2"), std::string::npos);
}

TEST(Cli, LintFailsUnlessLax) {
  TempDir tmp("cli");
  spit(tmp / "s.tsv", "-ose\tCONDITION\n-tose\tSUBSTANCE\n");
  auto r = cli({"map", "--dict", dict(), "--suffixes", tmp / "s.tsv"});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("tose"), std::string::npos);
  r = cli({"map", "--dict", dict(), "--suffixes", tmp / "s.tsv", "--lax"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  spit(tmp / "k.tsv", "lege\tPERSON\nlege\tPERSON\n");
  EXPECT_EQ(cli({"map", "--dict", dict(), "--keywords", tmp / "k.tsv"}).code, 3);
}

TEST(Cli, IterZeroHasNoIterRows) {
  const auto r = cli({"map", "--dict", dict(), "--iter", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("\tITER\t"), std::string::npos);
  EXPECT_NE(cli({"map", "--dict", dict()}).out.find("\tITER\t"), std::string::npos);
}

TEST(Cli, MergeWritesLexiconAndReport) {
  TempDir tmp("cli");
  const auto mapped = map_to(tmp);
  auto r = cli({"merge", "--manifest", manifest(), "--mapped", mapped, "--out", tmp / "lex.tsv", "--report",
                tmp / "report.txt"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, slurp(tmp / "report.txt"));
  const auto cased = slurp(tmp / "lex.tsv");
  r = cli({"merge", "--manifest", manifest(), "--mapped", mapped, "--out", tmp / "lower.tsv", "--lowercase"});
  ASSERT_EQ(r.code, 0);
  const auto lower = slurp(tmp / "lower.tsv");
  EXPECT_LE(std::count(lower.begin(), lower.end(), '\n'), std::count(cased.begin(), cased.end(), '\n'));
}

TEST(Cli, MergeConflictExitsFour) {
  TempDir tmp("cli");
  const auto mapped = map_to(tmp);
  spit(tmp / "a.txt", "sonde\n");
  spit(tmp / "b.txt", "Sonde\n");
  spit(tmp / "m.tsv", "name\tfile\tmode\tcategory\trules\ttrust_rank\nA\ta.txt\tFIXED\tTOOL\t-\t1\n"
                      "B\tb.txt\tFIXED\tPROCEDURE\t-\t1\n");
  const auto r = cli({"merge", "--manifest", tmp / "m.tsv", "--mapped", mapped, "--out", tmp / "x.tsv",
                      "--lowercase"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("sonde"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(cli({"merge", "--manifest", tmp / "m.tsv", "--mapped", mapped, "--out", tmp / "x.tsv"}).code, 0);
}

TEST(Cli, EvalGold) {
  TempDir tmp("cli");
  const auto mapped = map_to(tmp);
  auto r = cli({"eval", "gold", "--gold", fixture::path("gold.tsv"), "--mapped", mapped, "--merge-labels",
                "ORG+SER", "--out", tmp / "g.tsv", "--matrix", tmp / "g.csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("ORG+SER        1.000   1.000   4"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Correct excluding OTHER: 73.1% (19/26)"), std::string::npos);
  EXPECT_NE(slurp(tmp / "g.tsv").find("merged\tORG+SER\t4\t4\t4\t1.000\t1.000"), std::string::npos);
  EXPECT_EQ(slurp(tmp / "g.csv").substr(0, 24), "gold\\predicted,ABBREV,AN");

  spit(tmp / "g2.tsv", "katapleksi\tCONDITION\n");
  r = cli({"eval", "gold", "--gold", tmp / "g2.tsv", "--mapped", mapped});
  EXPECT_EQ(r.code, 5);
  EXPECT_NE(r.err.find("katapleksi"), std::string::npos);
  spit(tmp / "g3.tsv", "hoste\tSYMPTOM\n");
  r = cli({"eval", "gold", "--gold", tmp / "g3.tsv", "--mapped", mapped});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("hoste"), std::string::npos);
}

TEST(Cli, EvalGoldIdentity) {
  TempDir tmp("cli");
  const auto mapped = map_to(tmp);
  std::string gold;
  const auto text = slurp(mapped);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, '\t');) cols.push_back(c);
    if (cols[2] != "-") gold += cols[1] + "\t" + cols[2] + "\n";
  }
  spit(tmp / "id.tsv", gold);
  const auto r = cli({"eval", "gold", "--gold", tmp / "id.tsv", "--mapped", mapped, "--out", tmp / "r.tsv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream rows(slurp(tmp / "r.tsv"));
  std::getline(rows, line);
  while (std::getline(rows, line)) {
    if (line.find("\t0\t0\t0\t") != std::string::npos) continue;  // empty labels
    EXPECT_NE(line.find("1.000\t1.000"), std::string::npos) << line;
  }
}

TEST(Cli, EvalSampleIsDeterministic) {
  TempDir tmp("cli");
  const auto mapped = map_to(tmp);
  for (const char* name : {"s1.tsv", "s2.tsv"}) {
    ASSERT_EQ(cli({"eval", "sample", "--mapped", mapped, "--quota", "100", "--seed", "7", "--out", tmp / name}).code,
              0);
  }
  EXPECT_EQ(slurp(tmp / "s1.tsv"), slurp(tmp / "s2.tsv"));
  const auto blind = cli({"eval", "sample", "--mapped", mapped, "--quota", "1", "--seed", "7", "--blind"});
  EXPECT_EQ(blind.out.substr(0, blind.out.find('\n')), "id\tterm");
}

TEST(Cli, EvalOverlap) {
  TempDir tmp("cli");
  const auto mapped = map_to(tmp);
  const auto r = cli({"eval", "overlap", "--mapped", mapped, "--manifest", manifest(), "--out", tmp / "o.tsv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Total            17         88.2"), std::string::npos) << r.out;
  EXPECT_NE(slurp(tmp / "o.tsv").find("ICPC-2\t*\t5\t4\t80.0"), std::string::npos);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  TempDir tmp("cli");
  for (const char* t : {"1", "8"}) {
    ASSERT_EQ(cli({"--threads", t, "map", "--dict", dict(), "--out", tmp / (std::string("m") + t), "--iter", "2"}).code,
              0);
  }
  EXPECT_EQ(slurp(tmp / "m1"), slurp(tmp / "m8"));
}
