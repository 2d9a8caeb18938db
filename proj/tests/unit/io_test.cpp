#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "recruit/domain.hpp"
#include "recruit/io.hpp"

using namespace recruit;
using namespace recruit::io;

TEST(FormatDouble, RoundTripsExactly) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 5000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    EXPECT_EQ(parse_double(format_double(v), "t", 0), v);
  }
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(CsvTable, ParsesRowsAndSkipsBlankLines) {
  auto t = CsvTable::parse("a,b\n1,2\n\n3,4\n", "x.csv");
  t.expect_header({"a", "b"});
  ASSERT_EQ(t.row_count(), 2u);
  EXPECT_EQ(t.integer(1, 0), 3);
  EXPECT_EQ(t.line_of(1), 4u);
}

TEST(CsvTable, HeaderMismatchIsParseErrorOnLineOne) {
  auto t = CsvTable::parse("a,c\n1,2\n", "x.csv");
  try {
    t.expect_header({"a", "b"});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(CsvTable, RaggedRowReportsItsLine) {
  try {
    CsvTable::parse("a,b\n1,2\n3\n", "x.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(CsvTable, BadNumberReportsItsLine) {
  auto t = CsvTable::parse("a\n1\nfoo\n", "x.csv");
  EXPECT_EQ(t.number(0, 0), 1.0);
  try {
    t.number(1, 0);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(CsvTable, FlagsAndIds) {
  auto t = CsvTable::parse("f,id\ntrue,7\n0,8\nyes,-1\n", "x.csv");
  EXPECT_TRUE(t.flag(0, 0));
  EXPECT_FALSE(t.flag(1, 0));
  EXPECT_THROW(t.flag(2, 0), ParseError);
  EXPECT_EQ(t.id(0, 1), 7u);
  EXPECT_THROW(t.id(2, 1), ParseError);
}

TEST(CsvTable, EmptyInputHasNoHeader) { EXPECT_THROW(CsvTable::parse("\n\n", "x.csv"), ParseError); }

TEST(CsvWriter, WritesHeaderAndRows) {
  CsvWriter w({"a", "b"});
  w.cell(1).cell(0.25).end_row();
  EXPECT_EQ(w.str(), "a,b\n1,0.25\n");
  w.cell("x");
  EXPECT_THROW(w.end_row(), Error);
}

TEST(KeyValues, CommentsSectionsAndQuotes) {
  auto kv = parse_key_values("# top\n[gen]\ndevices = 10  # inline\nname = \"a b\"\n", "c.toml");
  EXPECT_EQ(kv.at("devices"), "10");
  EXPECT_EQ(kv.at("name"), "a b");
  EXPECT_EQ(kv.size(), 2u);
}

TEST(KeyValues, DuplicateAndMalformedKeys) {
  EXPECT_THROW(parse_key_values("a = 1\na = 2\n", "c"), ParseError);
  EXPECT_THROW(parse_key_values("just words\n", "c"), ParseError);
}
