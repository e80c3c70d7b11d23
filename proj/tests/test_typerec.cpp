#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "support.hpp"
#include "typesql/numkernel/error.hpp"
#include "typesql/typerec/gazetteer.hpp"
#include "typesql/typerec/recognizer.hpp"
#include "typesql/typerec/tokenize.hpp"

using namespace typesql;
using namespace typesql::test;

namespace {

std::vector<std::string> labels(const TaggedQuestion& tq, const TableSchema& schema) {
  std::vector<std::string> out;
  for (const auto& t : tq.tags) out.push_back(tag_label(t, schema));
  return out;
}

Gazetteer figure1_gazetteer() {
  Gazetteer g;
  g.add("Mort Drucker", TypeKind::Person);
  return g;
}

TableSchema schema_of(std::initializer_list<const char*> names) {
  TableSchema s;
  s.id = "t";
  for (const char* n : names) s.columns.push_back({n, ColumnKind::Text});
  return s;
}

}  // namespace

TEST(Tokenize, SplitsPunctuation) {
  EXPECT_EQ(tokenize("How many spoofed titles?").tokens,
            (std::vector<std::string>{"how", "many", "spoofed", "titles", "?"}));
}

TEST(Tokenize, KeepsDecimalPoint) { EXPECT_EQ(tokenize("88.5").tokens, std::vector<std::string>{"88.5"}); }

TEST(Tokenize, SplitsApostrophe) {
  EXPECT_EQ(tokenize("mort drucker's issue").tokens,
            (std::vector<std::string>{"mort", "drucker", "'", "s", "issue"}));
}

TEST(Tokenize, KeepsHyphenInsideWords) {
  EXPECT_EQ(tokenize("a well-known x - y").tokens,
            (std::vector<std::string>{"a", "well-known", "x", "-", "y"}));
}

TEST(Tokenize, CharSpansPointIntoRawText) {
  const std::string q = "  Who WON, in 1998?";
  const Tokens t = tokenize(q);
  ASSERT_EQ(t.tokens.size(), t.spans.size());
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    std::string raw = q.substr(t.spans[i].begin, t.spans[i].end - t.spans[i].begin);
    for (auto& ch : raw) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    EXPECT_EQ(raw, t.tokens[i]);
  }
}

TEST(Tokenize, EmptyQuestionThrows) {
  try {
    tokenize("   \t ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty question");
  }
}

TEST(NGrams, FiveTokensLengthsTwoToSix) {
  const auto spans = extract_ngrams(5, 2, 6);
  EXPECT_EQ(spans.size(), 10u);
  // brute-force enumeration in the stated order
  std::vector<NGram> want;
  for (std::size_t len = 5; len >= 2; --len)
    for (std::size_t s = 0; s + len <= 5; ++s) want.push_back({s, len});
  EXPECT_EQ(spans, want);
}

TEST(NGrams, OneToken) { EXPECT_EQ(extract_ngrams(1), (std::vector<NGram>{{0, 1}})); }

TEST(NGrams, TwoTokens) { EXPECT_EQ(extract_ngrams(2), (std::vector<NGram>{{0, 2}, {0, 1}, {1, 1}})); }

TEST(NGrams, CappedAtSix) {
  const auto spans = extract_ngrams(9);
  EXPECT_EQ(spans.front(), (NGram{0, 6}));
  std::size_t want = 0;
  for (std::size_t len = 1; len <= 6; ++len) want += 9 - len + 1;
  EXPECT_EQ(spans.size(), want);
}

TEST(SchemaColumns, Figure1Columns) {
  const Table t = figure1_table();
  TaggedQuestion tq = untagged(kFigure1Question);
  tag_schema_columns(tq, t.schema);
  for (std::size_t i : {1u, 2u, 8u, 10u}) EXPECT_EQ(tq.tags[i].kind, TypeKind::Column) << i;
  for (std::size_t i : {0u, 3u, 4u, 5u, 6u, 7u, 9u, 11u, 12u}) EXPECT_TRUE(tq.tags[i].is_none()) << i;
}

TEST(SchemaColumns, NoOverlapChangesNothing) {
  TaggedQuestion tq = untagged("who won the race ?");
  tag_schema_columns(tq, schema_of({"points", "driver"}));
  for (const auto& t : tq.tags) EXPECT_TRUE(t.is_none());
}

TEST(SchemaColumns, LongestMatchShadowsShorter) {
  TaggedQuestion tq = untagged("what is the total score of x ?");
  tag_schema_columns(tq, schema_of({"total", "total score"}));
  EXPECT_EQ(tq.tags[3].kind, TypeKind::Column);
  EXPECT_EQ(tq.tags[4].kind, TypeKind::Column);
  EXPECT_TRUE(tq.tags[2].is_none());
}

TEST(Numbers, FloatsIntegersAndYears) {
  TaggedQuestion tq = untagged("88.5 1998 7 1200 2101 1300 2100");
  tag_numbers(tq);
  const std::vector<TypeKind> want = {TypeKind::Float,   TypeKind::Year,    TypeKind::Integer,
                                      TypeKind::Integer, TypeKind::Integer, TypeKind::Year,
                                      TypeKind::Year};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(tq.tags[i].kind, want[i]) << tq.tokens[i];
}

TEST(Numbers, Dates) {
  TaggedQuestion a = untagged("on 1999-07-01 and 1/7/1999");
  tag_numbers(a);
  EXPECT_EQ(a.tags[1].kind, TypeKind::Date);
  EXPECT_EQ(a.tags[3].kind, TypeKind::Date);

  TaggedQuestion b = untagged("played on july 1 , 1999 at home");
  tag_numbers(b);
  for (std::size_t i = 2; i <= 5; ++i) EXPECT_EQ(b.tags[i].kind, TypeKind::Date) << b.tokens[i];
  EXPECT_TRUE(b.tags[6].is_none());

  TaggedQuestion c = untagged("on 12 march 2004");
  tag_numbers(c);
  for (std::size_t i = 1; i <= 3; ++i) EXPECT_EQ(c.tags[i].kind, TypeKind::Date) << c.tokens[i];
}

TEST(Entities, MortDruckerIsPerson) {
  TaggedQuestion tq = untagged(kFigure1Question);
  tag_entities(tq, figure1_gazetteer());
  EXPECT_EQ(tq.tags[4].kind, TypeKind::Person);
  EXPECT_EQ(tq.tags[5].kind, TypeKind::Person);
  EXPECT_TRUE(tq.tags[0].is_none());
}

TEST(Entities, AbsentTokenStaysNone) {
  TaggedQuestion tq = untagged("who is nobody");
  tag_entities(tq, figure1_gazetteer());
  for (const auto& t : tq.tags) EXPECT_TRUE(t.is_none());
}

TEST(Entities, CountryOutranksPlace) {
  std::istringstream in("georgia\tplace\ngeorgia\tcountry\n");
  const Gazetteer g = Gazetteer::load(in);
  EXPECT_EQ(g.find("georgia"), TypeKind::Country);
  std::istringstream rev("georgia\tcountry\ngeorgia\tplace\n");
  EXPECT_EQ(Gazetteer::load(rev).find("georgia"), TypeKind::Country);
}

TEST(Gazetteer, KeysNormalised) {
  Gazetteer g;
  g.add("  Mort   DRUCKER ", TypeKind::Person);
  EXPECT_EQ(g.find("mort drucker"), TypeKind::Person);
}

TEST(Gazetteer, ErrorsNameTheLine) {
  std::istringstream in("# comment\nmort drucker\tperson\n\nparis\tcity\n");
  try {
    Gazetteer::load(in, "g.tsv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("g.tsv:4"), std::string::npos) << e.what();
  }
  std::istringstream no_tab("paris place\n");
  EXPECT_THROW(Gazetteer::load(no_tab), Error);
}

TEST(Content, Figure1TagSequence) {
  const Table t = figure1_table();
  TaggedQuestion tq = recognize(kFigure1Question, t.schema, &t, TypingMode::Content, nullptr);
  EXPECT_EQ(labels(tq, t.schema),
            (std::vector<std::string>{"none", "column", "column", "none", "artist", "artist", "none", "none",
                                      "column", "none", "column", "issue", "none"}));
  EXPECT_EQ(tq.tags[4], TypeTag::column_value(3));
  EXPECT_EQ(tq.tags[5], TypeTag::column_value(3));
}

TEST(Content, LowestColumnWinsTies) {
  Table t;
  t.schema = schema_of({"first", "second"});
  t.rows = {{std::string("x"), std::string("2004")}, {std::string("2004"), std::string("y")}};
  TaggedQuestion tq = untagged("what about 2004 ?");
  tag_content(tq, t);
  EXPECT_EQ(tq.tags[2], TypeTag::column_value(0));
}

TEST(Content, NumericCellsMatchTheirText) {
  Table t;
  t.schema = {"t", {{"a", ColumnKind::Text}, {"n", ColumnKind::Real}}};
  t.rows = {{std::string("x"), 2004.0}};
  TaggedQuestion tq = untagged("in 2004");
  tag_content(tq, t);
  EXPECT_EQ(tq.tags[1], TypeTag::column_value(1));
}

TEST(Recognize, InsensitiveFigure1) {
  const Table t = figure1_table();
  const Gazetteer g = figure1_gazetteer();
  TaggedQuestion tq = recognize(kFigure1Question, t.schema, &t, TypingMode::Insensitive, &g);
  EXPECT_EQ(labels(tq, t.schema),
            (std::vector<std::string>{"none", "column", "column", "none", "person", "person", "none", "none",
                                      "column", "none", "column", "float", "none"}));
}

TEST(Recognize, StopWordsOnly) {
  const Table t = figure1_table();
  const Gazetteer g = figure1_gazetteer();
  TaggedQuestion tq = recognize("what is the of and", t.schema, &t, TypingMode::Content, &g);
  for (const auto& tag : tq.tags) EXPECT_TRUE(tag.is_none());
}

TEST(Recognize, ModesDifferExactlyOnValueTokens) {
  const Table t = figure1_table();
  const Gazetteer g = figure1_gazetteer();
  const auto a = recognize(kFigure1Question, t.schema, &t, TypingMode::Insensitive, &g);
  const auto b = recognize(kFigure1Question, t.schema, &t, TypingMode::Content, &g);
  std::set<std::size_t> differ, value_tokens;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a.tags[i] == b.tags[i])) differ.insert(i);
    if (b.tags[i].kind == TypeKind::ColumnValue) value_tokens.insert(i);
  }
  EXPECT_EQ(differ, value_tokens);
  EXPECT_EQ(differ, (std::set<std::size_t>{4, 5, 11}));
}

TEST(Recognize, IdempotentOnRejoinedTokens) {
  const Table t = figure1_table();
  const Gazetteer g = figure1_gazetteer();
  for (auto mode : {TypingMode::Insensitive, TypingMode::Content}) {
    const auto a = recognize(kFigure1Question, t.schema, &t, mode, &g);
    std::string joined;
    for (const auto& tok : a.tokens) joined += tok + " ";
    const auto b = recognize(joined, t.schema, &t, mode, &g);
    EXPECT_EQ(a.tokens, b.tokens);
    EXPECT_EQ(a.tags, b.tags);
  }
}

TEST(Recognize, LengthsParallelAndColumnsInRange) {
  const Table t = figure1_table();
  const auto tq = recognize("artist mort drucker drew the pink panther in april 1964 for issue 86 and 89 !",
                            t.schema, &t, TypingMode::Content, nullptr);
  tq.check();
  EXPECT_EQ(tq.tokens.size(), tq.tags.size());
  EXPECT_EQ(tq.tokens.size(), tq.char_spans.size());
  for (const auto& tag : tq.tags) {
    if (tag.kind == TypeKind::ColumnValue) {
      EXPECT_LT(tag.column, t.schema.size());
    }
  }
}

TEST(Recognize, ContentModeNeedsTable) {
  const Table t = figure1_table();
  EXPECT_THROW(recognize("x", t.schema, nullptr, TypingMode::Content, nullptr), Error);
  EXPECT_THROW(recognize(" ", t.schema, &t, TypingMode::Insensitive, nullptr), Error);
}

TEST(Recognize, ModeNames) {
  EXPECT_EQ(parse_mode("content"), TypingMode::Content);
  EXPECT_EQ(mode_name(TypingMode::Insensitive), "insensitive");
  EXPECT_THROW(parse_mode("other"), Error);
}
