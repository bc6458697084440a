#include <gtest/gtest.h>

#include <random>

#include "codetopic/lexer.hpp"
#include "codetopic/text.hpp"
#include "codetopic/topic.hpp"

namespace codetopic {
namespace {

TEST(Topic, NamesRoundTrip) {
  for (Topic t : kAllTopics) EXPECT_EQ(parse_topic(topic_name(t)), t);
  EXPECT_FALSE(parse_topic("Bogus").has_value());
  EXPECT_FALSE(parse_topic("classes").has_value());
}

TEST(Topic, ValidNamesListsAllNine) {
  const std::string names = valid_topic_names();
  for (Topic t : kAllTopics) EXPECT_NE(names.find(topic_name(t)), std::string::npos);
}

TEST(Topic, SetOperations) {
  TopicSet s{Topic::Friend, Topic::Templates};
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(Topic::Friend));
  EXPECT_FALSE(s.contains(Topic::Classes));
  s.erase(Topic::Friend);
  EXPECT_EQ(s.to_vector(), std::vector<Topic>{Topic::Templates});
  const auto bin = TopicSet{Topic::Classes, Topic::VirtualFunction}.to_binary();
  EXPECT_EQ(bin[0], 1);
  EXPECT_EQ(bin[8], 1);
  EXPECT_EQ(bin[4], 0);
  EXPECT_EQ(TopicSet::from_bits(0xFFFF).size(), kTopicCount);
}

TEST(Utf8, RoundTripsMultibyteText) {
  const std::string s = "int x; // \xC3\xA9t\xC3\xA9 \xE2\x9C\x93 \xF0\x9F\x98\x80";
  const std::u32string u = decode_utf8(s);
  EXPECT_EQ(u.size(), 17u);
  EXPECT_EQ(encode_utf8(u), s);
}

TEST(Utf8, InvalidBytesAreReplacedAndCounted) {
  std::size_t bad = 0;
  const std::u32string u = decode_utf8("a\xFF" "b\xC3", &bad);
  EXPECT_EQ(bad, 2u);
  EXPECT_EQ(u, (std::u32string{U'a', 0xFFFD, U'b', 0xFFFD}));
}

TEST(Utf8, OverlongAndSurrogatesRejected) {
  std::size_t bad = 0;
  decode_utf8("\xC0\xAF", &bad);
  EXPECT_GE(bad, 1u);
  bad = 0;
  decode_utf8("\xED\xA0\x80", &bad);
  EXPECT_GE(bad, 1u);
}

TEST(Span, Relations) {
  const Span a{2, 5};
  EXPECT_EQ(a.length(), 3u);
  EXPECT_TRUE(a.contains(Span{3, 5}));
  EXPECT_FALSE(a.contains(Span{1, 3}));
  EXPECT_TRUE(a.intersects(Span{4, 9}));
  EXPECT_FALSE(a.intersects(Span{5, 9}));
  EXPECT_TRUE(a.valid_for(5));
  EXPECT_FALSE(a.valid_for(4));
  EXPECT_FALSE((Span{3, 3}).valid_for(10));
}

std::u32string U(std::string_view s) { return decode_utf8(s); }

TEST(Lexer, MaskSeparatesCommentsAndLiterals) {
  const auto text = U("a // x\nb /* y */ \"s{\" 'c' d");
  LexedSource src(text);
  const auto& m = src.mask();
  EXPECT_EQ(m[0], LexClass::Code);
  EXPECT_EQ(m[2], LexClass::LineComment);
  EXPECT_EQ(m[5], LexClass::LineComment);
  EXPECT_EQ(m[6], LexClass::Code);  // newline ends the comment
  EXPECT_EQ(m[9], LexClass::BlockComment);
  EXPECT_EQ(m[15], LexClass::BlockComment);
  EXPECT_EQ(m[17], LexClass::String);
  EXPECT_EQ(m[22], LexClass::CharLiteral);
  EXPECT_EQ(m[26], LexClass::Code);
}

TEST(Lexer, EscapesAndRawStrings) {
  const auto text = U(R"q(x = "a\"}"; y = R"d(})" )d"; z = '\'';)q");
  LexedSource src(text);
  std::size_t braces = 0;
  for (std::size_t i = 0; i < src.size(); ++i) braces += src.is_punct(i, U'}') ? 1 : 0;
  EXPECT_EQ(braces, 0u);
  EXPECT_TRUE(src.is_ident(src.size() - 4, U"z"));
}

TEST(Lexer, DigitSeparatorsAreNotCharLiterals) {
  const auto text = U("int n = 1'000'000; char c = '{';");
  LexedSource src(text);
  EXPECT_EQ(src.mask()[10], LexClass::Code);
  std::size_t strings = 0;
  for (const auto& t : src.tokens()) strings += t.kind == Token::Kind::Char ? 1 : 0;
  EXPECT_EQ(strings, 1u);
}

TEST(Lexer, DirectivesAreSkipped) {
  const auto text = U("#define OPEN {\n#include <x>\nint a;");
  LexedSource src(text);
  ASSERT_GE(src.size(), 1u);
  EXPECT_TRUE(src.is_ident(0, U"int"));
  EXPECT_TRUE(src[0].after_directive);
}

TEST(Lexer, BracePartners) {
  const auto text = U("void f() { if (x) { y(); } }");
  LexedSource src(text);
  std::vector<std::size_t> opens;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src.is_punct(i, U'{')) opens.push_back(i);
  }
  ASSERT_EQ(opens.size(), 2u);
  EXPECT_EQ(src.brace_partner(opens[0]), src.size() - 1);
  EXPECT_EQ(src.enclosing_brace(opens[1]), opens[0]);
  EXPECT_EQ(src.brace_partner(src.brace_partner(opens[1])), opens[1]);
}

TEST(Lexer, UnmatchedBracesHaveNoPartner) {
  const auto text = U("void f() { {");
  LexedSource src(text);
  EXPECT_EQ(src.brace_partner(src.size() - 1), kNoToken);
}

TEST(Lexer, StatementStart) {
  const auto text = U("int a; class X {\npublic:\n  virtual void f() const;\n};");
  LexedSource src(text);
  std::size_t f = 0;
  while (!src.is_ident(f, U"f")) ++f;
  EXPECT_TRUE(src.is_ident(src.statement_start(f), U"virtual"));
  std::size_t x = 0;
  while (!src.is_ident(x, U"X")) ++x;
  EXPECT_TRUE(src.is_ident(src.statement_start(x), U"class"));
}

TEST(Lexer, BlockKinds) {
  const auto text = U("namespace n { class C { int f() const { try { g(); } catch (...) { } } }; }");
  LexedSource src(text);
  const auto blocks = brace_blocks(src);
  std::vector<BraceBlock::Kind> kinds;
  for (const auto& b : blocks) kinds.push_back(b.kind);
  using K = BraceBlock::Kind;
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), K::Namespace), kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), K::Class), kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), K::Function), kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), K::Try), kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), K::Catch), kinds.end());
  for (const auto& b : blocks) {
    if (b.kind == K::Try || b.kind == K::Catch) {
      EXPECT_EQ(text.substr(b.extent_start, 3), U"try");
      EXPECT_EQ(text[b.extent_end - 1], U'}');
    }
  }
}

// Property: on random brace/quote/comment soup the brace counts of the whole
// text match a naive counter that honours the same lexical rules.
TEST(Lexer, CodeBraceCountMatchesNaiveScan) {
  std::mt19937_64 rng(17);
  const std::u32string alphabet = U"{}  ab\n/*\"';";
  for (int round = 0; round < 300; ++round) {
    std::u32string text;
    const std::size_t n = rng() % 60;
    for (std::size_t i = 0; i < n; ++i) text += alphabet[rng() % alphabet.size()];
    LexedSource src(text);
    std::size_t open = 0, close = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (src.mask()[i] != LexClass::Code) continue;
      open += text[i] == U'{';
      close += text[i] == U'}';
    }
    const auto counted = count_code_braces(src, Span{0, text.size()});
    EXPECT_EQ(counted.first, open);
    EXPECT_EQ(counted.second, close);
  }
}

}  // namespace
}  // namespace codetopic
