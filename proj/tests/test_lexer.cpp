#include "sentinel/lexer.hpp"

#include <gtest/gtest.h>

#include <numeric>

#include "test_support.hpp"

using namespace sentinel;

namespace {

std::string concat(const std::vector<Token>& toks) {
  std::string out;
  for (const auto& t : toks) out += t.text;
  return out;
}

std::vector<std::string> texts_of(const std::vector<Token>& toks, TokenKind kind) {
  std::vector<std::string> out;
  for (const auto& t : toks)
    if (t.kind == kind) out.push_back(t.text);
  return out;
}

}  // namespace

TEST(Lexer, RoundTripsJavaSource) {
  std::string src =
      "public class A {\n"
      "  // note\n"
      "  /* block */\n"
      "  String s = \"hi\\\"x\";\n"
      "  char c = 'q';\n"
      "  int n = 0x1F + 2.5e3;\n"
      "}\n";
  auto toks = lex(Language::Java, src);
  EXPECT_EQ(concat(toks), src);
  auto ids = texts_of(toks, TokenKind::Identifier);
  EXPECT_NE(std::find(ids.begin(), ids.end(), "A"), ids.end());
  EXPECT_NE(std::find(ids.begin(), ids.end(), "s"), ids.end());
  auto kws = texts_of(toks, TokenKind::Keyword);
  EXPECT_NE(std::find(kws.begin(), kws.end(), "public"), kws.end());
  EXPECT_NE(std::find(kws.begin(), kws.end(), "class"), kws.end());
  auto strings = texts_of(toks, TokenKind::String);
  ASSERT_EQ(strings.size(), 1u);
  EXPECT_EQ(strings[0], "\"hi\\\"x\"");
}

TEST(Lexer, RoundTripsPythonSource) {
  std::string src =
      "class B:\n"
      "    def a(self) -> None:\n"
      "        text = 'hello'  # comment\n"
      "        d = \"double\"\n";
  auto toks = lex(Language::Python, src);
  EXPECT_EQ(concat(toks), src);
  auto kws = texts_of(toks, TokenKind::Keyword);
  EXPECT_NE(std::find(kws.begin(), kws.end(), "class"), kws.end());
  EXPECT_NE(std::find(kws.begin(), kws.end(), "def"), kws.end());
  auto comments = texts_of(toks, TokenKind::Comment);
  ASSERT_EQ(comments.size(), 1u);
  EXPECT_EQ(comments[0], "# comment");
}

TEST(Lexer, RoundTripsCSourceWithDirectives) {
  std::string src =
      "#include <stdio.h>\n"
      "int main() {\n"
      "  printf(\"%d\\n\", 1);\n"
      "  return 0;\n"
      "}\n";
  auto toks = lex(Language::C, src);
  EXPECT_EQ(concat(toks), src);
  auto directives = texts_of(toks, TokenKind::Directive);
  ASSERT_EQ(directives.size(), 1u);
  EXPECT_EQ(directives[0], "#include <stdio.h>");
}

TEST(Lexer, ThrowsOnUnterminatedString) {
  EXPECT_THROW(lex(Language::Java, "String s = \"oops;\n"), LexError);
  EXPECT_THROW(lex(Language::Python, "s = 'oops\n"), LexError);
  EXPECT_THROW(lex(Language::Java, "/* never closed"), LexError);
}

TEST(Lexer, KeywordTables) {
  EXPECT_TRUE(keywords(Language::Java).count("extends"));
  EXPECT_TRUE(keywords(Language::Python).count("continue"));
  EXPECT_TRUE(keywords(Language::C).count("return"));
  EXPECT_FALSE(keywords(Language::Java).count("doQuery"));
}

TEST(Lexer, ReservedCoversKeywordsAndBuiltins) {
  EXPECT_TRUE(is_reserved_word(Language::Java, "class"));
  EXPECT_TRUE(is_reserved_word(Language::Java, "String"));
  EXPECT_TRUE(is_reserved_word(Language::Python, "self"));
  EXPECT_TRUE(is_reserved_word(Language::C, "printf"));
  EXPECT_FALSE(is_reserved_word(Language::Java, "doQuery"));
}

TEST(Lexer, ValidIdentifier) {
  EXPECT_TRUE(is_valid_identifier(Language::Java, "doQuery"));
  EXPECT_TRUE(is_valid_identifier(Language::Java, "_x9"));
  EXPECT_FALSE(is_valid_identifier(Language::Java, "9x"));
  EXPECT_FALSE(is_valid_identifier(Language::Java, "class"));
  EXPECT_FALSE(is_valid_identifier(Language::Python, "continue"));
  EXPECT_FALSE(is_valid_identifier(Language::Java, ""));
}

TEST(Lexer, DelimiterBalance) {
  EXPECT_TRUE(delimiters_balanced(lex(Language::Java, "class A { int f() { return (1); } }")));
  EXPECT_FALSE(delimiters_balanced(lex(Language::Java, "class A { int f() { return (1); }")));
  EXPECT_FALSE(delimiters_balanced(lex(Language::Java, "class A }{")));
  // Delimiters inside strings and comments do not count.
  EXPECT_TRUE(delimiters_balanced(lex(Language::Java, "String s = \"}{\"; // }(")));
}
