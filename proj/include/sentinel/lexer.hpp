#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sentinel/corpus.hpp"

namespace sentinel {

enum class TokenKind {
  Whitespace,
  Comment,
  Directive,  // C preprocessor line, kept atomic
  String,
  Char,
  Number,
  Identifier,
  Keyword,
  Punct,
};

struct Token {
  TokenKind kind = TokenKind::Punct;
  std::string text;
  size_t pos = 0;
};

class LexError : public std::runtime_error {
 public:
  explicit LexError(const std::string& what) : std::runtime_error(what) {}
};

// Tokenizes source such that concatenating token texts reproduces the input
// byte-for-byte. Throws LexError (UNLEXABLE_SOURCE) on unterminated strings,
// chars or block comments.
std::vector<Token> lex(Language lang, const std::string& text);

const std::set<std::string>& keywords(Language lang);
// Well-known library/builtin names the metamorphic generator must treat as
// reserved: never renamed, never produced as fresh names.
const std::set<std::string>& builtins(Language lang);

bool is_reserved_word(Language lang, const std::string& name);
bool is_valid_identifier(Language lang, const std::string& name);

// True when every brace/bracket/paren in the token stream pairs up.
bool delimiters_balanced(const std::vector<Token>& tokens);

}  // namespace sentinel
