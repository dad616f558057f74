#include "sentinel/lexer.hpp"

#include <cctype>

namespace sentinel {

namespace {

const std::set<std::string> kJavaKeywords = {
    "abstract", "assert",    "boolean",  "break",     "byte",       "case",   "catch",
    "char",     "class",     "const",    "continue",  "default",    "do",     "double",
    "else",     "enum",      "extends",  "final",     "finally",    "float",  "for",
    "goto",     "if",        "implements", "import",  "instanceof", "int",    "interface",
    "long",     "native",    "new",      "package",   "private",    "protected", "public",
    "return",   "short",     "static",   "strictfp",  "super",      "switch", "synchronized",
    "this",     "throw",     "throws",   "transient", "try",        "void",   "volatile",
    "while",    "record",    "var",      "yield",     "sealed",     "permits",
    "true",     "false",     "null"};

const std::set<std::string> kJavaBuiltins = {
    "String",  "System",  "Object",   "Integer",   "Long",       "Short",   "Byte",
    "Character", "Boolean", "Double", "Float",     "Math",       "Override", "Exception",
    "RuntimeException", "Error", "Thread", "Runnable", "StringBuilder", "List", "ArrayList",
    "Map",     "HashMap", "Set",      "HashSet",   "Iterator",   "Comparable", "Number",
    "out",     "err",     "in",       "println",   "print",      "printf",  "format",
    "valueOf", "toString", "equals",  "hashCode",  "length",     "main"};

const std::set<std::string> kPythonKeywords = {
    "False", "None",  "True",  "and",    "as",     "assert", "async", "await",
    "break", "class", "continue", "def", "del",    "elif",   "else",  "except",
    "finally", "for", "from",  "global", "if",     "import", "in",    "is",
    "lambda", "nonlocal", "not", "or",   "pass",   "raise",  "return", "try",
    "while", "with",  "yield", "match"};

const std::set<std::string> kPythonBuiltins = {
    "self",   "cls",   "print", "len",   "range", "str",    "int",       "float",
    "bool",   "list",  "dict",  "set",   "tuple", "object", "type",      "super",
    "isinstance", "Exception", "ValueError", "TypeError", "KeyError", "IndexError",
    "RuntimeError", "NameError", "abs", "min",   "max",    "sum",       "map",
    "filter", "zip",   "enumerate", "sorted", "open", "input", "repr",  "hash",
    "iter",   "next",  "staticmethod", "classmethod", "property", "__init__",
    "__name__", "__main__"};

const std::set<std::string> kCKeywords = {
    "auto",   "break",  "case",     "char",   "const",    "continue", "default",
    "do",     "double", "else",     "enum",   "extern",   "float",    "for",
    "goto",   "if",     "inline",   "int",    "long",     "register", "restrict",
    "return", "short",  "signed",   "sizeof", "static",   "struct",   "switch",
    "typedef", "union", "unsigned", "void",   "volatile", "while",    "_Bool",
    "bool",   "true",   "false"};

const std::set<std::string> kCBuiltins = {
    "main",   "printf", "scanf",  "fprintf", "sprintf", "snprintf", "malloc",
    "free",   "calloc", "realloc", "memcpy", "memset",  "strlen",   "strcpy",
    "strcmp", "strcat", "exit",   "puts",    "putchar", "getchar",  "fopen",
    "fclose", "size_t", "NULL",   "FILE",    "stdin",   "stdout",   "stderr"};

bool ident_start(char c, Language lang) {
  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return true;
  return lang == Language::Java && c == '$';
}

bool ident_cont(char c, Language lang) {
  return ident_start(c, lang) || std::isdigit(static_cast<unsigned char>(c));
}

struct Lexer {
  Language lang;
  const std::string& src;
  size_t i = 0;
  std::vector<Token> out;

  char peek(size_t ahead = 0) const {
    return i + ahead < src.size() ? src[i + ahead] : '\0';
  }

  void emit(TokenKind kind, size_t start) {
    out.push_back({kind, src.substr(start, i - start), start});
  }

  [[noreturn]] void fail(const std::string& what, size_t at) {
    size_t line = 1;
    for (size_t j = 0; j < at && j < src.size(); ++j)
      if (src[j] == '\n') ++line;
    throw LexError("UNLEXABLE_SOURCE: " + what + " at line " + std::to_string(line));
  }

  void whitespace() {
    size_t start = i;
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    emit(TokenKind::Whitespace, start);
  }

  void line_comment() {
    size_t start = i;
    while (i < src.size() && src[i] != '\n') ++i;
    emit(TokenKind::Comment, start);
  }

  void block_comment() {
    size_t start = i;
    i += 2;
    while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) ++i;
    if (i + 1 >= src.size()) fail("unterminated block comment", start);
    i += 2;
    emit(TokenKind::Comment, start);
  }

  void directive() {
    size_t start = i;
    while (i < src.size() && src[i] != '\n') {
      if (src[i] == '\\' && i + 1 < src.size() && src[i + 1] == '\n') i += 2;
      else ++i;
    }
    emit(TokenKind::Directive, start);
  }

  void quoted(char quote, TokenKind kind) {
    size_t start = i;
    ++i;
    while (i < src.size() && src[i] != quote) {
      if (src[i] == '\\' && i + 1 < src.size()) i += 2;
      else if (src[i] == '\n') fail("unterminated literal", start);
      else ++i;
    }
    if (i >= src.size()) fail("unterminated literal", start);
    ++i;
    emit(kind, start);
  }

  void triple_quoted(char quote) {
    size_t start = i;
    i += 3;
    while (i + 2 < src.size() &&
           !(src[i] == quote && src[i + 1] == quote && src[i + 2] == quote)) {
      if (src[i] == '\\' && i + 1 < src.size()) i += 2;
      else ++i;
    }
    if (i + 2 >= src.size()) fail("unterminated triple-quoted string", start);
    i += 3;
    emit(TokenKind::String, start);
  }

  void number() {
    size_t start = i;
    while (i < src.size()) {
      char c = src[i];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
        ++i;
      } else if ((c == '+' || c == '-') && i > start &&
                 (src[i - 1] == 'e' || src[i - 1] == 'E')) {
        ++i;  // exponent sign
      } else {
        break;
      }
    }
    emit(TokenKind::Number, start);
  }

  void word() {
    size_t start = i;
    while (i < src.size() && ident_cont(src[i], lang)) ++i;
    std::string text = src.substr(start, i - start);

    // Python string prefixes: r'...', f"...", rb'...'
    if (lang == Language::Python && text.size() <= 2 && (peek() == '\'' || peek() == '"')) {
      bool prefix = true;
      for (char c : text) {
        char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (l != 'r' && l != 'b' && l != 'f' && l != 'u') prefix = false;
      }
      if (prefix) {
        i = start;  // re-lex as string including the prefix
        char q = src[i + text.size()];
        size_t body = start + text.size();
        if (body + 2 < src.size() && src[body + 1] == q && src[body + 2] == q) {
          i = body;
          triple_quoted(q);
        } else {
          i = body;
          quoted(q, TokenKind::String);
        }
        Token& tok = out.back();
        tok.pos = start;
        tok.text = src.substr(start, i - start);
        return;
      }
    }

    bool kw = keywords(lang).count(text) > 0;
    emit(kw ? TokenKind::Keyword : TokenKind::Identifier, start);
  }

  std::vector<Token> run() {
    while (i < src.size()) {
      char c = src[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        whitespace();
      } else if (lang != Language::Python && c == '/' && peek(1) == '/') {
        line_comment();
      } else if (lang != Language::Python && c == '/' && peek(1) == '*') {
        block_comment();
      } else if (lang == Language::Python && c == '#') {
        line_comment();
      } else if (lang == Language::C && c == '#' &&
                 (out.empty() || out.back().kind == TokenKind::Whitespace ||
                  out.back().kind == TokenKind::Directive)) {
        directive();
      } else if (c == '"' || (c == '\'' && lang == Language::Python)) {
        if (lang == Language::Python && peek(1) == c && peek(2) == c) triple_quoted(c);
        else quoted(c, TokenKind::String);
      } else if (c == '\'') {
        quoted('\'', TokenKind::Char);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        number();
      } else if (ident_start(c, lang)) {
        word();
      } else {
        size_t start = i;
        ++i;
        emit(TokenKind::Punct, start);
      }
    }
    return std::move(out);
  }
};

}  // namespace

std::vector<Token> lex(Language lang, const std::string& text) {
  Lexer lexer{lang, text};
  return lexer.run();
}

const std::set<std::string>& keywords(Language lang) {
  switch (lang) {
    case Language::Java: return kJavaKeywords;
    case Language::Python: return kPythonKeywords;
    case Language::C: return kCKeywords;
  }
  return kJavaKeywords;
}

const std::set<std::string>& builtins(Language lang) {
  switch (lang) {
    case Language::Java: return kJavaBuiltins;
    case Language::Python: return kPythonBuiltins;
    case Language::C: return kCBuiltins;
  }
  return kJavaBuiltins;
}

bool is_reserved_word(Language lang, const std::string& name) {
  return keywords(lang).count(name) > 0 || builtins(lang).count(name) > 0;
}

bool is_valid_identifier(Language lang, const std::string& name) {
  if (name.empty() || !ident_start(name[0], lang)) return false;
  for (char c : name)
    if (!ident_cont(c, lang)) return false;
  return keywords(lang).count(name) == 0;
}

bool delimiters_balanced(const std::vector<Token>& tokens) {
  std::vector<char> stack;
  for (const auto& t : tokens) {
    if (t.kind != TokenKind::Punct || t.text.size() != 1) continue;
    char c = t.text[0];
    if (c == '(' || c == '[' || c == '{') {
      stack.push_back(c);
    } else if (c == ')' || c == ']' || c == '}') {
      char open = c == ')' ? '(' : c == ']' ? '[' : '{';
      if (stack.empty() || stack.back() != open) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

}  // namespace sentinel
