#include "sentinel/srcmodel.hpp"

#include <algorithm>

namespace sentinel {
namespace {

bool is_sig(const Token& t) {
  return t.kind != TokenKind::Whitespace && t.kind != TokenKind::Comment;
}

std::vector<Token> significant(const std::vector<Token>& toks) {
  std::vector<Token> out;
  for (const auto& t : toks)
    if (is_sig(t)) out.push_back(t);
  return out;
}

bool is_punct(const Token& t, const char* text) {
  return t.kind == TokenKind::Punct && t.text == text;
}

bool is_kw(const Token& t, const char* text) {
  return t.kind == TokenKind::Keyword && t.text == text;
}

bool is_type_keyword(const Token& t) {
  static const std::set<std::string> kTypeKw = {
      "int",    "long",   "short", "byte",     "char", "boolean",
      "float",  "double", "void",  "var",      // java
      "signed", "unsigned", "const", "struct"  // c
  };
  return t.kind == TokenKind::Keyword && kTypeKw.count(t.text) > 0;
}

// Could the previous token be the tail of a type in a declaration?
bool type_ish(const Token& t) {
  return t.kind == TokenKind::Identifier || is_type_keyword(t) ||
         is_punct(t, "]") || is_punct(t, ">");
}

bool is_type_decl_kw(const Token& t) {
  return is_kw(t, "class") || is_kw(t, "interface") || is_kw(t, "enum") ||
         is_kw(t, "record");
}

int matching_brace(const std::vector<Token>& sig, int open) {
  int depth = 0;
  for (int i = open; i < (int)sig.size(); ++i) {
    if (is_punct(sig[i], "{")) ++depth;
    if (is_punct(sig[i], "}")) {
      --depth;
      if (depth == 0) return i;
    }
  }
  return (int)sig.size() - 1;
}

int count_arity(const std::vector<Token>& sig, int open_paren) {
  int depth = 0, commas = 0;
  bool any = false;
  for (int i = open_paren; i < (int)sig.size(); ++i) {
    const auto& t = sig[i];
    if (is_punct(t, "(") || is_punct(t, "[") || is_punct(t, "<"))
      ++depth;
    else if (is_punct(t, ")") || is_punct(t, "]") || is_punct(t, ">")) {
      --depth;
      if (depth == 0) break;
    } else {
      if (depth == 1) {
        any = true;
        if (is_punct(t, ",")) ++commas;
      }
    }
  }
  return any ? commas + 1 : 0;
}

}  // namespace

bool TypeOutline::has_method(const std::string& n) const {
  return std::any_of(methods.begin(), methods.end(),
                     [&](const MethodDecl& m) { return m.name == n; });
}

bool TypeOutline::has_field(const std::string& n) const {
  return std::find(fields.begin(), fields.end(), n) != fields.end();
}

const TypeOutline* find_type(const std::vector<TypeOutline>& types, const std::string& name) {
  for (const auto& t : types)
    if (t.name == name) return &t;
  return nullptr;
}

std::vector<TypeOutline> java_outline(const std::vector<SourceUnit>& units) {
  std::vector<TypeOutline> out;
  for (const auto& u : units) {
    std::vector<Token> sig;
    try {
      sig = significant(lex(Language::Java, u.text));
    } catch (const LexError&) {
      continue;  // unlexable units contribute nothing to the outline
    }
    for (int i = 0; i + 1 < (int)sig.size(); ++i) {
      if (!is_type_decl_kw(sig[i]) || sig[i + 1].kind != TokenKind::Identifier)
        continue;
      TypeOutline type;
      type.name = sig[i + 1].text;
      int body_open = -1;
      for (int j = i + 2; j < (int)sig.size(); ++j) {
        if (is_punct(sig[j], "{")) {
          body_open = j;
          break;
        }
        if (is_kw(sig[j], "extends") && j + 1 < (int)sig.size() &&
            sig[j + 1].kind == TokenKind::Identifier)
          type.extends = sig[j + 1].text;
      }
      if (body_open < 0) continue;
      int body_close = matching_brace(sig, body_open);
      // Members sit at brace depth 1 relative to the body, outside parens.
      int brace = 0, paren = 0;
      for (int j = body_open; j <= body_close; ++j) {
        const auto& t = sig[j];
        if (is_punct(t, "{")) ++brace;
        else if (is_punct(t, "}")) --brace;
        else if (is_punct(t, "(")) ++paren;
        else if (is_punct(t, ")")) --paren;
        if (brace != 1 || paren != 0) continue;
        if (t.kind != TokenKind::Identifier || j == body_open) continue;
        const auto& prev = sig[j - 1];
        const auto& next = sig[j + 1];  // body_close guards the bound
        if (is_punct(prev, ".")) continue;
        if (is_punct(next, "(")) {
          bool ctor = t.text == type.name &&
                      (prev.kind == TokenKind::Keyword || is_punct(prev, "{") ||
                       is_punct(prev, "}") || is_punct(prev, ";"));
          if (type_ish(prev) || ctor)
            type.methods.push_back({t.text, count_arity(sig, j + 1)});
        } else if (is_punct(next, "=") || is_punct(next, ";") || is_punct(next, ",")) {
          if (type_ish(prev) || is_punct(prev, ","))
            type.fields.push_back(t.text);
        }
      }
      out.push_back(std::move(type));
    }
  }
  return out;
}

namespace {

bool user_identifier(Language lang, const Token& t) {
  return t.kind == TokenKind::Identifier && !is_reserved_word(lang, t.text);
}

void collect_braced(Language lang, const std::vector<Token>& sig, DeclaredNames& out) {
  for (int i = 0; i < (int)sig.size(); ++i) {
    const auto& t = sig[i];
    const Token* prev = i > 0 ? &sig[i - 1] : nullptr;
    const Token* next = i + 1 < (int)sig.size() ? &sig[i + 1] : nullptr;
    if (is_type_decl_kw(t) && next && user_identifier(lang, *next)) {
      out.classes.insert(next->text);
      continue;
    }
    if (lang == Language::Java && is_kw(t, "package")) {
      for (int j = i + 1; j < (int)sig.size() && !is_punct(sig[j], ";"); ++j)
        if (user_identifier(lang, sig[j])) out.packages.insert(sig[j].text);
      continue;
    }
    if (!user_identifier(lang, t) || !prev || !next) continue;
    if (is_punct(*prev, ".") || is_kw(*prev, "new")) continue;
    if (is_punct(*next, "(")) {
      if (type_ish(*prev) && !is_type_decl_kw(*prev)) out.methods.insert(t.text);
    } else if (is_punct(*next, "=") || is_punct(*next, ";") ||
               is_punct(*next, ",") || is_punct(*next, ")") ||
               is_punct(*next, ":")) {
      // skip == (lexed as two adjacent '=' puncts)
      if (is_punct(*next, "=") && i + 2 < (int)sig.size() &&
          is_punct(sig[i + 2], "=") && sig[i + 2].pos == next->pos + 1)
        continue;
      if (type_ish(*prev) && !is_type_decl_kw(*prev)) out.variables.insert(t.text);
    }
  }
}

void collect_python(const std::vector<Token>& sig, DeclaredNames& out) {
  const Language lang = Language::Python;
  for (int i = 0; i < (int)sig.size(); ++i) {
    const auto& t = sig[i];
    const Token* prev = i > 0 ? &sig[i - 1] : nullptr;
    const Token* next = i + 1 < (int)sig.size() ? &sig[i + 1] : nullptr;
    if (is_kw(t, "class") && next && user_identifier(lang, *next)) {
      out.classes.insert(next->text);
      continue;
    }
    if (is_kw(t, "def") && next && user_identifier(lang, *next)) {
      out.methods.insert(next->text);
      // parameters: identifiers right after '(' or ',' inside the def parens
      int depth = 0;
      for (int j = i + 2; j < (int)sig.size(); ++j) {
        if (is_punct(sig[j], "(")) ++depth;
        else if (is_punct(sig[j], ")")) {
          if (--depth == 0) break;
        } else if (depth == 1 && user_identifier(lang, sig[j]) &&
                   (is_punct(sig[j - 1], "(") || is_punct(sig[j - 1], ","))) {
          out.variables.insert(sig[j].text);
        }
      }
      continue;
    }
    if (!user_identifier(lang, t) || !next) continue;
    if (prev && is_punct(*prev, ".")) continue;
    bool eq = is_punct(*next, "=") &&
              !(i + 2 < (int)sig.size() && is_punct(sig[i + 2], "=") &&
                sig[i + 2].pos == next->pos + 1);
    bool for_target = prev && is_kw(*prev, "for");
    if (eq || for_target) out.variables.insert(t.text);
  }
}

}  // namespace

DeclaredNames collect_declarations(Language lang, const std::vector<SourceUnit>& units) {
  DeclaredNames out;
  for (const auto& u : units) {
    std::vector<Token> sig;
    try {
      sig = significant(lex(lang, u.text));
    } catch (const LexError&) {
      continue;
    }
    if (lang == Language::Python)
      collect_python(sig, out);
    else
      collect_braced(lang, sig, out);
  }
  return out;
}

std::set<std::string> all_identifiers(Language lang, const std::vector<SourceUnit>& units) {
  std::set<std::string> out;
  for (const auto& u : units) {
    try {
      for (const auto& t : lex(lang, u.text))
        if (t.kind == TokenKind::Identifier) out.insert(t.text);
    } catch (const LexError&) {
    }
  }
  return out;
}

std::vector<SourceUnit> split_java_units(const std::vector<SourceUnit>& units) {
  std::vector<SourceUnit> out;
  int synth = 0;
  for (const auto& u : units) {
    bool has_java_path = u.path.size() > 5 && u.path.substr(u.path.size() - 5) == ".java";
    ++synth;
    std::vector<Token> toks;
    try {
      toks = lex(Language::Java, u.text);
    } catch (const LexError&) {
      out.push_back(has_java_path ? u : SourceUnit{"Unit" + std::to_string(synth) + ".java", u.text});
      continue;
    }
    // Find each top-level type declaration and cut the raw text at the start
    // of the statement introducing it (so modifiers/comments stay attached).
    std::vector<Token> sig = significant(toks);
    struct Cut { size_t pos; std::string name; };
    std::vector<Cut> cuts;
    int brace = 0;
    for (int i = 0; i < (int)sig.size(); ++i) {
      if (is_punct(sig[i], "{")) ++brace;
      else if (is_punct(sig[i], "}")) --brace;
      else if (brace == 0 && is_type_decl_kw(sig[i]) && i + 1 < (int)sig.size() &&
               sig[i + 1].kind == TokenKind::Identifier) {
        // walk back over modifier keywords/annotations
        int j = i;
        while (j > 0 && (sig[j - 1].kind == TokenKind::Keyword ||
                         is_punct(sig[j - 1], "@") ||
                         (is_punct(sig[j - 1], "@") == false &&
                          sig[j - 1].kind == TokenKind::Identifier && j > 1 &&
                          is_punct(sig[j - 2], "@"))))
          --j;
        cuts.push_back({sig[j].pos, sig[i + 1].text});
      }
    }
    // A unit that already names a .java file and holds at most one type is a
    // valid compilation unit as-is; everything else splits per type.
    if (has_java_path && cuts.size() <= 1) {
      out.push_back(u);
      continue;
    }
    if (cuts.empty()) {
      out.push_back({"Unit" + std::to_string(synth) + ".java", u.text});
      continue;
    }
    for (size_t c = 0; c < cuts.size(); ++c) {
      size_t begin = c == 0 ? 0 : cuts[c].pos;
      size_t end = c + 1 < cuts.size() ? cuts[c + 1].pos : u.text.size();
      std::string part = u.text.substr(begin, end - begin);
      if (!part.empty() && part.back() != '\n') part += '\n';
      out.push_back({cuts[c].name + ".java", std::move(part)});
    }
  }
  return out;
}

}  // namespace sentinel
