#include "sentinel/toml.hpp"

#include <cctype>
#include <vector>

#include "sentinel/util.hpp"

namespace sentinel {
using namespace util;
namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  int line = 1;

  explicit Parser(const std::string& text) : s(text) {}

  bool eof() const { return pos >= s.size(); }
  char peek() const { return eof() ? '\0' : s[pos]; }

  char take() {
    char c = s[pos++];
    if (c == '\n') ++line;
    return c;
  }

  [[noreturn]] void fail(const std::string& what) { throw TomlError(line, what); }

  void skip_inline_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos;
  }

  void skip_comment() {
    if (peek() == '#')
      while (!eof() && peek() != '\n') ++pos;
  }

  // whitespace, comments and newlines — between top-level constructs
  void skip_blank() {
    for (;;) {
      skip_inline_ws();
      skip_comment();
      if (!eof() && peek() == '\n') {
        take();
        continue;
      }
      if (!eof() && peek() == '\r') {
        ++pos;
        continue;
      }
      break;
    }
  }

  void expect_line_end() {
    skip_inline_ws();
    skip_comment();
    if (eof()) return;
    if (peek() == '\r') ++pos;
    if (eof() || peek() == '\n')
      return;
    fail("unexpected trailing content");
  }

  std::string bare_key() {
    std::string k;
    while (!eof() && (std::isalnum((unsigned char)peek()) || peek() == '_' || peek() == '-'))
      k += take();
    if (k.empty()) fail("expected a key");
    return k;
  }

  std::vector<std::string> dotted_key() {
    std::vector<std::string> parts{bare_key()};
    for (;;) {
      skip_inline_ws();
      if (peek() != '.') break;
      take();
      skip_inline_ws();
      parts.push_back(bare_key());
    }
    return parts;
  }

  std::string basic_string() {
    take();  // opening quote
    std::string v;
    for (;;) {
      if (eof()) fail("unterminated string");
      char c = take();
      if (c == '"') break;
      if (c == '\n') fail("newline in string");
      if (c == '\\') {
        if (eof()) fail("unterminated escape");
        char e = take();
        switch (e) {
          case 'n': v += '\n'; break;
          case 't': v += '\t'; break;
          case 'r': v += '\r'; break;
          case '"': v += '"'; break;
          case '\\': v += '\\'; break;
          case 'b': v += '\b'; break;
          case 'f': v += '\f'; break;
          case 'u': {
            if (pos + 4 > s.size()) fail("bad \\u escape");
            unsigned code = 0;
            for (int i = 0; i < 4; ++i) {
              char h = take();
              code <<= 4;
              if (h >= '0' && h <= '9') code |= h - '0';
              else if (h >= 'a' && h <= 'f') code |= h - 'a' + 10;
              else if (h >= 'A' && h <= 'F') code |= h - 'A' + 10;
              else fail("bad \\u escape");
            }
            // BMP only; encode as UTF-8
            if (code < 0x80) {
              v += (char)code;
            } else if (code < 0x800) {
              v += (char)(0xC0 | (code >> 6));
              v += (char)(0x80 | (code & 0x3F));
            } else {
              v += (char)(0xE0 | (code >> 12));
              v += (char)(0x80 | ((code >> 6) & 0x3F));
              v += (char)(0x80 | (code & 0x3F));
            }
            break;
          }
          default: fail(std::string("unknown escape \\") + e);
        }
        continue;
      }
      v += c;
    }
    return v;
  }

  std::string literal_string() {
    take();
    std::string v;
    for (;;) {
      if (eof()) fail("unterminated string");
      char c = take();
      if (c == '\'') break;
      if (c == '\n') fail("newline in string");
      v += c;
    }
    return v;
  }

  nlohmann::json number() {
    std::string raw;
    while (!eof() && (std::isalnum((unsigned char)peek()) || peek() == '+' ||
                      peek() == '-' || peek() == '.' || peek() == '_'))
      raw += take();
    std::string clean = replace_all(raw, "_", "");
    bool is_float = clean.find('.') != std::string::npos ||
                    clean.find('e') != std::string::npos ||
                    clean.find('E') != std::string::npos;
    try {
      size_t used = 0;
      if (is_float) {
        double d = std::stod(clean, &used);
        if (used != clean.size()) fail("bad number '" + raw + "'");
        return d;
      }
      long long i = std::stoll(clean, &used);
      if (used != clean.size()) fail("bad number '" + raw + "'");
      return i;
    } catch (const std::logic_error&) {
      fail("bad number '" + raw + "'");
    }
  }

  nlohmann::json array() {
    take();  // '['
    nlohmann::json a = nlohmann::json::array();
    for (;;) {
      skip_blank();
      if (eof()) fail("unterminated array");
      if (peek() == ']') {
        take();
        break;
      }
      a.push_back(value());
      skip_blank();
      if (peek() == ',') {
        take();
        continue;
      }
      if (peek() != ']') fail("expected ',' or ']' in array");
    }
    return a;
  }

  nlohmann::json value() {
    skip_inline_ws();
    char c = peek();
    if (c == '"') return basic_string();
    if (c == '\'') return literal_string();
    if (c == '[') return array();
    if (c == '{') fail("inline tables are not supported");
    if (std::isdigit((unsigned char)c) || c == '+' || c == '-' || c == '.') return number();
    if (std::isalpha((unsigned char)c)) {
      std::string word = bare_key();
      if (word == "true") return true;
      if (word == "false") return false;
      fail("unknown value '" + word + "'");
    }
    fail("expected a value");
  }
};

nlohmann::json* navigate(nlohmann::json& root, const std::vector<std::string>& parts,
                         Parser& p, bool stop_before_last) {
  nlohmann::json* cur = &root;
  size_t n = stop_before_last ? parts.size() - 1 : parts.size();
  for (size_t i = 0; i < n; ++i) {
    if (cur->is_array()) cur = &cur->back();
    if (!cur->is_object()) p.fail("key path crosses a non-table");
    nlohmann::json& next = (*cur)[parts[i]];
    if (next.is_null()) next = nlohmann::json::object();
    cur = &next;
  }
  if (cur->is_array()) cur = &cur->back();
  return cur;
}

}  // namespace

nlohmann::json parse_toml(const std::string& text) {
  Parser p(text);
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* table = &root;
  for (;;) {
    p.skip_blank();
    if (p.eof()) break;
    if (p.peek() == '[') {
      p.take();
      bool array_table = p.peek() == '[';
      if (array_table) p.take();
      p.skip_inline_ws();
      auto parts = p.dotted_key();
      p.skip_inline_ws();
      if (p.peek() != ']') p.fail("expected ']'");
      p.take();
      if (array_table) {
        if (p.peek() != ']') p.fail("expected ']]'");
        p.take();
      }
      p.expect_line_end();
      nlohmann::json* parent = navigate(root, parts, p, true);
      nlohmann::json& slot = (*parent)[parts.back()];
      if (array_table) {
        if (slot.is_null()) slot = nlohmann::json::array();
        if (!slot.is_array()) p.fail("redefinition of '" + parts.back() + "'");
        slot.push_back(nlohmann::json::object());
        table = &slot.back();
      } else {
        if (slot.is_null()) slot = nlohmann::json::object();
        if (!slot.is_object()) p.fail("redefinition of '" + parts.back() + "'");
        table = &slot;
      }
      continue;
    }
    auto parts = p.dotted_key();
    p.skip_inline_ws();
    if (p.peek() != '=') p.fail("expected '=' after key");
    p.take();
    nlohmann::json v = p.value();
    p.expect_line_end();
    nlohmann::json* parent = navigate(*table, parts, p, true);
    if (parent->contains(parts.back()) && !(*parent)[parts.back()].is_null())
      p.fail("duplicate key '" + parts.back() + "'");
    (*parent)[parts.back()] = std::move(v);
  }
  return root;
}

nlohmann::json parse_toml_file(const std::filesystem::path& file) {
  return parse_toml(read_file(file));
}

}  // namespace sentinel
