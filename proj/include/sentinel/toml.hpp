#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace sentinel {

class TomlError : public std::runtime_error {
 public:
  TomlError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Minimal TOML reader covering what run configs use: tables, arrays of
// tables, dotted keys, basic/literal strings, integers, floats, booleans,
// (multi-line) arrays, and comments. Dates, inline tables and multi-line
// strings are not supported.
nlohmann::json parse_toml(const std::string& text);
nlohmann::json parse_toml_file(const std::filesystem::path& file);

}  // namespace sentinel
