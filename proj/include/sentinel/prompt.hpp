#pragma once

#include <filesystem>
#include <string>

#include "sentinel/corpus.hpp"

namespace sentinel {

enum class PromptKind { Type1Check, Type2Apply };

std::string to_string(PromptKind kind);

struct PromptInstance {
  std::string case_id;
  PromptKind kind = PromptKind::Type1Check;
  std::string text;
  std::string rendered_at;  // ISO timestamp, informational only
};

class WrongKindError : public std::runtime_error {
 public:
  explicit WrongKindError(const std::string& what) : std::runtime_error(what) {}
};

// The two zero-shot templates, loaded from golden text assets. Placeholders:
// {code1}/{code2} in type1, {name}/{params}/{code} in type2.
struct PromptTemplates {
  std::string type1;
  std::string type2;

  static PromptTemplates load(const std::filesystem::path& dir);
};

// Flattens a program into one code block. Single unit: the text verbatim.
// Multiple units: each prefixed with a "// file: <path>" header line
// ("# file:" for Python), joined by single newlines.
std::string flatten_units(const std::vector<SourceUnit>& units, Language lang);

// Comment prefix used for file header lines in prompts and extracted code.
std::string file_header_prefix(Language lang);

PromptInstance render_type1(const BugCase& bug_case, const PromptTemplates& templates);
PromptInstance render_type2(const BugCase& bug_case, const PromptTemplates& templates);

// Renders whichever template matches the case's bug kind.
PromptInstance render_for_case(const BugCase& bug_case, const PromptTemplates& templates);

}  // namespace sentinel
