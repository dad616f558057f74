#include "sentinel/prompt.hpp"

#include "sentinel/util.hpp"

namespace sentinel {

std::string to_string(PromptKind kind) {
  return kind == PromptKind::Type1Check ? "type1_check" : "type2_apply";
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
  PromptTemplates t;
  t.type1 = util::read_file(dir / "type1.prompt.txt");
  t.type2 = util::read_file(dir / "type2.prompt.txt");
  return t;
}

std::string file_header_prefix(Language lang) {
  return lang == Language::Python ? "# file:" : "// file:";
}

std::string flatten_units(const std::vector<SourceUnit>& units, Language lang) {
  if (units.size() == 1) return units.front().text;
  std::vector<std::string> parts;
  parts.reserve(units.size());
  for (const auto& u : units) parts.push_back(file_header_prefix(lang) + " " + u.path + "\n" + u.text);
  return util::join(parts, "\n");
}

namespace {

std::string substitute(std::string tpl, const std::string& placeholder, const std::string& value) {
  size_t pos = tpl.find(placeholder);
  if (pos == std::string::npos)
    throw std::runtime_error("template missing placeholder " + placeholder);
  tpl.replace(pos, placeholder.size(), value);
  return tpl;
}

}  // namespace

PromptInstance render_type1(const BugCase& c, const PromptTemplates& templates) {
  if (!is_type1(c.bug_kind))
    throw WrongKindError("WRONG_KIND: render_type1 on Type II case " + c.id);
  if (!c.after || c.after->empty())
    throw WrongKindError("WRONG_KIND: Type I case without after program: " + c.id);

  std::string text = templates.type1;
  text = substitute(text, "{code1}", flatten_units(c.before, c.language));
  text = substitute(text, "{code2}", flatten_units(*c.after, c.language));
  return {c.id, PromptKind::Type1Check, text, util::iso_timestamp_now()};
}

PromptInstance render_type2(const BugCase& c, const PromptTemplates& templates) {
  if (is_type1(c.bug_kind))
    throw WrongKindError("WRONG_KIND: render_type2 on Type I case " + c.id);

  std::string text = templates.type2;
  text = substitute(text, "{name}", c.refactoring_kind);
  text = substitute(text, "{params}", c.refactoring_params.value_or(""));
  text = substitute(text, "{code}", flatten_units(c.before, c.language));
  return {c.id, PromptKind::Type2Apply, text, util::iso_timestamp_now()};
}

PromptInstance render_for_case(const BugCase& c, const PromptTemplates& templates) {
  return is_type1(c.bug_kind) ? render_type1(c, templates) : render_type2(c, templates);
}

}  // namespace sentinel
