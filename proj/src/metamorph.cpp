#include "sentinel/metamorph.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "sentinel/srcmodel.hpp"
#include "sentinel/util.hpp"

namespace fs = std::filesystem;

namespace sentinel {
using namespace util;

std::string to_string(RenameScope s) {
  switch (s) {
    case RenameScope::Variables: return "variables";
    case RenameScope::Methods: return "methods";
    case RenameScope::Classes: return "classes";
    case RenameScope::Packages: return "packages";
    case RenameScope::Numbers: return "numbers";
  }
  return "?";
}

RenameScope rename_scope_from_string(const std::string& s) {
  std::string v = to_lower(trim(s));
  for (RenameScope r : {RenameScope::Variables, RenameScope::Methods, RenameScope::Classes,
                        RenameScope::Packages, RenameScope::Numbers})
    if (to_string(r) == v) return r;
  throw std::invalid_argument("unknown rename scope: " + s);
}

std::set<RenameScope> parse_scopes(const std::string& csv) {
  std::set<RenameScope> out;
  for (const auto& part : split(csv, ','))
    if (!trim(part).empty()) out.insert(rename_scope_from_string(part));
  return out;
}

nlohmann::json RenamePlan::to_json() const {
  nlohmann::json scopes = nlohmann::json::array();
  for (const auto& s : scope) scopes.push_back(to_string(s));
  return {{"seed", seed},
          {"scope", scopes},
          {"identifier_map", identifier_map},
          {"literal_map", literal_map},
          {"class_targets", class_targets},
          {"package_targets", package_targets}};
}

RenamePlan RenamePlan::from_json(const nlohmann::json& j) {
  RenamePlan p;
  p.seed = j.at("seed").get<long long>();
  for (const auto& s : j.at("scope")) p.scope.insert(rename_scope_from_string(s));
  p.identifier_map = j.at("identifier_map").get<std::map<std::string, std::string>>();
  p.literal_map = j.at("literal_map").get<std::map<std::string, std::string>>();
  for (const auto& s : j.value("class_targets", nlohmann::json::array()))
    p.class_targets.insert(s.get<std::string>());
  for (const auto& s : j.value("package_targets", nlohmann::json::array()))
    p.package_targets.insert(s.get<std::string>());
  return p;
}

namespace {

std::string rewrite_path(const std::string& path, const RewriteMaps& maps) {
  std::vector<std::string> parts = split(path, '/');
  for (auto& part : parts) {
    // directory components: package renames
    if (&part != &parts.back()) {
      if (maps.path_components.count(part)) {
        auto it = maps.identifiers.find(part);
        if (it != maps.identifiers.end()) part = it->second;
      }
      continue;
    }
    // file stem: class renames
    size_t dot = part.rfind('.');
    std::string stem = dot == std::string::npos ? part : part.substr(0, dot);
    std::string ext = dot == std::string::npos ? "" : part.substr(dot);
    if (maps.path_stems.count(stem)) {
      auto it = maps.identifiers.find(stem);
      if (it != maps.identifiers.end()) part = it->second + ext;
    }
  }
  return join(parts, "/");
}

}  // namespace

std::vector<SourceUnit> rewrite_units(Language lang, const std::vector<SourceUnit>& units,
                                      const RewriteMaps& maps) {
  std::vector<SourceUnit> out;
  for (const auto& u : units) {
    std::vector<Token> toks;
    try {
      toks = lex(lang, u.text);
    } catch (const LexError& e) {
      throw MetamorphError("UNLEXABLE_SOURCE", u.path + ": " + e.what());
    }
    std::string text;
    for (const auto& t : toks) {
      if (t.kind == TokenKind::Identifier) {
        auto it = maps.identifiers.find(t.text);
        text += it == maps.identifiers.end() ? t.text : it->second;
      } else if (t.kind == TokenKind::Number) {
        auto it = maps.literals.find(t.text);
        text += it == maps.literals.end() ? t.text : it->second;
      } else {
        text += t.text;
      }
    }
    out.push_back({rewrite_path(u.path, maps), std::move(text)});
  }
  return out;
}

std::string rewrite_words(const std::string& text,
                          const std::map<std::string, std::string>& identifiers) {
  std::string out;
  size_t i = 0;
  auto word_start = [](char c) { return std::isalpha((unsigned char)c) || c == '_'; };
  auto word_char = [](char c) { return std::isalnum((unsigned char)c) || c == '_'; };
  while (i < text.size()) {
    if (word_start(text[i])) {
      size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      std::string word = text.substr(i, j - i);
      auto it = identifiers.find(word);
      out += it == identifiers.end() ? word : it->second;
      i = j;
    } else {
      out += text[i++];
    }
  }
  return out;
}

namespace {

// identifier-shaped words in free text (ground-truth reasons, params)
std::set<std::string> words_in(const std::string& text) {
  std::set<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum((unsigned char)text[j]) || text[j] == '_'))
        ++j;
      out.insert(text.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

std::string scope_suffix(const std::set<RenameScope>& scope) {
  std::string s;
  for (RenameScope r : {RenameScope::Variables, RenameScope::Methods, RenameScope::Classes,
                        RenameScope::Packages, RenameScope::Numbers})
    if (scope.count(r)) s += to_string(r)[0];
  return s;
}

std::string draw_name(std::mt19937_64& rng, bool capitalized, int attempt) {
  static const char* kAlpha = "abcdefghijklmnopqrstuvwxyz";
  // grow names as collision attempts accumulate
  int len = 5 + (int)(rng() % 4) + attempt / 25;
  std::string name;
  for (int i = 0; i < len; ++i) name += kAlpha[rng() % 26];
  if (capitalized) name[0] = (char)std::toupper((unsigned char)name[0]);
  return name;
}

std::vector<SourceUnit> all_units(const BugCase& bug) {
  std::vector<SourceUnit> units = bug.before;
  if (bug.after) units.insert(units.end(), bug.after->begin(), bug.after->end());
  return units;
}

}  // namespace

MetamorphicVariant generate_variant(const BugCase& bug, long long seed,
                                    const std::set<RenameScope>& scope) {
  const Language lang = bug.language;
  std::vector<SourceUnit> units = all_units(bug);
  // surface lexability problems before any map is built
  for (const auto& u : units) {
    try {
      lex(lang, u.text);
    } catch (const LexError& e) {
      throw MetamorphError("UNLEXABLE_SOURCE", u.path + ": " + e.what());
    }
  }

  DeclaredNames decls = collect_declarations(lang, units);
  std::set<std::string> pinned(bug.pinned_identifiers.begin(), bug.pinned_identifiers.end());
  for (const auto& w : words_in(bug.ground_truth_reason.text)) pinned.insert(w);

  std::set<std::string> taken = all_identifiers(lang, units);
  if (bug.refactoring_params)
    for (const auto& w : words_in(*bug.refactoring_params)) taken.insert(w);
  for (const auto& w : pinned) taken.insert(w);

  RenamePlan plan;
  plan.seed = seed;
  plan.scope = scope;

  struct Target {
    std::string name;
    bool capitalized;
    bool is_class;
    bool is_package;
  };
  std::vector<Target> targets;
  auto add_targets = [&](const std::set<std::string>& names, bool cap, bool is_class,
                         bool is_package) {
    for (const auto& n : names) {
      if (pinned.count(n)) continue;
      targets.push_back({n, cap, is_class, is_package});
    }
  };
  if (scope.count(RenameScope::Variables)) add_targets(decls.variables, false, false, false);
  if (scope.count(RenameScope::Methods)) add_targets(decls.methods, false, false, false);
  if (scope.count(RenameScope::Classes)) add_targets(decls.classes, true, true, false);
  if (scope.count(RenameScope::Packages)) add_targets(decls.packages, false, false, true);
  std::sort(targets.begin(), targets.end(),
            [](const Target& a, const Target& b) { return a.name < b.name; });

  std::mt19937_64 rng((unsigned long long)seed);
  for (const auto& t : targets) {
    if (plan.identifier_map.count(t.name)) continue;  // already renamed via another bucket
    std::string fresh;
    int attempt = 0;
    for (;; ++attempt) {
      if (attempt >= 100)
        throw MetamorphError("RENAME_COLLISION",
                             "no fresh name for '" + t.name + "' after 100 attempts");
      fresh = draw_name(rng, t.capitalized, attempt);
      if (!is_valid_identifier(lang, fresh)) continue;
      if (is_reserved_word(lang, fresh)) continue;
      if (taken.count(fresh)) continue;
      break;
    }
    taken.insert(fresh);
    plan.identifier_map[t.name] = fresh;
    if (t.is_class) plan.class_targets.insert(t.name);
    if (t.is_package) plan.package_targets.insert(t.name);
  }

  if (scope.count(RenameScope::Numbers)) {
    std::set<std::string> numeric_texts;
    std::set<std::string> int_literals;
    for (const auto& u : units)
      for (const auto& tok : lex(lang, u.text))
        if (tok.kind == TokenKind::Number) {
          numeric_texts.insert(tok.text);
          bool pure = !tok.text.empty() &&
                      std::all_of(tok.text.begin(), tok.text.end(),
                                  [](char c) { return c >= '0' && c <= '9'; });
          if (pure) int_literals.insert(tok.text);
        }
    for (const auto& old : int_literals) {
      std::string fresh;
      int attempt = 0;
      for (;; ++attempt) {
        if (attempt >= 100)
          throw MetamorphError("RENAME_COLLISION",
                               "no fresh value for literal " + old + " after 100 attempts");
        fresh = std::to_string(2 + rng() % 997);
        if (numeric_texts.count(fresh)) continue;  // preserve all inequality relations
        break;
      }
      numeric_texts.insert(fresh);
      plan.literal_map[old] = fresh;
    }
  }

  RewriteMaps maps{plan.identifier_map, plan.literal_map, plan.class_targets,
                   plan.package_targets};

  MetamorphicVariant v;
  v.parent_id = bug.id;
  v.variant_id = bug.id + "-s" + std::to_string(seed) + "-" + scope_suffix(scope);
  v.plan = plan;
  v.bug = bug;
  v.bug.id = v.variant_id;
  v.bug.is_variant = true;
  v.bug.parent_id = bug.id;
  v.bug.before = rewrite_units(lang, bug.before, maps);
  if (bug.after) v.bug.after = rewrite_units(lang, *bug.after, maps);
  if (bug.refactoring_params)
    v.bug.refactoring_params = rewrite_words(*bug.refactoring_params, plan.identifier_map);
  v.bug.provenance = bug.provenance + " [metamorphic variant of " + bug.id + ", seed " +
                     std::to_string(seed) + ", scope " + scope_suffix(scope) + "]";
  return v;
}

MetamorphicVariant verify_variant(MetamorphicVariant variant, const BugCase& parent,
                                  const fs::path& workspace, const CheckerConfig& config) {
  const Language lang = parent.language;
  bool parent_before = check_static(lang, parent.before, workspace / "parent_before", config).ok;
  bool variant_before =
      check_static(lang, variant.bug.before, workspace / "variant_before", config).ok;
  bool ok = parent_before == variant_before;
  if (is_type1(parent.bug_kind) && parent.after && variant.bug.after) {
    bool parent_after = check_static(lang, *parent.after, workspace / "parent_after", config).ok;
    bool variant_after =
        check_static(lang, *variant.bug.after, workspace / "variant_after", config).ok;
    ok = ok && parent_after == variant_after;
  }
  variant.verified = ok;
  return variant;
}

void persist_variant(const fs::path& corpus_root, const MetamorphicVariant& v) {
  fs::path dir = corpus_root / "variants" / v.parent_id;
  ensure_dir(dir);
  write_file_atomic(dir / (v.variant_id + ".case.json"), case_to_json(v.bug));
  write_file_atomic(dir / (v.variant_id + ".plan.json"), v.plan.to_json().dump(2) + "\n");
}

}  // namespace sentinel
