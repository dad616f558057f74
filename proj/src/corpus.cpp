#include "sentinel/corpus.hpp"

#include <algorithm>

#include "json.hpp"
#include "sentinel/util.hpp"

namespace sentinel {

namespace fs = std::filesystem;
using nlohmann::json;

bool is_type1(BugKind kind) { return kind != BugKind::Type2BlockedValid; }

std::string to_string(Language lang) {
  switch (lang) {
    case Language::Java: return "java";
    case Language::Python: return "python";
    case Language::C: return "c";
  }
  return "?";
}

std::string to_string(BugKind kind) {
  switch (kind) {
    case BugKind::Type1CompileError: return "type1_compile_error";
    case BugKind::Type1RuntimeError: return "type1_runtime_error";
    case BugKind::Type1BehaviorChange: return "type1_behavior_change";
    case BugKind::Type2BlockedValid: return "type2_blocked_valid";
  }
  return "?";
}

std::string to_string(Decision d) { return d == Decision::Yes ? "yes" : "no"; }

std::string to_string(ReasonCategory c) {
  switch (c) {
    case ReasonCategory::CompileError: return "compile_error";
    case ReasonCategory::RuntimeError: return "runtime_error";
    case ReasonCategory::BehaviorChange: return "behavior_change";
    case ReasonCategory::NotApplicable: return "not_applicable";
  }
  return "?";
}

std::optional<Language> language_from_string(const std::string& s) {
  if (s == "java") return Language::Java;
  if (s == "python") return Language::Python;
  if (s == "c") return Language::C;
  return std::nullopt;
}

std::optional<BugKind> bug_kind_from_string(const std::string& s) {
  if (s == "type1_compile_error") return BugKind::Type1CompileError;
  if (s == "type1_runtime_error") return BugKind::Type1RuntimeError;
  if (s == "type1_behavior_change") return BugKind::Type1BehaviorChange;
  if (s == "type2_blocked_valid") return BugKind::Type2BlockedValid;
  return std::nullopt;
}

std::optional<Decision> decision_from_string(const std::string& s) {
  if (s == "yes") return Decision::Yes;
  if (s == "no") return Decision::No;
  return std::nullopt;
}

std::optional<ReasonCategory> reason_category_from_string(const std::string& s) {
  if (s == "compile_error") return ReasonCategory::CompileError;
  if (s == "runtime_error") return ReasonCategory::RuntimeError;
  if (s == "behavior_change") return ReasonCategory::BehaviorChange;
  if (s == "not_applicable") return ReasonCategory::NotApplicable;
  return std::nullopt;
}

const BugCase* CorpusIndex::find(const std::string& id) const {
  auto it = std::lower_bound(cases.begin(), cases.end(), id,
                             [](const BugCase& c, const std::string& v) { return c.id < v; });
  if (it != cases.end() && it->id == id) return &*it;
  return nullptr;
}

void CorpusIndex::recount() {
  counts.clear();
  for (const auto& c : cases) counts[{c.language, c.bug_kind}]++;
}

namespace {

int total_lines(const std::vector<SourceUnit>& units) {
  int lines = 0;
  for (const auto& u : units) {
    if (u.text.empty()) continue;
    lines += 1 + static_cast<int>(std::count(u.text.begin(), u.text.end(), '\n'));
    if (u.text.back() == '\n') lines -= 1;
  }
  return lines;
}

ReasonCategory expected_category(BugKind kind) {
  switch (kind) {
    case BugKind::Type1CompileError: return ReasonCategory::CompileError;
    case BugKind::Type1RuntimeError: return ReasonCategory::RuntimeError;
    case BugKind::Type1BehaviorChange: return ReasonCategory::BehaviorChange;
    case BugKind::Type2BlockedValid: return ReasonCategory::NotApplicable;
  }
  return ReasonCategory::NotApplicable;
}

void check_units(const std::vector<SourceUnit>& units, const std::string& which,
                 std::vector<Violation>& out) {
  std::set<std::string> seen;
  for (const auto& u : units) {
    if (u.path.empty())
      out.push_back({"EMPTY_PATH", which + " unit has an empty path", Severity::Error});
    else if (!seen.insert(u.path).second)
      out.push_back({"DUPLICATE_PATH", which + " unit path repeated: " + u.path, Severity::Error});
    if (u.text.empty())
      out.push_back({"EMPTY_TEXT", which + " unit has empty text: " + u.path, Severity::Error});
  }
}

}  // namespace

std::vector<Violation> validate_case(const BugCase& c, int loc_cap) {
  std::vector<Violation> out;
  if (c.id.empty()) out.push_back({"EMPTY_ID", "case id is empty", Severity::Error});
  if (c.refactoring_kind.empty())
    out.push_back({"EMPTY_REFACTORING_KIND", "refactoring_kind is empty", Severity::Error});
  if (c.before.empty())
    out.push_back({"EMPTY_BEFORE", "before program has no units", Severity::Error});
  check_units(c.before, "before", out);
  if (c.after) check_units(*c.after, "after", out);

  if (is_type1(c.bug_kind)) {
    if (!c.after || c.after->empty())
      out.push_back({"TYPE1_MISSING_AFTER", "Type I case must carry an after program",
                     Severity::Error});
    if (c.refactoring_params)
      out.push_back({"TYPE1_HAS_PARAMS", "Type I case must not carry refactoring_params",
                     Severity::Error});
    if (c.expected_decision != Decision::No)
      out.push_back({"TYPE1_EXPECTS_NO", "Type I expected_decision must be no", Severity::Error});
  } else {
    if (c.after)
      out.push_back({"TYPE2_HAS_AFTER", "Type II case must not carry an after program",
                     Severity::Error});
    if (!c.refactoring_params || c.refactoring_params->empty())
      out.push_back({"TYPE2_MISSING_PARAMS", "Type II case must carry refactoring_params",
                     Severity::Error});
    if (c.expected_decision != Decision::Yes)
      out.push_back({"TYPE2_EXPECTS_YES", "Type II expected_decision must be yes",
                     Severity::Error});
  }

  if (c.ground_truth_reason.category != expected_category(c.bug_kind))
    out.push_back({"REASON_MISMATCH",
                   "ground_truth_reason.category " + to_string(c.ground_truth_reason.category) +
                       " does not match bug_kind " + to_string(c.bug_kind),
                   Severity::Error});

  int lines = total_lines(c.before);
  if (loc_cap > 0 && lines > loc_cap)
    out.push_back({"LOC_CAP_EXCEEDED",
                   "before program has " + std::to_string(lines) + " lines (cap " +
                       std::to_string(loc_cap) + ")",
                   Severity::Warning});
  return out;
}

namespace {

const std::set<std::string> kKnownFields = {
    "id",           "language",        "refactoring_kind",   "bug_kind",
    "before",       "after",           "refactoring_params", "expected_decision",
    "ground_truth_reason", "provenance", "pinned_identifiers"};

std::vector<SourceUnit> units_from_json(const json& arr) {
  std::vector<SourceUnit> units;
  for (const auto& item : arr) {
    units.push_back({item.at("path").get<std::string>(), item.at("text").get<std::string>()});
  }
  return units;
}

json units_to_json(const std::vector<SourceUnit>& units) {
  json arr = json::array();
  for (const auto& u : units) arr.push_back({{"path", u.path}, {"text", u.text}});
  return arr;
}

}  // namespace

BugCase case_from_json(const std::string& json_text) {
  json doc = json::parse(json_text);
  if (!doc.is_object()) throw CorpusError("case document is not a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!kKnownFields.count(key)) throw CorpusError("unknown field: " + key);
  }

  BugCase c;
  c.id = doc.at("id").get<std::string>();

  auto lang = language_from_string(doc.at("language").get<std::string>());
  if (!lang) throw CorpusError("language: unknown value");
  c.language = *lang;

  c.refactoring_kind = doc.at("refactoring_kind").get<std::string>();

  auto kind = bug_kind_from_string(doc.at("bug_kind").get<std::string>());
  if (!kind) throw CorpusError("bug_kind: unknown value");
  c.bug_kind = *kind;

  c.before = units_from_json(doc.at("before"));
  if (doc.contains("after")) c.after = units_from_json(doc.at("after"));
  if (doc.contains("refactoring_params"))
    c.refactoring_params = doc.at("refactoring_params").get<std::string>();

  auto decision = decision_from_string(doc.at("expected_decision").get<std::string>());
  if (!decision) throw CorpusError("expected_decision: unknown value");
  c.expected_decision = *decision;

  const json& reason = doc.at("ground_truth_reason");
  auto cat = reason_category_from_string(reason.at("category").get<std::string>());
  if (!cat) throw CorpusError("ground_truth_reason.category: unknown value");
  c.ground_truth_reason = {*cat, reason.at("text").get<std::string>()};

  c.provenance = doc.at("provenance").get<std::string>();
  if (doc.contains("pinned_identifiers"))
    c.pinned_identifiers = doc.at("pinned_identifiers").get<std::vector<std::string>>();
  return c;
}

std::string case_to_json(const BugCase& c) {
  json doc;
  doc["id"] = c.id;
  doc["language"] = to_string(c.language);
  doc["refactoring_kind"] = c.refactoring_kind;
  doc["bug_kind"] = to_string(c.bug_kind);
  doc["before"] = units_to_json(c.before);
  if (c.after) doc["after"] = units_to_json(*c.after);
  if (c.refactoring_params) doc["refactoring_params"] = *c.refactoring_params;
  doc["expected_decision"] = to_string(c.expected_decision);
  doc["ground_truth_reason"] = {{"category", to_string(c.ground_truth_reason.category)},
                                {"text", c.ground_truth_reason.text}};
  doc["provenance"] = c.provenance;
  if (!c.pinned_identifiers.empty()) doc["pinned_identifiers"] = c.pinned_identifiers;
  return doc.dump(2) + "\n";
}

namespace {

void load_case_file(const fs::path& file, const fs::path& root, bool variant,
                    const std::string& parent_id, int loc_cap, LoadReport& report,
                    std::set<std::string>& ids) {
  std::string rel = fs::relative(file, root).string();
  BugCase c;
  try {
    c = case_from_json(util::read_file(file));
  } catch (const json::exception& e) {
    report.issues.push_back({rel, "", "", e.what(), "MALFORMED_CASE"});
    return;
  } catch (const std::exception& e) {
    report.issues.push_back({rel, "", "", e.what(), "MALFORMED_CASE"});
    return;
  }
  c.is_variant = variant;
  c.parent_id = parent_id;

  auto violations = validate_case(c, loc_cap);
  bool bad = false;
  for (const auto& v : violations) {
    if (v.severity == Severity::Error) {
      report.issues.push_back({rel, c.id, v.code, v.detail, "MALFORMED_CASE"});
      bad = true;
    } else {
      report.warnings.push_back(v);
    }
  }
  if (bad) return;

  if (!ids.insert(c.id).second) {
    report.issues.push_back({rel, c.id, "id", "case id already present", "DUPLICATE_ID"});
    return;
  }
  report.index.cases.push_back(std::move(c));
}

}  // namespace

LoadReport load_corpus(const fs::path& root, bool include_variants, int loc_cap) {
  if (!fs::exists(root)) throw CorpusError("corpus root does not exist: " + root.string());
  LoadReport report;

  fs::path registry_file = root / "refactorings.txt";
  if (fs::exists(registry_file)) {
    for (auto& line : util::split(util::read_file(registry_file), '\n')) {
      std::string kind = util::trim(line);
      if (!kind.empty() && kind[0] != '#') report.index.registry.insert(kind);
    }
  }

  std::set<std::string> ids;
  std::vector<fs::path> files;
  fs::path cases_dir = fs::exists(root / "cases") ? root / "cases" : root;
  if (fs::exists(cases_dir)) {
    for (const auto& entry : fs::recursive_directory_iterator(cases_dir)) {
      if (entry.is_regular_file() && util::ends_with(entry.path().filename().string(), ".case.json"))
        files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) load_case_file(f, root, false, "", loc_cap, report, ids);

  if (include_variants && fs::exists(root / "variants")) {
    std::vector<fs::path> vfiles;
    for (const auto& entry : fs::recursive_directory_iterator(root / "variants")) {
      if (entry.is_regular_file() && util::ends_with(entry.path().filename().string(), ".case.json"))
        vfiles.push_back(entry.path());
    }
    std::sort(vfiles.begin(), vfiles.end());
    for (const auto& f : vfiles) {
      // variants/<parent_id>/<variant>.case.json
      std::string parent = f.parent_path().filename().string();
      load_case_file(f, root, true, parent, loc_cap, report, ids);
    }
  }

  std::sort(report.index.cases.begin(), report.index.cases.end(),
            [](const BugCase& a, const BugCase& b) { return a.id < b.id; });
  report.index.recount();

  // Open-registry check: unknown kinds are worth a warning, never a rejection.
  if (!report.index.registry.empty()) {
    for (const auto& c : report.index.cases) {
      if (!report.index.registry.count(c.refactoring_kind))
        report.warnings.push_back({"UNKNOWN_REFACTORING_KIND",
                                   c.id + ": kind not in registry: " + c.refactoring_kind,
                                   Severity::Warning});
    }
  }
  return report;
}

CorpusIndex filter_cases(const CorpusIndex& index, const CaseSelector& selector) {
  if (selector.ids) {
    for (const auto& id : *selector.ids) {
      if (!index.find(id)) throw CorpusError("UNKNOWN_ID: " + id);
    }
  }
  CorpusIndex out;
  out.registry = index.registry;
  for (const auto& c : index.cases) {
    if (selector.languages &&
        std::find(selector.languages->begin(), selector.languages->end(), c.language) ==
            selector.languages->end())
      continue;
    if (selector.bug_kinds &&
        std::find(selector.bug_kinds->begin(), selector.bug_kinds->end(), c.bug_kind) ==
            selector.bug_kinds->end())
      continue;
    if (selector.refactoring_kinds &&
        std::find(selector.refactoring_kinds->begin(), selector.refactoring_kinds->end(),
                  c.refactoring_kind) == selector.refactoring_kinds->end())
      continue;
    if (selector.ids &&
        std::find(selector.ids->begin(), selector.ids->end(), c.id) == selector.ids->end())
      continue;
    out.cases.push_back(c);
  }
  out.recount();
  return out;
}

}  // namespace sentinel
