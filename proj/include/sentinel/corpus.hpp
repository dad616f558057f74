#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sentinel {

enum class Language { Java, Python, C };
enum class BugKind {
  Type1CompileError,
  Type1RuntimeError,
  Type1BehaviorChange,
  Type2BlockedValid,
};
enum class Decision { Yes, No };
enum class ReasonCategory { CompileError, RuntimeError, BehaviorChange, NotApplicable };

bool is_type1(BugKind kind);

std::string to_string(Language lang);
std::string to_string(BugKind kind);
std::string to_string(Decision d);
std::string to_string(ReasonCategory c);
std::optional<Language> language_from_string(const std::string& s);
std::optional<BugKind> bug_kind_from_string(const std::string& s);
std::optional<Decision> decision_from_string(const std::string& s);
std::optional<ReasonCategory> reason_category_from_string(const std::string& s);

// One source file of a program, path relative to the program root.
struct SourceUnit {
  std::string path;
  std::string text;

  bool operator==(const SourceUnit&) const = default;
};

struct GroundTruthReason {
  ReasonCategory category = ReasonCategory::NotApplicable;
  std::string text;
};

// One corpus entry. Type I cases carry a before and an after program; Type II
// cases carry only the before program plus the refactoring parameters the
// tool rejected.
struct BugCase {
  std::string id;
  Language language = Language::Java;
  std::string refactoring_kind;
  BugKind bug_kind = BugKind::Type1CompileError;
  std::vector<SourceUnit> before;
  std::optional<std::vector<SourceUnit>> after;
  std::optional<std::string> refactoring_params;
  Decision expected_decision = Decision::No;
  GroundTruthReason ground_truth_reason;
  std::string provenance;
  // Identifiers the metamorphic generator must never rename (bug carriers).
  std::vector<std::string> pinned_identifiers;
  // Set by the loader for cases found under variants/.
  bool is_variant = false;
  std::string parent_id;
};

enum class Severity { Error, Warning };

struct Violation {
  std::string code;     // e.g. TYPE2_HAS_AFTER, REASON_MISMATCH, LOC_CAP_EXCEEDED
  std::string detail;
  Severity severity = Severity::Error;
};

struct LoadIssue {
  std::string file;     // document path relative to root
  std::string id;       // case id when known
  std::string field;
  std::string reason;
  std::string code;     // MALFORMED_CASE or DUPLICATE_ID
};

struct CorpusIndex {
  std::vector<BugCase> cases;              // sorted by id
  std::set<std::string> registry;          // known refactoring kinds
  std::map<std::pair<Language, BugKind>, int> counts;

  const BugCase* find(const std::string& id) const;
  void recount();
};

struct LoadReport {
  CorpusIndex index;
  std::vector<LoadIssue> issues;
  std::vector<Violation> warnings;  // warning-level violations of kept cases
};

struct CaseSelector {
  std::optional<std::vector<Language>> languages;
  std::optional<std::vector<BugKind>> bug_kinds;
  std::optional<std::vector<std::string>> refactoring_kinds;
  std::optional<std::vector<std::string>> ids;
};

class CorpusError : public std::runtime_error {
 public:
  explicit CorpusError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kDefaultLocCap = 61;

// Loads every *.case.json under root/cases (and root/variants when
// include_variants). Malformed documents are collected in the report, not
// thrown. Ordering is lexicographic by id.
LoadReport load_corpus(const std::filesystem::path& root, bool include_variants = false,
                       int loc_cap = kDefaultLocCap);

// Returns one descriptor per violated invariant; empty means valid.
std::vector<Violation> validate_case(const BugCase& bug_case, int loc_cap = kDefaultLocCap);

// Subset preserving order; throws CorpusError(UNKNOWN_ID ...) when an explicit
// id does not exist in the index.
CorpusIndex filter_cases(const CorpusIndex& index, const CaseSelector& selector);

// JSON round-trip for the on-disk case document format.
std::string case_to_json(const BugCase& bug_case);
BugCase case_from_json(const std::string& json_text);

}  // namespace sentinel
