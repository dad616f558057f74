#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sentinel/corpus.hpp"
#include "sentinel/verdict.hpp"

namespace sentinel {

// Built-in Java validity checker used when no Java compiler is on PATH:
// sources must lex, have balanced delimiters, and declare at least one type.
inline constexpr const char* kBuiltinJavaChecker = "builtin:java-structural";

struct CheckerConfig {
  // Command templates; {files} expands to the materialized file list,
  // {dir} to the workspace directory. Empty string disables a language.
  std::string java_cmd;
  std::string python_cmd = "python3 -m py_compile {files}";
  std::string python_typecheck_cmd;  // optional, ANDed with python_cmd
  std::string c_cmd = "gcc -fsyntax-only -Werror {files}";
  int timeout_secs = 30;

  static CheckerConfig defaults();
  const std::string& command_for(Language lang) const;
};

struct Diagnostic {
  std::string file;
  int line = 0;  // 0 when unknown
  std::string message;
};

struct CompileResult {
  bool ok = false;
  std::string checker;  // the command template that ran
  int exit_code = 0;
  std::string output;
  std::vector<Diagnostic> diagnostics;
};

class OracleError : public std::runtime_error {
 public:
  OracleError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;  // CHECKER_NOT_FOUND | CHECKER_TIMEOUT | WORKSPACE_IO_ERROR
};

// Materializes the units under workspace/ and runs the configured checker.
// Java units without .java paths are split per top-level type first.
CompileResult check_static(Language lang, const std::vector<SourceUnit>& units,
                           const std::filesystem::path& workspace,
                           const CheckerConfig& config);

struct MechanicsFinding {
  std::string check;  // human-readable property that was probed
  bool ok = false;
  std::string detail;
};

struct MechanicsResult {
  bool ok = false;
  std::string rule;  // normalized refactoring kind, or "" when NO_RULE
  std::vector<MechanicsFinding> findings;
};

// Structural spot-checks that the transformed program actually performed the
// announced refactoring. Rules exist for: pull up method, push down method,
// push down field, rename method, rename variable. Unknown kinds degrade to
// ok with a NO_RULE finding; unparseable params degrade to ok with
// PARAMS_UNPARSEABLE.
MechanicsResult check_mechanics(const BugCase& bug, const std::vector<SourceUnit>& transformed);

struct Adjudication {
  std::string case_id;
  std::string backend;
  int attempt_index = 0;
  bool explanation_correct = false;
  std::string note;
  std::string decided_at;  // ISO timestamp

  nlohmann::json to_json() const;
  static Adjudication from_json(const nlohmann::json& j);
};

// Append-only ledger, one JSON object per line. Re-adjudications append;
// the latest line for a (case, backend, attempt) key wins.
void append_adjudication(const std::filesystem::path& file, const Adjudication& adj);
std::vector<Adjudication> load_adjudications(const std::filesystem::path& file);
const Adjudication* find_adjudication(const std::vector<Adjudication>& all,
                                      const std::string& case_id, const std::string& backend,
                                      int attempt_index);

enum class OutcomeStatus { Decided, PendingAdjudication };

// Why an attempt was judged incorrect. None for correct or pending outcomes.
enum class FailureReason {
  None,
  WrongDecision,
  UnparseableOutput,
  BadExplanation,
  OutputNotCompiling,
  MechanicsViolated,
};

std::string to_string(OutcomeStatus s);
std::string to_string(FailureReason r);
OutcomeStatus outcome_status_from_string(const std::string& s);
FailureReason failure_reason_from_string(const std::string& s);

struct CaseOutcome {
  std::string case_id;
  std::string backend;
  int attempt_index = 0;
  double temperature = 0.0;
  bool correct = false;
  OutcomeStatus status = OutcomeStatus::Decided;
  FailureReason failure = FailureReason::None;
  VerdictDecision decision = VerdictDecision::Unparseable;
  std::string decision_source;
  std::optional<CompileResult> compile;      // Type II evidence
  std::optional<MechanicsResult> mechanics;  // Type II evidence
  std::optional<bool> explanation_correct;   // Type I adjudication
  std::string note;
  std::string request_digest;

  nlohmann::json to_json() const;
  static CaseOutcome from_json(const nlohmann::json& j);
};

// Type I: the model saw before+after and answered YES (transformation fine)
// or NO (bug). Ground truth is always a bug, so YES is wrong outright; NO is
// pending until a human adjudicates the explanation.
CaseOutcome judge_type1(const BugCase& bug, const Verdict& verdict,
                        const Adjudication* adjudication);

// Type II: the model answered whether the refactoring may be applied; ground
// truth is always YES plus a transformed program, which must pass the compile
// oracle and the mechanics rules. Oracle infrastructure errors leave the
// outcome pending with a note instead of failing the attempt.
CaseOutcome judge_type2(const BugCase& bug, const Verdict& verdict,
                        const std::filesystem::path& workspace, const CheckerConfig& config);

struct ExplanationHint {
  std::optional<bool> suggestion;  // nullopt: no cue matched either way
  std::vector<std::string> cues;
};

// Keyword-cue screening aid for human reviewers. Never finalizes an outcome.
ExplanationHint suggest_explanation_label(ReasonCategory expected, const std::string& body);

}  // namespace sentinel
