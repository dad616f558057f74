#include "sentinel/oracle.hpp"

#include <fstream>
#include <regex>

#include "sentinel/prompt.hpp"
#include "sentinel/srcmodel.hpp"
#include "sentinel/util.hpp"

namespace fs = std::filesystem;

namespace sentinel {
using namespace util;

CheckerConfig CheckerConfig::defaults() {
  CheckerConfig c;
  c.java_cmd = command_on_path("javac") ? "javac {files}" : kBuiltinJavaChecker;
  return c;
}

const std::string& CheckerConfig::command_for(Language lang) const {
  switch (lang) {
    case Language::Java: return java_cmd;
    case Language::Python: return python_cmd;
    case Language::C: return c_cmd;
  }
  return java_cmd;
}

namespace {

std::string default_extension(Language lang) {
  switch (lang) {
    case Language::Java: return ".java";
    case Language::Python: return ".py";
    case Language::C: return ".c";
  }
  return ".txt";
}

// Model-derived paths go straight to the filesystem; keep them inside the
// workspace no matter what the transcript contained.
std::string safe_relative_path(const std::string& raw, Language lang, int index) {
  std::string p = raw;
  while (!p.empty() && (p.front() == '/' || p.front() == '\\')) p.erase(p.begin());
  std::string out;
  for (const auto& part : split(p, '/')) {
    std::string piece = trim(part);
    if (piece.empty() || piece == "." || piece == "..") continue;
    if (!out.empty()) out += '/';
    out += piece;
  }
  if (out.empty()) out = "unit" + std::to_string(index);
  const std::string ext = default_extension(lang);
  if (out.size() < ext.size() || out.substr(out.size() - ext.size()) != ext) out += ext;
  return out;
}

std::vector<SourceUnit> materialize_plan(Language lang, const std::vector<SourceUnit>& units) {
  std::vector<SourceUnit> prepared =
      lang == Language::Java ? split_java_units(units) : units;
  std::vector<SourceUnit> out;
  std::set<std::string> taken;
  int i = 0;
  for (const auto& u : prepared) {
    ++i;
    std::string path = safe_relative_path(u.path, lang, i);
    while (taken.count(path)) path = "u" + std::to_string(i) + "_" + path;
    taken.insert(path);
    out.push_back({path, u.text});
  }
  return out;
}

void write_units(const fs::path& workspace, const std::vector<SourceUnit>& units) {
  std::error_code ec;
  fs::create_directories(workspace, ec);
  if (ec) throw OracleError("WORKSPACE_IO_ERROR", workspace.string() + ": " + ec.message());
  for (const auto& u : units) {
    fs::path dest = workspace / u.path;
    fs::create_directories(dest.parent_path(), ec);
    std::ofstream f(dest, std::ios::binary | std::ios::trunc);
    f << u.text;
    if (!f) throw OracleError("WORKSPACE_IO_ERROR", "cannot write " + dest.string());
  }
}

std::vector<Diagnostic> parse_diagnostics(const std::string& output) {
  std::vector<Diagnostic> out;
  static const std::regex kColon(R"(^([^\s:][^:]*):(\d+)(?::\d+)?:\s*(.*)$)");
  static const std::regex kPyFile(R"(File \"([^\"]+)\", line (\d+))");
  std::string py_message;
  static const std::regex kPyError(R"(^\s*(\w*Error\b.*)$)");
  for (const auto& line : split(output, '\n')) {
    std::smatch m;
    if (std::regex_match(line, m, kPyError) && py_message.empty()) py_message = trim(m[1]);
  }
  for (const auto& line : split(output, '\n')) {
    std::smatch m;
    if (std::regex_match(line, m, kColon)) {
      out.push_back({m[1], std::stoi(m[2]), trim(m[3])});
    } else if (std::regex_search(line, m, kPyFile)) {
      out.push_back({m[1], std::stoi(m[2]),
                     py_message.empty() ? std::string("syntax error") : py_message});
    }
  }
  return out;
}

CompileResult builtin_java_structural(const std::vector<SourceUnit>& units) {
  CompileResult r;
  r.checker = kBuiltinJavaChecker;
  r.ok = true;
  for (const auto& u : units) {
    std::vector<Token> toks;
    try {
      toks = lex(Language::Java, u.text);
    } catch (const LexError& e) {
      r.ok = false;
      r.diagnostics.push_back({u.path, 0, e.what()});
      continue;
    }
    if (!delimiters_balanced(toks)) {
      r.ok = false;
      r.diagnostics.push_back({u.path, 0, "unbalanced delimiters"});
    }
    bool has_type = false;
    bool bad_keyword_name = false;
    for (size_t i = 0; i + 1 < toks.size(); ++i) {
      if (toks[i].kind != TokenKind::Keyword) continue;
      const std::string& k = toks[i].text;
      if (k != "class" && k != "interface" && k != "enum" && k != "record") continue;
      // skip trivia to the declared name
      size_t j = i + 1;
      while (j < toks.size() && (toks[j].kind == TokenKind::Whitespace ||
                                 toks[j].kind == TokenKind::Comment))
        ++j;
      if (j < toks.size() && toks[j].kind == TokenKind::Identifier)
        has_type = true;
      else if (j < toks.size() && toks[j].kind == TokenKind::Keyword)
        bad_keyword_name = true;
    }
    if (!has_type) {
      r.ok = false;
      r.diagnostics.push_back(
          {u.path, 0, bad_keyword_name ? "reserved word used as type name"
                                       : "no type declaration found"});
    }
  }
  r.exit_code = r.ok ? 0 : 1;
  for (const auto& d : r.diagnostics)
    r.output += d.file + ": " + d.message + "\n";
  return r;
}

std::vector<std::string> expand_command(const std::string& tmpl, const fs::path& workspace,
                                        const std::vector<SourceUnit>& units) {
  std::vector<std::string> argv;
  for (const auto& word : split(trim(tmpl), ' ')) {
    if (word.empty()) continue;
    if (word == "{files}") {
      for (const auto& u : units) argv.push_back(u.path);
    } else if (word == "{dir}") {
      argv.push_back(".");
    } else {
      argv.push_back(word);
    }
  }
  (void)workspace;
  return argv;
}

CompileResult run_checker(const std::string& tmpl, const fs::path& workspace,
                          const std::vector<SourceUnit>& units, int timeout_secs) {
  CompileResult r;
  r.checker = tmpl;
  std::vector<std::string> argv = expand_command(tmpl, workspace, units);
  if (argv.empty()) throw OracleError("CHECKER_NOT_FOUND", "empty checker command");
  ProcessResult pr = run_process(argv, workspace.string(), timeout_secs);
  if (pr.timed_out)
    throw OracleError("CHECKER_TIMEOUT",
                      argv[0] + " exceeded " + std::to_string(timeout_secs) + "s");
  if (pr.spawn_failed)
    throw OracleError("CHECKER_NOT_FOUND", argv[0] + ": " + pr.output);
  r.exit_code = pr.exit_code;
  r.output = pr.output;
  r.ok = pr.exit_code == 0;
  r.diagnostics = parse_diagnostics(pr.output);
  return r;
}

}  // namespace

CompileResult check_static(Language lang, const std::vector<SourceUnit>& units,
                           const fs::path& workspace, const CheckerConfig& config) {
  const std::string& tmpl = config.command_for(lang);
  if (tmpl.empty())
    throw OracleError("CHECKER_NOT_FOUND",
                      "no checker configured for " + to_string(lang));
  std::vector<SourceUnit> files = materialize_plan(lang, units);
  if (tmpl == kBuiltinJavaChecker) return builtin_java_structural(files);
  write_units(workspace, files);
  CompileResult r = run_checker(tmpl, workspace, files, config.timeout_secs);
  if (lang == Language::Python && r.ok && !config.python_typecheck_cmd.empty()) {
    CompileResult tc = run_checker(config.python_typecheck_cmd, workspace, files,
                                   config.timeout_secs);
    r.ok = tc.ok;
    r.exit_code = tc.exit_code;
    r.checker += " && " + tc.checker;
    if (!tc.output.empty()) r.output += (r.output.empty() ? "" : "\n") + tc.output;
    r.diagnostics.insert(r.diagnostics.end(), tc.diagnostics.begin(), tc.diagnostics.end());
  }
  return r;
}

namespace {

struct RefactoringParams {
  std::string source_class;  // may be empty
  std::string member;
  std::string target_class;  // for renames: the new name
};

std::optional<RefactoringParams> parse_params(const std::string& rule, const std::string& params) {
  static const std::regex kPull(
      R"(pull\s+up\s+(?:method\s+|field\s+)?(?:(\w+)\s*\.\s*)?(\w+)(?:\s*\(\s*\))?\s+to\s+(?:class\s+)?(\w+))",
      std::regex::icase);
  static const std::regex kPush(
      R"(push\s+down\s+(?:method\s+|field\s+)?(?:(\w+)\s*\.\s*)?(\w+)(?:\s*\(\s*\))?\s+(?:from\s+(?:class\s+)?(\w+)\s+)?to\s+(?:class\s+)?(\w+))",
      std::regex::icase);
  static const std::regex kRename(
      R"(rename\s+(?:method\s+|variable\s+)?(?:(\w+)\s*\.\s*)?(\w+)(?:\s*\(\s*\))?\s+to\s+(\w+))",
      std::regex::icase);
  std::smatch m;
  RefactoringParams p;
  if (rule == "pull up method") {
    if (!std::regex_search(params, m, kPull)) return std::nullopt;
    p.source_class = m[1];
    p.member = m[2];
    p.target_class = m[3];
    return p;
  }
  if (rule == "push down method" || rule == "push down field") {
    if (!std::regex_search(params, m, kPush)) return std::nullopt;
    p.source_class = m[1].matched ? m[1].str() : m[3].str();
    p.member = m[2];
    p.target_class = m[4];
    return p;
  }
  if (rule == "rename method" || rule == "rename variable") {
    if (!std::regex_search(params, m, kRename)) return std::nullopt;
    p.source_class = m[1];
    p.member = m[2];
    p.target_class = m[3];
    return p;
  }
  return std::nullopt;
}

void add_finding(MechanicsResult& r, const std::string& check, bool ok, std::string detail) {
  r.findings.push_back({check, ok, std::move(detail)});
}

}  // namespace

MechanicsResult check_mechanics(const BugCase& bug, const std::vector<SourceUnit>& transformed) {
  MechanicsResult r;
  std::string kind = to_lower(trim(bug.refactoring_kind));
  static const std::set<std::string> kRules = {
      "pull up method", "push down method", "push down field",
      "rename method", "rename variable"};
  if (!kRules.count(kind)) {
    r.ok = true;
    add_finding(r, "NO_RULE", true, "no mechanics rule registered for '" + kind + "'");
    return r;
  }
  const bool member_rule = kind.rfind("rename", 0) != 0;
  if (member_rule && bug.language != Language::Java) {
    r.ok = true;
    add_finding(r, "NO_RULE", true, "rule '" + kind + "' only implemented for Java");
    return r;
  }
  r.rule = kind;
  std::string params = bug.refactoring_params.value_or("");
  auto parsed = parse_params(kind, params);
  if (!parsed) {
    r.ok = true;
    add_finding(r, "PARAMS_UNPARSEABLE", true, "could not read '" + params + "'");
    return r;
  }
  const auto& p = *parsed;
  auto before = java_outline(bug.before);
  auto after = java_outline(transformed);

  if (kind == "pull up method") {
    const TypeOutline* target = find_type(after, p.target_class);
    add_finding(r, "method " + p.member + " declared in " + p.target_class,
                target && target->has_method(p.member),
                target ? "" : "class " + p.target_class + " not found");
    for (const auto& cls : before) {
      if (cls.extends != p.target_class || !cls.has_method(p.member)) continue;
      if (!p.source_class.empty() && cls.name != p.source_class) continue;
      const TypeOutline* sub = find_type(after, cls.name);
      add_finding(r, "method " + p.member + " removed from " + cls.name,
                  sub && !sub->has_method(p.member),
                  sub ? "" : "class " + cls.name + " missing from output");
    }
  } else if (kind == "push down method" || kind == "push down field") {
    const bool is_field = kind == "push down field";
    auto has = [&](const TypeOutline* t) {
      return t && (is_field ? t->has_field(p.member) : t->has_method(p.member));
    };
    const TypeOutline* src = find_type(after, p.source_class);
    const TypeOutline* dst = find_type(after, p.target_class);
    const char* noun = is_field ? "field " : "method ";
    add_finding(r, noun + p.member + " removed from " + p.source_class, src && !has(src),
                src ? "" : "class " + p.source_class + " not found");
    add_finding(r, noun + p.member + " declared in " + p.target_class, has(dst),
                dst ? "" : "class " + p.target_class + " not found");
  } else if (kind == "rename method") {
    bool old_declared = false, new_declared = false;
    for (const auto& cls : after) {
      if (!p.source_class.empty() && cls.name != p.source_class) continue;
      if (cls.has_method(p.member)) old_declared = true;
      if (cls.has_method(p.target_class)) new_declared = true;
    }
    add_finding(r, "no method still named " + p.member, !old_declared, "");
    add_finding(r, "method " + p.target_class + " declared", new_declared, "");
  } else {  // rename variable
    DeclaredNames names = collect_declarations(bug.language, transformed);
    std::set<std::string> uses = all_identifiers(bug.language, transformed);
    add_finding(r, "no remaining use of " + p.member, !uses.count(p.member), "");
    add_finding(r, "variable " + p.target_class + " declared",
                names.variables.count(p.target_class) > 0, "");
  }
  r.ok = true;
  for (const auto& f : r.findings) r.ok = r.ok && f.ok;
  return r;
}

nlohmann::json Adjudication::to_json() const {
  return {{"case_id", case_id},
          {"backend", backend},
          {"attempt_index", attempt_index},
          {"explanation_correct", explanation_correct},
          {"note", note},
          {"decided_at", decided_at}};
}

Adjudication Adjudication::from_json(const nlohmann::json& j) {
  Adjudication a;
  a.case_id = j.at("case_id").get<std::string>();
  a.backend = j.at("backend").get<std::string>();
  a.attempt_index = j.at("attempt_index").get<int>();
  a.explanation_correct = j.at("explanation_correct").get<bool>();
  a.note = j.value("note", "");
  a.decided_at = j.value("decided_at", "");
  return a;
}

void append_adjudication(const fs::path& file, const Adjudication& adj) {
  std::error_code ec;
  fs::create_directories(file.parent_path(), ec);
  std::ofstream f(file, std::ios::app | std::ios::binary);
  f << adj.to_json().dump() << "\n";
  if (!f) throw OracleError("WORKSPACE_IO_ERROR", "cannot append " + file.string());
}

std::vector<Adjudication> load_adjudications(const fs::path& file) {
  std::vector<Adjudication> out;
  std::ifstream f(file, std::ios::binary);
  if (!f) return out;
  std::string line;
  while (std::getline(f, line)) {
    if (trim(line).empty()) continue;
    out.push_back(Adjudication::from_json(nlohmann::json::parse(line)));
  }
  return out;
}

const Adjudication* find_adjudication(const std::vector<Adjudication>& all,
                                      const std::string& case_id, const std::string& backend,
                                      int attempt_index) {
  const Adjudication* hit = nullptr;  // last line wins
  for (const auto& a : all)
    if (a.case_id == case_id && a.backend == backend && a.attempt_index == attempt_index)
      hit = &a;
  return hit;
}

std::string to_string(OutcomeStatus s) {
  return s == OutcomeStatus::Decided ? "DECIDED" : "PENDING_ADJUDICATION";
}

std::string to_string(FailureReason r) {
  switch (r) {
    case FailureReason::None: return "NONE";
    case FailureReason::WrongDecision: return "WRONG_DECISION";
    case FailureReason::UnparseableOutput: return "UNPARSEABLE_OUTPUT";
    case FailureReason::BadExplanation: return "BAD_EXPLANATION";
    case FailureReason::OutputNotCompiling: return "OUTPUT_NOT_COMPILING";
    case FailureReason::MechanicsViolated: return "MECHANICS_VIOLATED";
  }
  return "NONE";
}

OutcomeStatus outcome_status_from_string(const std::string& s) {
  if (s == "DECIDED") return OutcomeStatus::Decided;
  if (s == "PENDING_ADJUDICATION") return OutcomeStatus::PendingAdjudication;
  throw std::invalid_argument("unknown outcome status: " + s);
}

FailureReason failure_reason_from_string(const std::string& s) {
  for (FailureReason r : {FailureReason::None, FailureReason::WrongDecision,
                          FailureReason::UnparseableOutput, FailureReason::BadExplanation,
                          FailureReason::OutputNotCompiling, FailureReason::MechanicsViolated})
    if (to_string(r) == s) return r;
  throw std::invalid_argument("unknown failure reason: " + s);
}

namespace {

nlohmann::json compile_to_json(const CompileResult& c) {
  nlohmann::json diags = nlohmann::json::array();
  for (const auto& d : c.diagnostics)
    diags.push_back({{"file", d.file}, {"line", d.line}, {"message", d.message}});
  return {{"ok", c.ok},
          {"checker", c.checker},
          {"exit_code", c.exit_code},
          {"output", c.output},
          {"diagnostics", diags}};
}

CompileResult compile_from_json(const nlohmann::json& j) {
  CompileResult c;
  c.ok = j.at("ok").get<bool>();
  c.checker = j.value("checker", "");
  c.exit_code = j.value("exit_code", 0);
  c.output = j.value("output", "");
  for (const auto& d : j.value("diagnostics", nlohmann::json::array()))
    c.diagnostics.push_back(
        {d.value("file", ""), d.value("line", 0), d.value("message", "")});
  return c;
}

nlohmann::json mechanics_to_json(const MechanicsResult& m) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& f : m.findings)
    findings.push_back({{"check", f.check}, {"ok", f.ok}, {"detail", f.detail}});
  return {{"ok", m.ok}, {"rule", m.rule}, {"findings", findings}};
}

MechanicsResult mechanics_from_json(const nlohmann::json& j) {
  MechanicsResult m;
  m.ok = j.at("ok").get<bool>();
  m.rule = j.value("rule", "");
  for (const auto& f : j.value("findings", nlohmann::json::array()))
    m.findings.push_back(
        {f.value("check", ""), f.value("ok", false), f.value("detail", "")});
  return m;
}

VerdictDecision verdict_decision_from_string(const std::string& s) {
  if (s == "yes") return VerdictDecision::Yes;
  if (s == "no") return VerdictDecision::No;
  return VerdictDecision::Unparseable;
}

}  // namespace

nlohmann::json CaseOutcome::to_json() const {
  nlohmann::json j{{"case_id", case_id},
                   {"backend", backend},
                   {"attempt_index", attempt_index},
                   {"temperature", temperature},
                   {"correct", correct},
                   {"status", to_string(status)},
                   {"failure_reason", to_string(failure)},
                   {"decision", to_string(decision)},
                   {"decision_source", decision_source},
                   {"note", note},
                   {"request_digest", request_digest}};
  if (compile) j["compile"] = compile_to_json(*compile);
  if (mechanics) j["mechanics"] = mechanics_to_json(*mechanics);
  if (explanation_correct) j["explanation_correct"] = *explanation_correct;
  return j;
}

CaseOutcome CaseOutcome::from_json(const nlohmann::json& j) {
  CaseOutcome o;
  o.case_id = j.at("case_id").get<std::string>();
  o.backend = j.value("backend", "");
  o.attempt_index = j.value("attempt_index", 0);
  o.temperature = j.value("temperature", 0.0);
  o.correct = j.at("correct").get<bool>();
  o.status = outcome_status_from_string(j.at("status").get<std::string>());
  o.failure = failure_reason_from_string(j.at("failure_reason").get<std::string>());
  o.decision = verdict_decision_from_string(j.value("decision", "unparseable"));
  o.decision_source = j.value("decision_source", "none");
  o.note = j.value("note", "");
  o.request_digest = j.value("request_digest", "");
  if (j.contains("compile")) o.compile = compile_from_json(j["compile"]);
  if (j.contains("mechanics")) o.mechanics = mechanics_from_json(j["mechanics"]);
  if (j.contains("explanation_correct"))
    o.explanation_correct = j["explanation_correct"].get<bool>();
  return o;
}

namespace {

CaseOutcome outcome_base(const BugCase& bug, const Verdict& v) {
  CaseOutcome o;
  o.case_id = bug.id;
  o.decision = v.decision;
  o.decision_source = to_string(v.decision_source);
  return o;
}

}  // namespace

CaseOutcome judge_type1(const BugCase& bug, const Verdict& verdict,
                        const Adjudication* adjudication) {
  if (bug.bug_kind == BugKind::Type2BlockedValid)
    throw WrongKindError("judge_type1 called on a Type II case: " + bug.id);
  CaseOutcome o = outcome_base(bug, verdict);
  if (verdict.decision == VerdictDecision::Unparseable) {
    o.failure = FailureReason::UnparseableOutput;
    return o;
  }
  if (verdict.decision == VerdictDecision::Yes) {
    // ground truth for every Type I case: the transformation is buggy → NO
    o.failure = FailureReason::WrongDecision;
    return o;
  }
  if (!adjudication) {
    o.status = OutcomeStatus::PendingAdjudication;
    o.note = "decision correct; explanation awaits human adjudication";
    return o;
  }
  o.explanation_correct = adjudication->explanation_correct;
  o.correct = adjudication->explanation_correct;
  o.failure = o.correct ? FailureReason::None : FailureReason::BadExplanation;
  o.note = adjudication->note;
  return o;
}

CaseOutcome judge_type2(const BugCase& bug, const Verdict& verdict,
                        const fs::path& workspace, const CheckerConfig& config) {
  if (bug.bug_kind != BugKind::Type2BlockedValid)
    throw WrongKindError("judge_type2 called on a Type I case: " + bug.id);
  CaseOutcome o = outcome_base(bug, verdict);
  if (verdict.decision == VerdictDecision::Unparseable) {
    o.failure = FailureReason::UnparseableOutput;
    return o;
  }
  if (verdict.decision == VerdictDecision::No) {
    // ground truth: the refactoring is valid and should be performed
    o.failure = FailureReason::WrongDecision;
    return o;
  }
  if (verdict.extracted_units.empty()) {
    o.failure = FailureReason::UnparseableOutput;
    o.note = "affirmative answer without an extractable program";
    return o;
  }
  try {
    o.compile = check_static(bug.language, verdict.extracted_units, workspace, config);
    if (!o.compile->ok) {
      o.failure = FailureReason::OutputNotCompiling;
      return o;
    }
    o.mechanics = check_mechanics(bug, verdict.extracted_units);
    if (!o.mechanics->ok) {
      o.failure = FailureReason::MechanicsViolated;
      return o;
    }
    o.correct = true;
  } catch (const OracleError& e) {
    o.status = OutcomeStatus::PendingAdjudication;
    o.correct = false;
    o.failure = FailureReason::None;
    o.note = e.what();
  }
  return o;
}

ExplanationHint suggest_explanation_label(ReasonCategory expected, const std::string& body) {
  static const std::map<ReasonCategory, std::vector<std::string>> kCues = {
      {ReasonCategory::CompileError,
       {"does not compile", "compile error", "compilation error", "fails to compile",
        "will not compile", "won't compile", "cannot compile", "syntax error",
        "reserved word", "keyword"}},
      {ReasonCategory::RuntimeError,
       {"runtime error", "at runtime", "raises", "exception", "crash",
        "undefined behavior"}},
      {ReasonCategory::BehaviorChange,
       {"behavior", "behaviour", "different output", "output changes",
        "changes the output", "semantics", "different result", "no longer returns",
        "returns a different"}},
      {ReasonCategory::NotApplicable, {}},
  };
  ExplanationHint hint;
  std::string lc = to_lower(body);
  bool expected_hit = false, other_hit = false;
  for (const auto& [cat, cues] : kCues) {
    for (const auto& cue : cues) {
      if (lc.find(cue) == std::string::npos) continue;
      hint.cues.push_back(cue);
      if (cat == expected)
        expected_hit = true;
      else
        other_hit = true;
    }
  }
  if (expected_hit)
    hint.suggestion = true;
  else if (other_hit)
    hint.suggestion = false;
  return hint;
}

}  // namespace sentinel
