#include "sentinel/oracle.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "test_support.hpp"

namespace sentinel {
namespace {

namespace fs = std::filesystem;
using testsup::TempDir;
using testsup::load_fixture_case;

Verdict yes_verdict(std::vector<SourceUnit> units = {}) {
  Verdict v;
  v.decision = VerdictDecision::Yes;
  v.decision_source = DecisionSource::ExactFirstLine;
  v.extracted_units = std::move(units);
  return v;
}

Verdict no_verdict() {
  Verdict v;
  v.decision = VerdictDecision::No;
  v.decision_source = DecisionSource::ExactFirstLine;
  return v;
}

Verdict unparseable_verdict() { return {}; }

CheckerConfig builtin_java_config() {
  CheckerConfig c;
  c.java_cmd = kBuiltinJavaChecker;
  return c;
}

// Listing-4 shape: doQuery pulled up into the abstract base.
std::vector<SourceUnit> pulled_up_query_units() {
  return {{"Query.java",
           "public abstract class Query {\n"
           "  public void doQuery() {\n"
           "    SDQuery sd = createQuery();\n"
           "    sd.run();\n"
           "  }\n"
           "  protected abstract SDQuery createQuery();\n"
           "}\n"
           "public class QueryV1 extends Query {\n"
           "  protected SDQuery createQuery() {\n"
           "    return new SDQuery(1);\n"
           "  }\n"
           "}\n"
           "public class QueryV2 extends Query {\n"
           "  protected SDQuery createQuery() {\n"
           "    return new SDQuery(2);\n"
           "  }\n"
           "}\n"
           "public class SDQuery {\n"
           "  private final int version;\n"
           "  public SDQuery(int version) {\n"
           "    this.version = version;\n"
           "  }\n"
           "  public void run() {\n"
           "    System.out.println(version);\n"
           "  }\n"
           "}\n"}};
}

// Listing-8 shape: f pushed from A down into C (corrected initializer).
std::vector<SourceUnit> pushed_down_field_units(bool field_left_in_a) {
  std::string a = field_left_in_a
                      ? "public class A {\n  private int f = 0;\n}\n"
                      : "public class A {\n}\n";
  return {{"A.java",
           a +
               "public class B extends A {\n"
               "  protected int f = 1;\n"
               "  public long t() {\n"
               "    return f;\n"
               "  }\n"
               "}\n"
               "public class C extends A {\n"
               "  protected int f = 1;\n"
               "}\n"}};
}

TEST(CheckStatic, BuiltinJavaAcceptsBothSidesOfBehaviorCase) {
  BugCase bug = load_fixture_case("java-pushdown-method-behavior");
  ASSERT_TRUE(bug.after.has_value());
  TempDir tmp;
  CheckerConfig cfg = builtin_java_config();
  CompileResult before = check_static(Language::Java, bug.before, tmp.path / "b", cfg);
  CompileResult after = check_static(Language::Java, *bug.after, tmp.path / "a", cfg);
  EXPECT_TRUE(before.ok) << before.output;
  EXPECT_TRUE(after.ok) << after.output;
  EXPECT_EQ(before.checker, kBuiltinJavaChecker);
  EXPECT_EQ(before.exit_code, 0);
}

TEST(CheckStatic, BuiltinJavaRejectsUnbalancedDelimiters) {
  TempDir tmp;
  CompileResult r = check_static(Language::Java, {{"A.java", "class A { {\n"}},
                                 tmp.path, builtin_java_config());
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].message, "unbalanced delimiters");
}

TEST(CheckStatic, BuiltinJavaRejectsReservedWordTypeName) {
  TempDir tmp;
  CompileResult r = check_static(Language::Java, {{"A.java", "class continue {}\n"}},
                                 tmp.path, builtin_java_config());
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].message, "reserved word used as type name");
}

TEST(CheckStatic, BuiltinJavaRejectsUnitWithoutTypeDeclaration) {
  TempDir tmp;
  CompileResult r = check_static(Language::Java, {{"A.java", "int x = 1;\n"}},
                                 tmp.path, builtin_java_config());
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].message, "no type declaration found");
}

TEST(CheckStatic, PythonCompileAcceptsOriginalRejectsKeywordRename) {
  BugCase bug = load_fixture_case("python-rename-variable-keyword");
  ASSERT_TRUE(bug.after.has_value());
  TempDir tmp;
  CheckerConfig cfg;
  CompileResult before = check_static(Language::Python, bug.before, tmp.path / "b", cfg);
  EXPECT_TRUE(before.ok) << before.output;
  CompileResult after = check_static(Language::Python, *bug.after, tmp.path / "a", cfg);
  EXPECT_FALSE(after.ok);
  EXPECT_NE(after.exit_code, 0);
  ASSERT_FALSE(after.diagnostics.empty());
  EXPECT_EQ(after.diagnostics[0].file, "b.py");
  EXPECT_GT(after.diagnostics[0].line, 0);
}

TEST(CheckStatic, CCompileAcceptsOriginalRejectsExtractedFunction) {
  BugCase bug = load_fixture_case("c-extract-function-return");
  ASSERT_TRUE(bug.after.has_value());
  TempDir tmp;
  CheckerConfig cfg;
  CompileResult before = check_static(Language::C, bug.before, tmp.path / "b", cfg);
  EXPECT_TRUE(before.ok) << before.output;
  CompileResult after = check_static(Language::C, *bug.after, tmp.path / "a", cfg);
  EXPECT_FALSE(after.ok) << "refactored C fixture must fail the compile oracle";
  ASSERT_FALSE(after.diagnostics.empty());
  EXPECT_EQ(after.diagnostics[0].file, "main.c");
  EXPECT_GT(after.diagnostics[0].line, 0);
}

TEST(CheckStatic, PythonTypecheckIsAndedWithCompile) {
  TempDir tmp;
  std::vector<SourceUnit> units = {{"x.py", "y = 1\n"}};
  CheckerConfig cfg;
  cfg.python_typecheck_cmd = "true";
  EXPECT_TRUE(check_static(Language::Python, units, tmp.path / "pass", cfg).ok);
  cfg.python_typecheck_cmd = "false";
  CompileResult r = check_static(Language::Python, units, tmp.path / "fail", cfg);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.checker.find("&&"), std::string::npos);
}

TEST(CheckStatic, SanitizesHostilePathsIntoWorkspace) {
  TempDir tmp;
  fs::path ws = tmp.path / "ws";
  std::vector<SourceUnit> units = {{"../../escape.py", "x = 1\n"},
                                   {"", "y = 2\n"}};
  CompileResult r = check_static(Language::Python, units, ws, CheckerConfig{});
  EXPECT_TRUE(r.ok) << r.output;
  EXPECT_TRUE(fs::exists(ws / "escape.py"));
  EXPECT_TRUE(fs::exists(ws / "unit2.py"));
  EXPECT_FALSE(fs::exists(tmp.path / "escape.py"));
}

TEST(CheckStatic, DuplicatePathsGetDisambiguated) {
  TempDir tmp;
  fs::path ws = tmp.path / "ws";
  std::vector<SourceUnit> units = {{"a.py", "x = 1\n"}, {"a.py", "y = 2\n"}};
  CompileResult r = check_static(Language::Python, units, ws, CheckerConfig{});
  EXPECT_TRUE(r.ok) << r.output;
  EXPECT_TRUE(fs::exists(ws / "a.py"));
  EXPECT_TRUE(fs::exists(ws / "u2_a.py"));
}

TEST(CheckStatic, MissingCheckerBinaryThrowsCheckerNotFound) {
  TempDir tmp;
  CheckerConfig cfg;
  cfg.c_cmd = "definitely-not-a-real-compiler-xyz {files}";
  try {
    check_static(Language::C, {{"m.c", "int main() { return 0; }\n"}}, tmp.path, cfg);
    FAIL() << "expected OracleError";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.code(), "CHECKER_NOT_FOUND");
  }
}

TEST(CheckStatic, EmptyCommandThrowsCheckerNotFound) {
  TempDir tmp;
  CheckerConfig cfg;
  cfg.java_cmd = "";
  try {
    check_static(Language::Java, {{"A.java", "class A {}\n"}}, tmp.path, cfg);
    FAIL() << "expected OracleError";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.code(), "CHECKER_NOT_FOUND");
  }
}

TEST(CheckStatic, SlowCheckerThrowsCheckerTimeout) {
  TempDir tmp;
  CheckerConfig cfg;
  cfg.c_cmd = "sleep 5";
  cfg.timeout_secs = 1;
  try {
    check_static(Language::C, {{"m.c", "int main() { return 0; }\n"}}, tmp.path, cfg);
    FAIL() << "expected OracleError";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.code(), "CHECKER_TIMEOUT");
  }
}

TEST(CheckMechanics, PullUpMethodPassesWhenMethodMoved) {
  BugCase bug = load_fixture_case("java-pullup-method-query");
  MechanicsResult r = check_mechanics(bug, pulled_up_query_units());
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.rule, "pull up method");
  // declared in target, removed from both subclasses that had it
  ASSERT_EQ(r.findings.size(), 3u);
  for (const auto& f : r.findings) EXPECT_TRUE(f.ok) << f.check;
}

TEST(CheckMechanics, PullUpMethodFailsOnUnchangedProgram) {
  BugCase bug = load_fixture_case("java-pullup-method-query");
  MechanicsResult r = check_mechanics(bug, bug.before);
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.findings.empty());
  EXPECT_FALSE(r.findings[0].ok);  // doQuery not declared in Query
}

TEST(CheckMechanics, PushDownFieldPassesCorrectedTransform) {
  BugCase bug = load_fixture_case("java-pushdown-field-shadow");
  MechanicsResult r = check_mechanics(bug, pushed_down_field_units(false));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.rule, "push down field");
  ASSERT_EQ(r.findings.size(), 2u);
  EXPECT_TRUE(r.findings[0].ok) << r.findings[0].check;
  EXPECT_TRUE(r.findings[1].ok) << r.findings[1].check;
}

TEST(CheckMechanics, PushDownFieldFailsWhenFieldLeftBehind) {
  BugCase bug = load_fixture_case("java-pushdown-field-shadow");
  MechanicsResult r = check_mechanics(bug, pushed_down_field_units(true));
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.findings.size(), 2u);
  EXPECT_FALSE(r.findings[0].ok);  // f still declared in A
  EXPECT_TRUE(r.findings[1].ok);   // f present in C
}

TEST(CheckMechanics, PushDownMethodParsesFromClause) {
  BugCase bug = load_fixture_case("java-pushdown-method-valid");
  std::vector<SourceUnit> moved = {
      {"Shape.java",
       "public class Shape {\n"
       "}\n"
       "public class Circle extends Shape {\n"
       "  public double area() {\n"
       "    return 0.0;\n"
       "  }\n"
       "  public double radius() {\n"
       "    return 2.0;\n"
       "  }\n"
       "}\n"
       "public class Square extends Shape {}\n"}};
  MechanicsResult r = check_mechanics(bug, moved);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.rule, "push down method");
  MechanicsResult unchanged = check_mechanics(bug, bug.before);
  EXPECT_FALSE(unchanged.ok);
}

TEST(CheckMechanics, RenameMethodScopedToDeclaringClass) {
  BugCase bug = load_fixture_case("java-rename-method-supercall");
  ASSERT_TRUE(bug.after.has_value());
  BugCase synth = bug;
  synth.refactoring_kind = "Rename Method";
  synth.refactoring_params = "rename method B.m to concat";
  MechanicsResult r = check_mechanics(synth, *bug.after);
  EXPECT_TRUE(r.ok) << "A.m is out of scope for a rename of B.m";

  synth.refactoring_params = "rename method m to concat";
  MechanicsResult wide = check_mechanics(synth, *bug.after);
  EXPECT_FALSE(wide.ok) << "unscoped rename still sees m declared in A";
}

TEST(CheckMechanics, RenameVariableTracksUsesAndDeclaration) {
  BugCase synth;
  synth.id = "synth-rename-var";
  synth.language = Language::Python;
  synth.refactoring_kind = "Rename Variable";
  synth.refactoring_params = "rename variable text to label";
  synth.before = {{"b.py", "class B:\n    def a(self) -> None:\n        text = 'hello'\n"}};

  std::vector<SourceUnit> renamed = {
      {"b.py", "class B:\n    def a(self) -> None:\n        label = 'hello'\n"}};
  EXPECT_TRUE(check_mechanics(synth, renamed).ok);

  MechanicsResult untouched = check_mechanics(synth, synth.before);
  EXPECT_FALSE(untouched.ok);
  ASSERT_EQ(untouched.findings.size(), 2u);
  EXPECT_FALSE(untouched.findings[0].ok);  // text still used
  EXPECT_FALSE(untouched.findings[1].ok);  // label never declared
}

TEST(CheckMechanics, UnknownKindDegradesToNoRule) {
  BugCase bug = load_fixture_case("c-extract-function-return");
  MechanicsResult r = check_mechanics(bug, bug.before);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.rule, "");
  ASSERT_EQ(r.findings.size(), 1u);
  EXPECT_EQ(r.findings[0].check, "NO_RULE");
}

TEST(CheckMechanics, MemberRulesOnlyApplyToJava) {
  BugCase synth;
  synth.language = Language::Python;
  synth.refactoring_kind = "Push Down Field";
  synth.refactoring_params = "push down A.f to class C";
  MechanicsResult r = check_mechanics(synth, {});
  EXPECT_TRUE(r.ok);
  ASSERT_EQ(r.findings.size(), 1u);
  EXPECT_EQ(r.findings[0].check, "NO_RULE");
}

TEST(CheckMechanics, UnreadableParamsDegradeGracefully) {
  BugCase synth;
  synth.language = Language::Java;
  synth.refactoring_kind = "Pull Up Method";
  synth.refactoring_params = "just do it please";
  MechanicsResult r = check_mechanics(synth, {});
  EXPECT_TRUE(r.ok);
  ASSERT_EQ(r.findings.size(), 1u);
  EXPECT_EQ(r.findings[0].check, "PARAMS_UNPARSEABLE");
}

TEST(AdjudicationLedger, AppendLoadAndLastLineWins) {
  TempDir tmp;
  fs::path file = tmp.path / "adjudications.jsonl";
  EXPECT_TRUE(load_adjudications(file).empty());

  Adjudication first{"case-1", "backend-a", 0, false, "looks wrong", "2026-08-26T10:00:00Z"};
  Adjudication second{"case-1", "backend-a", 0, true, "on reflection, fine", "2026-08-26T11:00:00Z"};
  Adjudication other{"case-2", "backend-a", 1, true, "", ""};
  append_adjudication(file, first);
  append_adjudication(file, other);
  append_adjudication(file, second);

  auto all = load_adjudications(file);
  ASSERT_EQ(all.size(), 3u);
  const Adjudication* hit = find_adjudication(all, "case-1", "backend-a", 0);
  ASSERT_NE(hit, nullptr);
  EXPECT_TRUE(hit->explanation_correct);
  EXPECT_EQ(hit->note, "on reflection, fine");
  EXPECT_EQ(find_adjudication(all, "case-1", "backend-a", 7), nullptr);
  EXPECT_EQ(find_adjudication(all, "nope", "backend-a", 0), nullptr);
}

TEST(JudgeType1, RejectsTypeTwoCases) {
  BugCase t2 = load_fixture_case("java-pullup-method-query");
  EXPECT_THROW(judge_type1(t2, no_verdict(), nullptr), WrongKindError);
}

TEST(JudgeType1, UnparseableOutputIsDecidedIncorrect) {
  BugCase bug = load_fixture_case("java-pushdown-method-behavior");
  CaseOutcome o = judge_type1(bug, unparseable_verdict(), nullptr);
  EXPECT_EQ(o.case_id, bug.id);
  EXPECT_FALSE(o.correct);
  EXPECT_EQ(o.status, OutcomeStatus::Decided);
  EXPECT_EQ(o.failure, FailureReason::UnparseableOutput);
}

TEST(JudgeType1, YesIsWrongDecision) {
  BugCase bug = load_fixture_case("java-pushdown-method-behavior");
  CaseOutcome o = judge_type1(bug, yes_verdict(), nullptr);
  EXPECT_FALSE(o.correct);
  EXPECT_EQ(o.failure, FailureReason::WrongDecision);
  EXPECT_EQ(o.status, OutcomeStatus::Decided);
}

TEST(JudgeType1, NoWithoutAdjudicationIsPending) {
  BugCase bug = load_fixture_case("java-pushdown-method-behavior");
  CaseOutcome o = judge_type1(bug, no_verdict(), nullptr);
  EXPECT_FALSE(o.correct);
  EXPECT_EQ(o.status, OutcomeStatus::PendingAdjudication);
  EXPECT_EQ(o.failure, FailureReason::None);
  EXPECT_FALSE(o.explanation_correct.has_value());
}

TEST(JudgeType1, AdjudicationDecidesExplanation) {
  BugCase bug = load_fixture_case("java-pushdown-method-behavior");
  Adjudication good{bug.id, "b", 0, true, "explains the dynamic dispatch change", ""};
  CaseOutcome accepted = judge_type1(bug, no_verdict(), &good);
  EXPECT_TRUE(accepted.correct);
  EXPECT_EQ(accepted.status, OutcomeStatus::Decided);
  EXPECT_EQ(accepted.failure, FailureReason::None);
  ASSERT_TRUE(accepted.explanation_correct.has_value());
  EXPECT_TRUE(*accepted.explanation_correct);
  EXPECT_EQ(accepted.note, good.note);

  Adjudication bad{bug.id, "b", 0, false, "cites the wrong line", ""};
  CaseOutcome rejected = judge_type1(bug, no_verdict(), &bad);
  EXPECT_FALSE(rejected.correct);
  EXPECT_EQ(rejected.failure, FailureReason::BadExplanation);
}

TEST(JudgeType2, RejectsTypeOneCases) {
  BugCase t1 = load_fixture_case("java-pushdown-method-behavior");
  TempDir tmp;
  EXPECT_THROW(judge_type2(t1, yes_verdict(), tmp.path, builtin_java_config()),
               WrongKindError);
}

TEST(JudgeType2, NoIsWrongDecision) {
  BugCase bug = load_fixture_case("java-pullup-method-query");
  TempDir tmp;
  CaseOutcome o = judge_type2(bug, no_verdict(), tmp.path, builtin_java_config());
  EXPECT_FALSE(o.correct);
  EXPECT_EQ(o.failure, FailureReason::WrongDecision);
}

TEST(JudgeType2, UnparseableIsUnparseableOutput) {
  BugCase bug = load_fixture_case("java-pullup-method-query");
  TempDir tmp;
  CaseOutcome o = judge_type2(bug, unparseable_verdict(), tmp.path, builtin_java_config());
  EXPECT_EQ(o.failure, FailureReason::UnparseableOutput);
}

TEST(JudgeType2, YesWithoutProgramIsUnparseableOutput) {
  BugCase bug = load_fixture_case("java-pullup-method-query");
  TempDir tmp;
  CaseOutcome o = judge_type2(bug, yes_verdict(), tmp.path, builtin_java_config());
  EXPECT_FALSE(o.correct);
  EXPECT_EQ(o.failure, FailureReason::UnparseableOutput);
  EXPECT_NE(o.note.find("without an extractable program"), std::string::npos);
}

TEST(JudgeType2, NonCompilingProgramFails) {
  BugCase bug = load_fixture_case("java-pullup-method-query");
  TempDir tmp;
  CaseOutcome o = judge_type2(bug, yes_verdict({{"A.java", "class A { {\n"}}),
                              tmp.path, builtin_java_config());
  EXPECT_FALSE(o.correct);
  EXPECT_EQ(o.failure, FailureReason::OutputNotCompiling);
  ASSERT_TRUE(o.compile.has_value());
  EXPECT_FALSE(o.compile->ok);
  EXPECT_FALSE(o.mechanics.has_value());
}

TEST(JudgeType2, CompilingButWrongTransformFailsMechanics) {
  BugCase bug = load_fixture_case("java-pushdown-field-shadow");
  TempDir tmp;
  CaseOutcome o = judge_type2(bug, yes_verdict(pushed_down_field_units(true)),
                              tmp.path, builtin_java_config());
  EXPECT_FALSE(o.correct);
  EXPECT_EQ(o.failure, FailureReason::MechanicsViolated);
  ASSERT_TRUE(o.compile.has_value());
  EXPECT_TRUE(o.compile->ok);
  ASSERT_TRUE(o.mechanics.has_value());
  EXPECT_FALSE(o.mechanics->ok);
}

TEST(JudgeType2, FaithfulTransformIsCorrect) {
  BugCase bug = load_fixture_case("java-pushdown-field-shadow");
  TempDir tmp;
  CaseOutcome o = judge_type2(bug, yes_verdict(pushed_down_field_units(false)),
                              tmp.path, builtin_java_config());
  EXPECT_TRUE(o.correct);
  EXPECT_EQ(o.status, OutcomeStatus::Decided);
  EXPECT_EQ(o.failure, FailureReason::None);
  ASSERT_TRUE(o.compile.has_value());
  EXPECT_TRUE(o.compile->ok);
  ASSERT_TRUE(o.mechanics.has_value());
  EXPECT_TRUE(o.mechanics->ok);
}

TEST(JudgeType2, OracleInfrastructureErrorLeavesOutcomePending) {
  BugCase bug = load_fixture_case("java-pullup-method-query");
  TempDir tmp;
  CheckerConfig cfg;
  cfg.java_cmd = "no-such-javac-xyz {files}";
  CaseOutcome o = judge_type2(bug, yes_verdict(pulled_up_query_units()), tmp.path, cfg);
  EXPECT_FALSE(o.correct);
  EXPECT_EQ(o.status, OutcomeStatus::PendingAdjudication);
  EXPECT_EQ(o.failure, FailureReason::None);
  EXPECT_NE(o.note.find("CHECKER_NOT_FOUND"), std::string::npos);
}

TEST(CaseOutcomeJson, RoundTripsAllEvidence) {
  BugCase bug = load_fixture_case("java-pushdown-field-shadow");
  TempDir tmp;
  CaseOutcome o = judge_type2(bug, yes_verdict(pushed_down_field_units(false)),
                              tmp.path, builtin_java_config());
  o.backend = "backend-a";
  o.attempt_index = 4;
  o.temperature = 0.8;
  o.request_digest = "abc123";
  o.explanation_correct = true;

  CaseOutcome back = CaseOutcome::from_json(o.to_json());
  EXPECT_EQ(back.case_id, o.case_id);
  EXPECT_EQ(back.backend, "backend-a");
  EXPECT_EQ(back.attempt_index, 4);
  EXPECT_DOUBLE_EQ(back.temperature, 0.8);
  EXPECT_EQ(back.correct, o.correct);
  EXPECT_EQ(back.status, o.status);
  EXPECT_EQ(back.failure, o.failure);
  EXPECT_EQ(back.decision, o.decision);
  EXPECT_EQ(back.request_digest, "abc123");
  ASSERT_TRUE(back.compile.has_value());
  EXPECT_EQ(back.compile->ok, o.compile->ok);
  EXPECT_EQ(back.compile->checker, o.compile->checker);
  ASSERT_TRUE(back.mechanics.has_value());
  EXPECT_EQ(back.mechanics->findings.size(), o.mechanics->findings.size());
  ASSERT_TRUE(back.explanation_correct.has_value());
  EXPECT_TRUE(*back.explanation_correct);
}

TEST(ExplanationHint, MatchingCueSuggestsAccept) {
  ExplanationHint h = suggest_explanation_label(
      ReasonCategory::CompileError,
      "The program does not compile: `continue` is a reserved word.");
  ASSERT_TRUE(h.suggestion.has_value());
  EXPECT_TRUE(*h.suggestion);
  EXPECT_FALSE(h.cues.empty());
}

TEST(ExplanationHint, ForeignCueSuggestsReject) {
  ExplanationHint h = suggest_explanation_label(
      ReasonCategory::BehaviorChange, "This change causes a compile error.");
  ASSERT_TRUE(h.suggestion.has_value());
  EXPECT_FALSE(*h.suggestion);
}

TEST(ExplanationHint, NoCueMeansNoSuggestion) {
  ExplanationHint h =
      suggest_explanation_label(ReasonCategory::BehaviorChange, "Seems plausible.");
  EXPECT_FALSE(h.suggestion.has_value());
  EXPECT_TRUE(h.cues.empty());
}

TEST(ExplanationHint, MixedCuesPreferExpectedCategory) {
  ExplanationHint h = suggest_explanation_label(
      ReasonCategory::BehaviorChange,
      "The output changes at runtime because dispatch picks another override.");
  ASSERT_TRUE(h.suggestion.has_value());
  EXPECT_TRUE(*h.suggestion);
  EXPECT_GE(h.cues.size(), 2u);
}

}  // namespace
}  // namespace sentinel
