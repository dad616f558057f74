#include "sentinel/verdict.hpp"

#include <gtest/gtest.h>

#include "sentinel/util.hpp"
#include "test_support.hpp"

using namespace sentinel;

namespace {

struct GoldenCase {
  std::string file;
  PromptKind kind;
  VerdictDecision decision;
  DecisionSource source;
  bool reasoning_stripped;
  int unit_count;
};

Verdict parse_golden(const std::string& file, PromptKind kind) {
  auto raw = util::read_file(testsup::data_dir() / "transcripts" / file);
  return parse_verdict(raw, kind);
}

}  // namespace

TEST(VerdictGolden, TranscriptSuite) {
  const std::vector<GoldenCase> cases = {
      {"t01_exact_yes.txt", PromptKind::Type1Check, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, false, 0},
      {"t02_exact_no_explained.txt", PromptKind::Type1Check, VerdictDecision::No,
       DecisionSource::ExactFirstLine, false, 0},
      {"t03_decorated_no.txt", PromptKind::Type1Check, VerdictDecision::No,
       DecisionSource::ExactFirstLine, false, 0},
      {"t04_preamble_recovery.txt", PromptKind::Type1Check, VerdictDecision::No,
       DecisionSource::Recovered, false, 0},
      {"t05_reasoning_block_no.txt", PromptKind::Type1Check, VerdictDecision::No,
       DecisionSource::ExactFirstLine, true, 0},
      {"t06_reasoning_block_yes.txt", PromptKind::Type1Check, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, true, 0},
      {"t07_yes_fenced_code.txt", PromptKind::Type2Apply, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, false, 1},
      {"t08_yes_file_headers.txt", PromptKind::Type2Apply, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, false, 2},
      {"t09_fragmented_code_prose.txt", PromptKind::Type2Apply, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, false, 1},
      {"t10_empty.txt", PromptKind::Type1Check, VerdictDecision::Unparseable,
       DecisionSource::None, false, 0},
      {"t11_whitespace_only.txt", PromptKind::Type1Check, VerdictDecision::Unparseable,
       DecisionSource::None, false, 0},
      {"t12_unparseable_prose.txt", PromptKind::Type1Check, VerdictDecision::Unparseable,
       DecisionSource::None, false, 0},
      {"t13_mixed_sentence_yes.txt", PromptKind::Type1Check, VerdictDecision::Unparseable,
       DecisionSource::None, false, 0},
      {"t14_late_no_beyond_window.txt", PromptKind::Type1Check, VerdictDecision::Unparseable,
       DecisionSource::None, false, 0},
      {"t15_competing_tokens.txt", PromptKind::Type1Check, VerdictDecision::Yes,
       DecisionSource::Recovered, false, 0},
      {"t16_yes_without_code.txt", PromptKind::Type2Apply, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, false, 0},
  };
  ASSERT_GE(cases.size(), 12u);
  for (const auto& g : cases) {
    SCOPED_TRACE(g.file);
    auto v = parse_golden(g.file, g.kind);
    EXPECT_EQ(v.decision, g.decision);
    EXPECT_EQ(v.decision_source, g.source);
    EXPECT_EQ(v.reasoning_stripped, g.reasoning_stripped);
    EXPECT_EQ(static_cast<int>(v.extracted_units.size()), g.unit_count);
  }
}

TEST(VerdictBody, ExplanationFollowsDecisionLine) {
  auto v = parse_golden("t02_exact_no_explained.txt", PromptKind::Type1Check);
  EXPECT_EQ(v.body,
            "The transformed program fails to compile: newFunction returns a string "
            "literal from a function declared const char.\n");
}

TEST(VerdictBody, UnparseableKeepsFullText) {
  auto v = parse_golden("t12_unparseable_prose.txt", PromptKind::Type1Check);
  EXPECT_NE(v.body.find("transformation looks reasonable"), std::string::npos);
}

TEST(VerdictReasoning, StrippedBlockDoesNotLeakIntoBody) {
  auto v = parse_golden("t05_reasoning_block_no.txt", PromptKind::Type1Check);
  EXPECT_EQ(v.body.find("user wants"), std::string::npos);
  EXPECT_NE(v.body.find("resolves to B.k"), std::string::npos);
}

TEST(VerdictReasoning, UnclosedBlockIsKeptVerbatim) {
  auto v = parse_verdict("<think>\nNO this is broken", PromptKind::Type1Check);
  EXPECT_FALSE(v.reasoning_stripped);
  // The <think> line itself is line one; NO is recovered from line two.
  EXPECT_EQ(v.decision, VerdictDecision::No);
  EXPECT_EQ(v.decision_source, DecisionSource::Recovered);
}

TEST(VerdictUnits, FencedBlockWithoutHeaderGetsSyntheticPath) {
  auto v = parse_golden("t07_yes_fenced_code.txt", PromptKind::Type2Apply);
  ASSERT_EQ(v.extracted_units.size(), 1u);
  EXPECT_EQ(v.extracted_units[0].path, "unit1");
  EXPECT_NE(v.extracted_units[0].text.find("public void doQuery()"), std::string::npos);
  EXPECT_EQ(v.extracted_units[0].text.find("```"), std::string::npos);
}

TEST(VerdictUnits, FileHeadersBecomeUnitPaths) {
  auto v = parse_golden("t08_yes_file_headers.txt", PromptKind::Type2Apply);
  ASSERT_EQ(v.extracted_units.size(), 2u);
  EXPECT_EQ(v.extracted_units[0].path, "A.java");
  EXPECT_EQ(v.extracted_units[0].text, "public class A {}\n");
  EXPECT_EQ(v.extracted_units[1].path, "C.java");
  EXPECT_NE(v.extracted_units[1].text.find("private int f = 0;"), std::string::npos);
}

TEST(VerdictUnits, FragmentedProseYieldsLongestCodeRun) {
  auto v = parse_golden("t09_fragmented_code_prose.txt", PromptKind::Type2Apply);
  ASSERT_EQ(v.extracted_units.size(), 1u);
  const auto& text = v.extracted_units[0].text;
  // The eight-line B+C run wins over the two-line A fragment.
  EXPECT_NE(text.find("public class B extends A {"), std::string::npos);
  EXPECT_NE(text.find("public class C extends A {"), std::string::npos);
  EXPECT_EQ(text.find("public class A {"), std::string::npos);
  EXPECT_EQ(text.find("field moves"), std::string::npos);
  EXPECT_EQ(text.find("completes the refactoring"), std::string::npos);
}

TEST(VerdictUnits, Type1NeverExtractsCode) {
  auto raw = util::read_file(testsup::data_dir() / "transcripts" / "t07_yes_fenced_code.txt");
  auto v = parse_verdict(raw, PromptKind::Type1Check);
  EXPECT_TRUE(v.extracted_units.empty());
}

TEST(VerdictUnits, NoDecisionMeansNoExtraction) {
  auto v = parse_verdict("maybe?\n```java\nclass A {}\n```\n", PromptKind::Type2Apply);
  EXPECT_EQ(v.decision, VerdictDecision::Unparseable);
  EXPECT_TRUE(v.extracted_units.empty());
}
