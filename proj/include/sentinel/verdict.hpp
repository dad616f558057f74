#pragma once

#include <string>
#include <vector>

#include "sentinel/corpus.hpp"
#include "sentinel/prompt.hpp"

namespace sentinel {

enum class VerdictDecision { Yes, No, Unparseable };
enum class DecisionSource { ExactFirstLine, Recovered, None };

std::string to_string(VerdictDecision d);
std::string to_string(DecisionSource s);

// Structured reading of one raw model response.
struct Verdict {
  VerdictDecision decision = VerdictDecision::Unparseable;
  DecisionSource decision_source = DecisionSource::None;
  std::string body;
  std::vector<SourceUnit> extracted_units;
  bool reasoning_stripped = false;
};

// Total parse of raw model output: never fails, every outcome is a Verdict.
// Recovery scans the first 5 non-blank lines for a standalone uppercase
// YES/NO token. For Type II YES responses the refactored program is taken
// from fenced code blocks, or failing that from the longest run of at least
// 3 consecutive code-shaped lines.
Verdict parse_verdict(const std::string& raw, PromptKind expected_kind);

}  // namespace sentinel
