#include "sentinel/verdict.hpp"

#include <algorithm>

#include "sentinel/util.hpp"

namespace sentinel {

std::string to_string(VerdictDecision d) {
  switch (d) {
    case VerdictDecision::Yes: return "yes";
    case VerdictDecision::No: return "no";
    case VerdictDecision::Unparseable: return "unparseable";
  }
  return "?";
}

std::string to_string(DecisionSource s) {
  switch (s) {
    case DecisionSource::ExactFirstLine: return "exact_first_line";
    case DecisionSource::Recovered: return "recovered";
    case DecisionSource::None: return "none";
  }
  return "?";
}

namespace {

// Removes one leading <think>/<thinking>/<reasoning> block. Unclosed blocks
// are left alone.
std::string strip_reasoning(const std::string& raw, bool& stripped) {
  stripped = false;
  static const std::vector<std::pair<std::string, std::string>> kMarkers = {
      {"<think>", "</think>"},
      {"<thinking>", "</thinking>"},
      {"<reasoning>", "</reasoning>"},
  };
  size_t first = raw.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return raw;
  for (const auto& [open, close] : kMarkers) {
    if (raw.compare(first, open.size(), open) != 0) continue;
    size_t end = raw.find(close, first + open.size());
    if (end == std::string::npos) return raw;
    stripped = true;
    return raw.substr(end + close.size());
  }
  return raw;
}

// Whitespace, quotes, markdown emphasis and sentence punctuation around a
// candidate decision word.
std::string trim_decoration(const std::string& line) {
  static const std::string kJunk = " \t\r*_`#\"'.:!";
  size_t b = line.find_first_not_of(kJunk);
  if (b == std::string::npos) return "";
  size_t e = line.find_last_not_of(kJunk);
  return line.substr(b, e - b + 1);
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Finds a standalone (word-boundary) uppercase YES or NO in the line.
// Returns the earlier match when both occur.
std::optional<VerdictDecision> standalone_decision_token(const std::string& line) {
  size_t best_pos = std::string::npos;
  VerdictDecision best = VerdictDecision::Unparseable;
  for (const auto& [word, decision] :
       {std::pair<std::string, VerdictDecision>{"YES", VerdictDecision::Yes},
        std::pair<std::string, VerdictDecision>{"NO", VerdictDecision::No}}) {
    size_t pos = 0;
    while ((pos = line.find(word, pos)) != std::string::npos) {
      bool left_ok = pos == 0 || !is_word_char(line[pos - 1]);
      size_t after = pos + word.size();
      bool right_ok = after >= line.size() || !is_word_char(line[after]);
      if (left_ok && right_ok) {
        if (pos < best_pos) {
          best_pos = pos;
          best = decision;
        }
        break;
      }
      pos = after;
    }
  }
  if (best_pos == std::string::npos) return std::nullopt;
  return best;
}

struct FencedBlock {
  std::string text;
};

std::vector<FencedBlock> fenced_blocks(const std::vector<std::string>& lines) {
  std::vector<FencedBlock> blocks;
  bool in_block = false;
  std::string current;
  for (const auto& line : lines) {
    std::string t = util::trim(line);
    if (util::starts_with(t, "```")) {
      if (in_block) {
        blocks.push_back({current});
        current.clear();
        in_block = false;
      } else {
        in_block = true;
      }
      continue;
    }
    if (in_block) {
      current += line;
      current += "\n";
    }
  }
  // An unclosed fence still counts: models often stop mid-output.
  if (in_block && !util::trim(current).empty()) blocks.push_back({current});
  return blocks;
}

bool code_shaped(const std::string& line) {
  std::string t = line;
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t' || t.back() == '\r')) t.pop_back();
  if (t.empty()) return false;
  char c = t.back();
  return c == '{' || c == '}' || c == ';' || c == ':';
}

std::vector<std::string> longest_code_run(const std::vector<std::string>& lines) {
  size_t best_start = 0, best_len = 0, run_start = 0, run_len = 0;
  for (size_t idx = 0; idx <= lines.size(); ++idx) {
    if (idx < lines.size() && code_shaped(lines[idx])) {
      if (run_len == 0) run_start = idx;
      ++run_len;
    } else {
      if (run_len > best_len) {
        best_len = run_len;
        best_start = run_start;
      }
      run_len = 0;
    }
  }
  if (best_len < 3) return {};
  return {lines.begin() + static_cast<long>(best_start),
          lines.begin() + static_cast<long>(best_start + best_len)};
}

std::vector<SourceUnit> extract_units(const std::string& text) {
  auto lines = util::split(text, '\n');
  std::vector<SourceUnit> units;
  auto blocks = fenced_blocks(lines);
  if (!blocks.empty()) {
    int synthetic = 0;
    for (const auto& block : blocks) {
      std::string body = block.text;
      std::string path;
      auto block_lines = util::split(body, '\n');
      if (!block_lines.empty()) {
        std::string first = util::trim(block_lines.front());
        for (const std::string& prefix : {std::string("// file:"), std::string("# file:")}) {
          if (util::starts_with(first, prefix)) {
            path = util::trim(first.substr(prefix.size()));
            size_t cut = body.find('\n');
            body = cut == std::string::npos ? "" : body.substr(cut + 1);
            break;
          }
        }
      }
      if (util::trim(body).empty()) continue;
      if (path.empty()) path = "unit" + std::to_string(++synthetic);
      units.push_back({path, body});
    }
    return units;
  }
  auto run = longest_code_run(lines);
  if (!run.empty()) units.push_back({"unit1", util::join(run, "\n") + "\n"});
  return units;
}

}  // namespace

Verdict parse_verdict(const std::string& raw, PromptKind expected_kind) {
  Verdict v;
  std::string text = strip_reasoning(raw, v.reasoning_stripped);

  auto lines = util::split(text, '\n');
  std::vector<std::pair<size_t, std::string>> non_blank;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (!util::trim(lines[i]).empty()) non_blank.emplace_back(i, lines[i]);
  }

  size_t decision_line = 0;
  if (!non_blank.empty()) {
    std::string head = util::to_lower(trim_decoration(non_blank.front().second));
    if (head == "yes" || head == "no") {
      v.decision = head == "yes" ? VerdictDecision::Yes : VerdictDecision::No;
      v.decision_source = DecisionSource::ExactFirstLine;
      decision_line = non_blank.front().first;
    }
  }

  if (v.decision_source == DecisionSource::None) {
    size_t window = std::min<size_t>(5, non_blank.size());
    for (size_t i = 0; i < window; ++i) {
      if (auto found = standalone_decision_token(non_blank[i].second)) {
        v.decision = *found;
        v.decision_source = DecisionSource::Recovered;
        decision_line = non_blank[i].first;
        break;
      }
    }
  }

  if (v.decision_source == DecisionSource::None) {
    v.decision = VerdictDecision::Unparseable;
    v.body = text;
    return v;
  }

  std::vector<std::string> rest(lines.begin() + static_cast<long>(decision_line) + 1,
                                lines.end());
  v.body = util::join(rest, "\n");

  if (expected_kind == PromptKind::Type2Apply && v.decision == VerdictDecision::Yes) {
    v.extracted_units = extract_units(v.body);
  }
  return v;
}

}  // namespace sentinel
