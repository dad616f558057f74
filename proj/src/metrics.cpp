#include "sentinel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sentinel/util.hpp"

namespace fs = std::filesystem;

namespace sentinel {
using namespace util;

std::string Percent::rounded() const { return format_fixed(round_half_up(value(), 1), 1); }

int CorrectnessMatrix::correct_count(int row, int first_k) const {
  int c = 0;
  for (int a = 0; a < first_k; ++a)
    if (rows[row][a]) ++c;
  return c;
}

CorrectnessMatrix matrix_from_outcomes(const std::vector<CaseOutcome>& outcomes) {
  std::map<std::string, std::vector<const CaseOutcome*>> by_case;
  int pending = 0;
  for (const auto& o : outcomes) {
    by_case[o.case_id].push_back(&o);
    if (o.status == OutcomeStatus::PendingAdjudication) ++pending;
  }
  CorrectnessMatrix m;
  m.pending = pending;
  size_t uniform_k = 0;
  for (auto& [id, list] : by_case) {
    std::sort(list.begin(), list.end(), [](const CaseOutcome* a, const CaseOutcome* b) {
      return a->attempt_index < b->attempt_index;
    });
    if (uniform_k == 0) uniform_k = list.size();
    if (list.size() != uniform_k)
      throw std::invalid_argument("ragged attempt counts: case " + id + " has " +
                                  std::to_string(list.size()) + ", expected " +
                                  std::to_string(uniform_k));
    std::vector<bool> row;
    for (const auto* o : list) row.push_back(o->correct);
    m.labels.push_back(id);
    m.rows.push_back(std::move(row));
  }
  m.n = (int)m.rows.size();
  m.k = (int)uniform_k;
  return m;
}

namespace {

void check_scoring_pre(const CorrectnessMatrix& m, int k) {
  if (k < 1 || k > m.k)
    throw MetricsError("K_OUT_OF_RANGE",
                       "k=" + std::to_string(k) + " outside [1," + std::to_string(m.k) + "]");
  if (m.pending > 0)
    throw MetricsError("PENDING_OUTCOMES",
                       std::to_string(m.pending) + " outcomes await adjudication");
}

}  // namespace

Percent pass_at_k(const CorrectnessMatrix& m, int k) {
  check_scoring_pre(m, k);
  long long hits = 0;
  for (int i = 0; i < m.n; ++i)
    if (m.correct_count(i, k) >= 1) ++hits;
  return {hits, std::max(m.n, 1)};
}

Percent consistency_at_k(const CorrectnessMatrix& m, int k) {
  check_scoring_pre(m, k);
  long long sum_c = 0;
  for (int i = 0; i < m.n; ++i) sum_c += m.correct_count(i, k);
  // Σ (c_i/k) / n = Σ c_i / (n·k)
  return {sum_c, std::max((long long)m.n * k, 1LL)};
}

namespace {

const std::vector<GroupDim> kDimOrder = {GroupDim::Backend, GroupDim::BugKind,
                                         GroupDim::Language, GroupDim::ReasonCategory};

std::map<std::string, std::string> group_key(const CaseOutcome& o, const BugCase* bug,
                                             const std::set<GroupDim>& group_by) {
  std::map<std::string, std::string> g;
  for (GroupDim d : kDimOrder) {
    if (!group_by.count(d)) continue;
    switch (d) {
      case GroupDim::Backend: g["backend"] = o.backend; break;
      case GroupDim::BugKind:
        g["bug_kind"] = bug ? to_string(bug->bug_kind) : "unknown";
        break;
      case GroupDim::Language:
        g["language"] = bug ? to_string(bug->language) : "unknown";
        break;
      case GroupDim::ReasonCategory:
        g["reason_category"] = bug ? to_string(bug->ground_truth_reason.category) : "unknown";
        break;
    }
  }
  if (bug) g["cohort"] = bug->is_variant ? "variants" : "cases";
  return g;
}

std::vector<RateRow> grouped_rates(
    const std::vector<CaseOutcome>& outcomes, const CorpusIndex& index,
    const std::set<GroupDim>& group_by,
    const std::function<bool(const CaseOutcome&, const BugCase*)>& in_numerator,
    bool attempt1_only) {
  struct Bucket {
    long long num = 0;
    long long den = 0;
    int pending = 0;
  };
  std::map<std::map<std::string, std::string>, Bucket> buckets;
  for (const auto& o : outcomes) {
    if (attempt1_only && o.attempt_index != 1) continue;
    const BugCase* bug = index.find(o.case_id);
    Bucket& b = buckets[group_key(o, bug, group_by)];
    b.den += 1;
    if (o.status == OutcomeStatus::PendingAdjudication) b.pending += 1;
    if (in_numerator(o, bug)) b.num += 1;
  }
  std::vector<RateRow> rows;
  for (const auto& [g, b] : buckets) {
    if (b.pending > 0) {
      std::string label;
      for (const auto& [k, v] : g) label += (label.empty() ? "" : " ") + k + "=" + v;
      throw MetricsError("PENDING_OUTCOMES",
                         label + ": " + std::to_string(b.pending) + " pending");
    }
    RateRow row;
    row.group = g;
    row.numerator = b.num;
    row.denominator = b.den;
    row.rate = {b.num, b.den};
    rows.push_back(std::move(row));
  }
  return rows;  // std::map iteration already sorts rows by group values
}

}  // namespace

std::string to_string(GroupDim d) {
  switch (d) {
    case GroupDim::Backend: return "backend";
    case GroupDim::BugKind: return "bug_kind";
    case GroupDim::Language: return "language";
    case GroupDim::ReasonCategory: return "reason_category";
  }
  return "?";
}

std::vector<RateRow> detection_rates(const std::vector<CaseOutcome>& outcomes,
                                     const CorpusIndex& index,
                                     const std::set<GroupDim>& group_by) {
  return grouped_rates(
      outcomes, index, group_by,
      [](const CaseOutcome& o, const BugCase*) { return o.correct; }, true);
}

std::vector<RateRow> incorrect_explanation_rate(const std::vector<CaseOutcome>& outcomes,
                                                const CorpusIndex& index,
                                                const std::set<GroupDim>& group_by) {
  auto bad = [](const CaseOutcome& o, const BugCase* bug) {
    if (!bug) return false;
    if (is_type1(bug->bug_kind))
      return o.decision == VerdictDecision::No && o.failure == FailureReason::BadExplanation;
    return o.decision == VerdictDecision::Yes &&
           (o.failure == FailureReason::OutputNotCompiling ||
            o.failure == FailureReason::MechanicsViolated);
  };
  return grouped_rates(outcomes, index, group_by, bad, true);
}

std::vector<std::pair<double, Percent>> temperature_series(
    const std::vector<std::pair<double, CorrectnessMatrix>>& per_temperature) {
  std::vector<std::pair<double, Percent>> out;
  for (const auto& [t, m] : per_temperature) out.emplace_back(t, pass_at_k(m, 1));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 1; i < out.size(); ++i)
    if (std::fabs(out[i].first - out[i - 1].first) < 1e-9)
      throw MetricsError("DUPLICATE_TEMPERATURE", format_fixed(out[i].first, 3));
  return out;
}

namespace {

const std::vector<std::string> kGroupColumns = {"backend", "bug_kind", "language",
                                                "reason_category", "cohort"};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string rate_table_csv(const std::vector<RateRow>& rows, const std::string& value_col) {
  std::string csv = join(kGroupColumns, ",") + ",numerator,denominator," + value_col + "\n";
  for (const auto& r : rows) {
    std::vector<std::string> cells;
    for (const auto& col : kGroupColumns) {
      auto it = r.group.find(col);
      cells.push_back(it == r.group.end() ? "*" : csv_escape(it->second));
    }
    cells.push_back(std::to_string(r.numerator));
    cells.push_back(std::to_string(r.denominator));
    cells.push_back(r.rate.rounded());
    csv += join(cells, ",") + "\n";
  }
  return csv;
}

nlohmann::json rate_rows_json(const std::vector<RateRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"group", r.group},
                   {"numerator", r.numerator},
                   {"denominator", r.denominator},
                   {"rate", r.rate.rounded()}});
  }
  return arr;
}

}  // namespace

void emit_reports(const fs::path& reports_dir, const ReportBundle& bundle) {
  ensure_dir(reports_dir);

  std::string pass_csv = "backend,cohort,temperature,k,pass_at_k\n";
  std::string cons_csv = "backend,cohort,temperature,k,consistency_at_k\n";
  for (const auto& p : bundle.series) {
    std::string prefix = csv_escape(p.backend) + "," + p.cohort + "," +
                         format_fixed(p.temperature, 3) + "," + std::to_string(p.k) + ",";
    pass_csv += prefix + p.pass.rounded() + "\n";
    cons_csv += prefix + p.consistency.rounded() + "\n";
  }
  write_file_atomic(reports_dir / "pass_at_k.csv", pass_csv);
  write_file_atomic(reports_dir / "consistency_at_k.csv", cons_csv);

  write_file_atomic(reports_dir / "detection_rates.csv",
                    rate_table_csv(bundle.detection, "detection_rate"));

  std::string temp_csv = "backend,cohort,temperature,pass_at_1\n";
  for (const auto& p : bundle.temperature)
    temp_csv += csv_escape(p.backend) + "," + p.cohort + "," +
                format_fixed(p.temperature, 3) + "," + p.pass1.rounded() + "\n";
  write_file_atomic(reports_dir / "temperature.csv", temp_csv);

  nlohmann::json series = nlohmann::json::array();
  for (const auto& p : bundle.series) {
    series.push_back({{"backend", p.backend},
                      {"cohort", p.cohort},
                      {"temperature", format_fixed(p.temperature, 3)},
                      {"k", p.k},
                      {"pass_at_k", p.pass.rounded()},
                      {"pass_at_k_exact", {{"num", p.pass.num}, {"den", p.pass.den}}},
                      {"consistency_at_k", p.consistency.rounded()},
                      {"consistency_at_k_exact",
                       {{"num", p.consistency.num}, {"den", p.consistency.den}}}});
  }
  nlohmann::json temps = nlohmann::json::array();
  for (const auto& p : bundle.temperature)
    temps.push_back({{"backend", p.backend},
                     {"cohort", p.cohort},
                     {"temperature", format_fixed(p.temperature, 3)},
                     {"pass_at_1", p.pass1.rounded()}});
  nlohmann::json doc{{"series", series},
                     {"detection_rates", rate_rows_json(bundle.detection)},
                     {"incorrect_explanation", rate_rows_json(bundle.incorrect_explanation)},
                     {"temperature", temps},
                     {"partial_groups", bundle.partial_groups}};
  if (!bundle.extra.is_null()) doc["extra"] = bundle.extra;
  write_file_atomic(reports_dir / "metrics.json", doc.dump(2) + "\n");
}

}  // namespace sentinel
