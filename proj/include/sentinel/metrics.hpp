#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sentinel/corpus.hpp"
#include "sentinel/oracle.hpp"

namespace sentinel {

class MetricsError : public std::runtime_error {
 public:
  MetricsError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  // K_OUT_OF_RANGE | PENDING_OUTCOMES | DUPLICATE_TEMPERATURE
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Exact rational percentage: value = num/den × 100. Rounded only at
// presentation, half-up to 1 decimal.
struct Percent {
  long long num = 0;
  long long den = 1;

  double value() const { return den == 0 ? 0.0 : 100.0 * (double)num / (double)den; }
  std::string rounded() const;  // e.g. "71.4"
};

// Per-case correctness bits in recorded attempt order. All rows have k
// attempts; pending counts PENDING_ADJUDICATION outcomes folded in (which
// block scoring until adjudicated).
struct CorrectnessMatrix {
  int n = 0;
  int k = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> rows;
  int pending = 0;

  int correct_count(int row, int first_k) const;
};

// Groups outcomes by case; expects one (backend, temperature) slice with a
// uniform attempt count per case. Ragged inputs throw invalid_argument.
CorrectnessMatrix matrix_from_outcomes(const std::vector<CaseOutcome>& outcomes);

Percent pass_at_k(const CorrectnessMatrix& m, int k);
Percent consistency_at_k(const CorrectnessMatrix& m, int k);

enum class GroupDim { Backend, BugKind, Language, ReasonCategory };

std::string to_string(GroupDim d);

struct RateRow {
  // dimension → value; fixed keys: backend, bug_kind, language,
  // reason_category, cohort. Missing keys render as "*".
  std::map<std::string, std::string> group;
  long long numerator = 0;
  long long denominator = 0;
  Percent rate;
};

// Single-attempt (attempt_index = 1) detection rates per group. Empty groups
// do not appear. Rows sort by group values. Pending outcomes in any group
// throw PENDING_OUTCOMES; callers wanting partial reports filter first.
std::vector<RateRow> detection_rates(const std::vector<CaseOutcome>& outcomes,
                                     const CorpusIndex& index,
                                     const std::set<GroupDim>& group_by);

// Type I share: NO-decisions adjudicated as bad explanations over group
// size. Type II share: YES-decisions whose program failed compile or
// mechanics over group size. Mixed groups sum both numerators.
std::vector<RateRow> incorrect_explanation_rate(const std::vector<CaseOutcome>& outcomes,
                                                const CorpusIndex& index,
                                                const std::set<GroupDim>& group_by);

// Ascending (temperature, pass@1) series. Near-equal temperatures (within
// 1e-9) are duplicates.
std::vector<std::pair<double, Percent>> temperature_series(
    const std::vector<std::pair<double, CorrectnessMatrix>>& per_temperature);

// Everything report emission needs, precomputed by the caller.
struct ReportBundle {
  struct SeriesPoint {
    std::string backend;
    std::string cohort;  // "cases" or "variants"
    double temperature = 0.0;
    int k = 0;
    Percent pass;
    Percent consistency;
  };
  struct TempPoint {
    std::string backend;
    std::string cohort;
    double temperature = 0.0;
    Percent pass1;
  };
  std::vector<SeriesPoint> series;
  std::vector<RateRow> detection;
  std::vector<RateRow> incorrect_explanation;
  std::vector<TempPoint> temperature;
  std::vector<std::string> partial_groups;  // "<group>: N pending" markers
  nlohmann::json extra;                     // cost and run metadata
};

// Writes metrics.json, detection_rates.csv, pass_at_k.csv,
// consistency_at_k.csv, temperature.csv. Byte-deterministic for a fixed
// bundle.
void emit_reports(const std::filesystem::path& reports_dir, const ReportBundle& bundle);

}  // namespace sentinel
