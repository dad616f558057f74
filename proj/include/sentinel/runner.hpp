#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sentinel/corpus.hpp"
#include "sentinel/gateway.hpp"
#include "sentinel/metrics.hpp"
#include "sentinel/oracle.hpp"

namespace sentinel {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class RunnerError : public std::runtime_error {
 public:
  RunnerError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  // UNKNOWN_TRIPLE | ALREADY_ADJUDICATED | NOT_ADJUDICABLE
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct RunConfig {
  std::filesystem::path corpus_root;
  bool include_variants = false;
  int loc_cap = kDefaultLocCap;
  CaseSelector selector;
  std::vector<BackendProfile> backends;
  int k = 1;
  std::vector<double> temperatures;  // empty: each backend's default
  int concurrency = 4;
  int per_backend_in_flight = 2;
  int backoff_base_ms = 500;
  std::filesystem::path output_dir;
  std::filesystem::path prompts_dir = "assets/prompts";
  CheckerConfig checkers = CheckerConfig::defaults();

  nlohmann::json to_json() const;  // canonical snapshot content
  void validate() const;           // throws ConfigError
};

RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& file);

struct ItemFailure {
  std::string key;  // case__backend__t<temp>__a<attempt>
  std::string error;
};

struct RunSummary {
  std::filesystem::path run_dir;
  int planned = 0;   // grid size for this invocation
  int executed = 0;  // items newly processed (not resumed-over)
  int decided = 0;   // totals across the whole run directory
  int decided_correct = 0;
  int pending = 0;
  std::vector<ItemFailure> failures;  // this invocation only, not persisted
};

// Executes the case × backend × temperature × attempt grid with per-stage
// persistence. Existing outcome files are skipped, so re-invoking on the
// same output_dir resumes. transport = nullptr uses real HTTP.
RunSummary run(const RunConfig& config, Transport* transport = nullptr);

struct PendingReview {
  std::string case_id;
  std::string backend;
  int attempt_index = 0;
  double temperature = 0.0;
  BugKind bug_kind = BugKind::Type1CompileError;
  std::string verdict_body;
  std::string reason_text;
  ExplanationHint hint;
  std::string note;
};

std::vector<PendingReview> review_list(const std::filesystem::path& run_dir);

struct ReviewKey {
  std::string case_id;
  std::string backend;
  int attempt_index = 1;
  std::optional<double> temperature;  // disambiguates multi-temperature runs
};

// Appends an Adjudication and re-judges every matching Type I outcome.
// Returns the number of outcome files rewritten.
int review_set(const std::filesystem::path& run_dir, const ReviewKey& key, bool correct,
               const std::string& note, bool force);

struct ReportFormats {
  bool csv = true;
  bool json = true;
  bool md = true;
};

// Writes reports/ from persisted outcomes: metrics.json, the four metric
// CSVs, cost.csv, summary.md. Groups with pending outcomes are marked
// partial and excluded from scoring tables.
void report(const std::filesystem::path& run_dir, const ReportFormats& formats = {});

// Outcome filename for one grid item (stable key used for resume).
std::string outcome_file_name(const std::string& case_id, const std::string& backend,
                              double temperature, int attempt_index);

}  // namespace sentinel
