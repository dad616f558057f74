#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "sentinel/corpus.hpp"
#include "sentinel/metamorph.hpp"
#include "sentinel/runner.hpp"
#include "sentinel/util.hpp"

namespace fs = std::filesystem;
using namespace sentinel;
using namespace sentinel::util;

namespace {

constexpr int kOk = 0;
constexpr int kFatal = 1;        // config/corpus errors
constexpr int kItemFailures = 2; // run completed but some items failed

int cmd_run(const std::string& config_file, const std::string& resume_dir) {
  try {
    RunConfig config = load_run_config(config_file);
    if (!resume_dir.empty()) config.output_dir = resume_dir;
    RunSummary s = run(config);
    std::cout << "run directory: " << s.run_dir.string() << "\n"
              << "planned items: " << s.planned << " (executed now: " << s.executed << ")\n"
              << "decided: " << s.decided << " (" << s.decided_correct << " correct)\n"
              << "pending adjudication: " << s.pending << "\n";
    if (!s.failures.empty()) {
      std::cout << "failed items: " << s.failures.size() << "\n";
      for (const auto& f : s.failures)
        std::cout << "  " << f.key << ": " << f.error << "\n";
      return kItemFailures;
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFatal;
  }
}

int cmd_review_list(const std::string& run_dir) {
  try {
    auto pending = review_list(run_dir);
    if (pending.empty()) {
      std::cout << "no outcomes pending adjudication\n";
      return kOk;
    }
    for (const auto& p : pending) {
      std::cout << "--- " << p.case_id << " / " << p.backend << " / attempt "
                << p.attempt_index << " (t=" << format_fixed(p.temperature, 3) << ")\n";
      std::cout << "ground truth: " << p.reason_text << "\n";
      if (p.hint.suggestion)
        std::cout << "heuristic hint: " << (*p.hint.suggestion ? "likely correct" : "likely incorrect")
                  << " (cues: " << join(p.hint.cues, ", ") << ")\n";
      if (!p.note.empty()) std::cout << "note: " << p.note << "\n";
      std::cout << "model explanation:\n"
                << (p.verdict_body.empty() ? "(empty)" : p.verdict_body) << "\n\n";
    }
    std::cout << pending.size() << " outcome(s) pending\n";
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFatal;
  }
}

int cmd_review_set(const std::string& run_dir, const ReviewKey& key, bool correct,
                   bool incorrect, const std::string& notes, bool force) {
  if (correct == incorrect) {
    std::cerr << "error: exactly one of --correct / --incorrect is required\n";
    return kFatal;
  }
  try {
    int n = review_set(run_dir, key, correct, notes, force);
    std::cout << "adjudication recorded; " << n << " outcome(s) re-judged\n";
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFatal;
  }
}

int cmd_report(const std::string& run_dir, const std::string& formats_csv) {
  try {
    ReportFormats formats;
    if (!formats_csv.empty()) {
      formats = {false, false, false};
      for (const auto& f : split(formats_csv, ',')) {
        std::string v = to_lower(trim(f));
        if (v == "csv") formats.csv = true;
        else if (v == "json") formats.json = true;
        else if (v == "md") formats.md = true;
        else {
          std::cerr << "error: unknown format '" << v << "' (expected csv, json, md)\n";
          return kFatal;
        }
      }
    }
    report(run_dir, formats);
    std::cout << "reports written to " << (fs::path(run_dir) / "reports").string() << "\n";
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFatal;
  }
}

int cmd_variants_generate(const std::string& corpus_root, long long seed,
                          const std::string& scopes_csv, const std::vector<std::string>& ids,
                          bool verify, const std::string& workspace) {
  try {
    std::set<RenameScope> scopes = parse_scopes(scopes_csv);
    if (scopes.empty()) {
      std::cerr << "error: --scope must name at least one of "
                   "variables,methods,classes,packages,numbers\n";
      return kFatal;
    }
    LoadReport loaded = load_corpus(corpus_root);
    CaseSelector selector;
    if (!ids.empty()) selector.ids = ids;
    CorpusIndex index = filter_cases(loaded.index, selector);
    if (index.cases.empty()) {
      std::cerr << "error: no cases selected\n";
      return kFatal;
    }
    CheckerConfig checkers = CheckerConfig::defaults();
    int failures = 0;
    for (const auto& bug : index.cases) {
      try {
        MetamorphicVariant v = generate_variant(bug, seed, scopes);
        if (verify) {
          fs::path ws = fs::path(workspace) / v.variant_id;
          v = verify_variant(std::move(v), bug, ws, checkers);
          std::error_code ec;
          fs::remove_all(ws, ec);
        }
        persist_variant(corpus_root, v);
        std::cout << v.variant_id << (verify ? (v.verified ? " [verified]" : " [UNVERIFIED]")
                                             : "")
                  << "\n";
        if (verify && !v.verified) ++failures;
      } catch (const MetamorphError& e) {
        std::cerr << bug.id << ": " << e.what() << "\n";
        ++failures;
      }
    }
    return failures == 0 ? kOk : kItemFailures;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFatal;
  }
}

int cmd_corpus_validate(const std::string& root) {
  try {
    LoadReport loaded = load_corpus(root, true);
    for (const auto& issue : loaded.issues)
      std::cout << issue.code << " " << issue.file
                << (issue.id.empty() ? "" : " (" + issue.id + ")") << ": " << issue.reason
                << "\n";
    for (const auto& w : loaded.warnings)
      std::cout << "warning " << w.code << ": " << w.detail << "\n";
    const auto& index = loaded.index;
    std::cout << index.cases.size() << " case(s) loaded";
    if (!index.cases.empty()) {
      std::cout << " (";
      bool first = true;
      for (const auto& [key, count] : index.counts) {
        if (!first) std::cout << ", ";
        first = false;
        std::cout << to_string(key.first) << "/" << to_string(key.second) << ": " << count;
      }
      std::cout << ")";
    }
    std::cout << "\n";
    return loaded.issues.empty() ? kOk : kFatal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFatal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"refactoring-bug detection harness for LLM backends"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "execute a case × backend × attempt grid");
  std::string config_file;
  std::string resume_dir;
  run_cmd->add_option("--config", config_file, "run config (TOML)")->required();
  run_cmd->add_option("--resume", resume_dir, "existing run directory to resume into");

  // review
  auto* review_cmd = app.add_subcommand("review", "adjudicate pending explanations");
  review_cmd->require_subcommand(1);
  auto* review_list_cmd = review_cmd->add_subcommand("list", "show pending outcomes");
  std::string review_run_dir;
  review_list_cmd->add_option("run_dir", review_run_dir, "run directory")->required();
  auto* review_set_cmd = review_cmd->add_subcommand("set", "record an adjudication");
  std::string set_run_dir;
  ReviewKey key;
  bool correct = false, incorrect = false, force = false;
  double temperature_opt = -1.0;
  std::string notes;
  review_set_cmd->add_option("run_dir", set_run_dir, "run directory")->required();
  review_set_cmd->add_option("--case", key.case_id, "case id")->required();
  review_set_cmd->add_option("--backend", key.backend, "backend name")->required();
  review_set_cmd->add_option("--attempt", key.attempt_index, "attempt index (1-based)")
      ->required();
  review_set_cmd->add_option("--temperature", temperature_opt,
                             "disambiguate multi-temperature runs");
  review_set_cmd->add_flag("--correct", correct, "explanation identifies the failure");
  review_set_cmd->add_flag("--incorrect", incorrect, "explanation is wrong");
  review_set_cmd->add_option("--notes", notes, "reviewer note");
  review_set_cmd->add_flag("--force", force, "override an existing adjudication");

  // report
  auto* report_cmd = app.add_subcommand("report", "emit metrics and cost reports");
  std::string report_run_dir, formats_csv;
  report_cmd->add_option("run_dir", report_run_dir, "run directory")->required();
  report_cmd->add_option("--format", formats_csv, "comma list of csv,json,md (default all)");

  // variants
  auto* variants_cmd = app.add_subcommand("variants", "metamorphic variant tools");
  variants_cmd->require_subcommand(1);
  auto* gen_cmd = variants_cmd->add_subcommand("generate", "generate renamed variants");
  std::string var_corpus = "corpus";
  long long seed = 1;
  std::string scopes_csv = "classes";
  std::vector<std::string> var_ids;
  bool verify = true;
  std::string var_workspace = ".sentinel-scratch";
  gen_cmd->add_option("--corpus", var_corpus, "corpus root (default: corpus)");
  gen_cmd->add_option("--seed", seed, "deterministic seed")->required();
  gen_cmd->add_option("--scope", scopes_csv,
                      "comma list of variables,methods,classes,packages,numbers");
  gen_cmd->add_option("--ids", var_ids, "restrict to these case ids");
  gen_cmd->add_flag("--verify,!--no-verify", verify,
                    "check variant oracle statuses against the parent (default on)");
  gen_cmd->add_option("--workspace", var_workspace, "scratch dir for verification");

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "corpus utilities");
  corpus_cmd->require_subcommand(1);
  auto* validate_cmd = corpus_cmd->add_subcommand("validate", "validate all case documents");
  std::string corpus_root;
  validate_cmd->add_option("root", corpus_root, "corpus root")->required();

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) return cmd_run(config_file, resume_dir);
  if (review_list_cmd->parsed()) return cmd_review_list(review_run_dir);
  if (review_set_cmd->parsed()) {
    if (temperature_opt >= 0.0) key.temperature = temperature_opt;
    return cmd_review_set(set_run_dir, key, correct, incorrect, notes, force);
  }
  if (report_cmd->parsed()) return cmd_report(report_run_dir, formats_csv);
  if (gen_cmd->parsed())
    return cmd_variants_generate(var_corpus, seed, scopes_csv, var_ids, verify, var_workspace);
  if (validate_cmd->parsed()) return cmd_corpus_validate(corpus_root);
  return kFatal;
}
