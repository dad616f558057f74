#include "sentinel/runner.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <thread>
#include <tuple>

#include "sentinel/prompt.hpp"
#include "sentinel/toml.hpp"
#include "sentinel/util.hpp"
#include "sentinel/verdict.hpp"

namespace fs = std::filesystem;

namespace sentinel {
using namespace util;

namespace {

std::string temp_tag(double t) { return format_fixed(t, 3); }

nlohmann::json selector_to_json(const CaseSelector& s) {
  nlohmann::json j = nlohmann::json::object();
  if (s.languages) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto l : *s.languages) arr.push_back(to_string(l));
    j["languages"] = arr;
  }
  if (s.bug_kinds) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto b : *s.bug_kinds) arr.push_back(to_string(b));
    j["bug_kinds"] = arr;
  }
  if (s.refactoring_kinds) j["refactoring_kinds"] = *s.refactoring_kinds;
  if (s.ids) j["ids"] = *s.ids;
  return j;
}

CaseSelector selector_from_json(const nlohmann::json& j) {
  CaseSelector s;
  if (j.contains("languages")) {
    std::vector<Language> v;
    for (const auto& e : j["languages"]) {
      auto l = language_from_string(e.get<std::string>());
      if (!l) throw ConfigError("unknown language in selector: " + e.get<std::string>());
      v.push_back(*l);
    }
    s.languages = v;
  }
  if (j.contains("bug_kinds")) {
    std::vector<BugKind> v;
    for (const auto& e : j["bug_kinds"]) {
      auto b = bug_kind_from_string(e.get<std::string>());
      if (!b) throw ConfigError("unknown bug_kind in selector: " + e.get<std::string>());
      v.push_back(*b);
    }
    s.bug_kinds = v;
  }
  if (j.contains("refactoring_kinds"))
    s.refactoring_kinds = j["refactoring_kinds"].get<std::vector<std::string>>();
  if (j.contains("ids")) s.ids = j["ids"].get<std::vector<std::string>>();
  return s;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json backends_json = nlohmann::json::array();
  for (const auto& b : backends) {
    backends_json.push_back(
        {{"name", b.name},
         {"endpoint_url", b.endpoint_url},
         {"api_flavor", to_string(b.api_flavor)},
         {"model_id", b.model_id},
         {"default_temperature", b.default_temperature},
         {"auth_token_env", b.auth_token_env},
         {"rate_card",
          {{"input_cost_per_1k_tokens", b.rate_card.input_cost_per_1k_tokens},
           {"output_cost_per_1k_tokens", b.rate_card.output_cost_per_1k_tokens}}},
         {"max_retries", b.max_retries},
         {"timeout_secs", b.timeout_secs}});
  }
  return {{"corpus",
           {{"root", corpus_root.string()},
            {"include_variants", include_variants},
            {"loc_cap", loc_cap},
            {"selector", selector_to_json(selector)}}},
          {"backends", backends_json},
          {"run",
           {{"k", k},
            {"temperatures", temperatures},
            {"concurrency", concurrency},
            {"per_backend_in_flight", per_backend_in_flight},
            {"backoff_base_ms", backoff_base_ms},
            {"output_dir", output_dir.string()},
            {"prompts_dir", prompts_dir.string()}}},
          {"checkers",
           {{"java", {{"cmd", checkers.java_cmd}}},
            {"python",
             {{"cmd", checkers.python_cmd}, {"typecheck_cmd", checkers.python_typecheck_cmd}}},
            {"c", {{"cmd", checkers.c_cmd}}},
            {"timeout_secs", checkers.timeout_secs}}}};
}

void RunConfig::validate() const {
  if (corpus_root.empty()) throw ConfigError("corpus.root is required");
  if (output_dir.empty()) throw ConfigError("run.output_dir is required");
  if (k < 1) throw ConfigError("run.k must be >= 1");
  if (concurrency < 1) throw ConfigError("run.concurrency must be >= 1");
  if (per_backend_in_flight < 1) throw ConfigError("run.per_backend_in_flight must be >= 1");
  if (backends.empty()) throw ConfigError("at least one [[backends]] entry is required");
  std::set<std::string> names;
  for (const auto& b : backends) {
    auto violations = b.validate();
    if (!violations.empty())
      throw ConfigError("backend '" + b.name + "': " + join(violations, "; "));
    if (!names.insert(b.name).second)
      throw ConfigError("duplicate backend name '" + b.name + "'");
  }
  for (double t : temperatures)
    if (t < 0.0 || t > 1.0)
      throw ConfigError("temperature " + temp_tag(t) + " outside [0,1]");
}

RunConfig run_config_from_json(const nlohmann::json& doc) {
  RunConfig c;
  if (!doc.contains("corpus") || !doc["corpus"].contains("root"))
    throw ConfigError("[corpus] section with root is required");
  const auto& corpus = doc["corpus"];
  c.corpus_root = corpus["root"].get<std::string>();
  c.include_variants = corpus.value("include_variants", false);
  c.loc_cap = corpus.value("loc_cap", kDefaultLocCap);
  if (corpus.contains("selector"))
    c.selector = selector_from_json(corpus["selector"]);
  else
    c.selector = selector_from_json(corpus);  // selector keys inline in [corpus]

  if (!doc.contains("backends") || !doc["backends"].is_array() || doc["backends"].empty())
    throw ConfigError("at least one [[backends]] entry is required");
  for (const auto& b : doc["backends"]) {
    BackendProfile p;
    p.name = b.value("name", "");
    p.endpoint_url = b.value("endpoint_url", "");
    try {
      p.api_flavor = api_flavor_from_string(b.value("api_flavor", "chat_completions"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    p.model_id = b.value("model_id", "");
    p.default_temperature = b.value("default_temperature", 0.0);
    p.auth_token_env = b.value("auth_token_env", "");
    if (b.contains("rate_card")) {
      p.rate_card.input_cost_per_1k_tokens =
          b["rate_card"].value("input_cost_per_1k_tokens", 0.0);
      p.rate_card.output_cost_per_1k_tokens =
          b["rate_card"].value("output_cost_per_1k_tokens", 0.0);
    }
    p.max_retries = b.value("max_retries", 2);
    p.timeout_secs = b.value("timeout_secs", 120);
    c.backends.push_back(std::move(p));
  }

  const auto run = doc.value("run", nlohmann::json::object());
  c.k = run.value("k", 1);
  if (run.contains("temperatures"))
    c.temperatures = run["temperatures"].get<std::vector<double>>();
  c.concurrency = run.value("concurrency", 4);
  c.per_backend_in_flight = run.value("per_backend_in_flight", 2);
  c.backoff_base_ms = run.value("backoff_base_ms", 500);
  c.output_dir = std::string(run.value("output_dir", ""));
  c.prompts_dir = std::string(run.value("prompts_dir", "assets/prompts"));

  const auto checkers = doc.value("checkers", nlohmann::json::object());
  CheckerConfig defaults = CheckerConfig::defaults();
  c.checkers.java_cmd = checkers.value("java", nlohmann::json::object()).value("cmd", defaults.java_cmd);
  c.checkers.python_cmd =
      checkers.value("python", nlohmann::json::object()).value("cmd", defaults.python_cmd);
  c.checkers.python_typecheck_cmd =
      checkers.value("python", nlohmann::json::object()).value("typecheck_cmd", "");
  c.checkers.c_cmd = checkers.value("c", nlohmann::json::object()).value("cmd", defaults.c_cmd);
  c.checkers.timeout_secs = checkers.value("timeout_secs", defaults.timeout_secs);

  c.validate();
  return c;
}

RunConfig load_run_config(const fs::path& file) {
  nlohmann::json doc;
  try {
    doc = parse_toml_file(file);
  } catch (const TomlError& e) {
    throw ConfigError(file.string() + ": " + e.what());
  } catch (const std::exception& e) {
    throw ConfigError(file.string() + ": " + e.what());
  }
  return run_config_from_json(doc);
}

std::string outcome_file_name(const std::string& case_id, const std::string& backend,
                              double temperature, int attempt_index) {
  return sanitize_component(case_id) + "__" + sanitize_component(backend) + "__t" +
         temp_tag(temperature) + "__a" + std::to_string(attempt_index) + ".json";
}

namespace {

struct WorkItem {
  const BugCase* bug = nullptr;
  const BackendProfile* backend = nullptr;
  double temperature = 0.0;
  int attempt = 1;
  fs::path outcome_file;
  std::string key;
};

void tally_outcomes(const fs::path& outcomes_dir, RunSummary& s) {
  s.decided = s.decided_correct = s.pending = 0;
  if (!fs::exists(outcomes_dir)) return;
  for (const auto& entry : fs::directory_iterator(outcomes_dir)) {
    if (entry.path().extension() != ".json") continue;
    CaseOutcome o = CaseOutcome::from_json(nlohmann::json::parse(read_file(entry.path())));
    if (o.status == OutcomeStatus::Decided) {
      ++s.decided;
      if (o.correct) ++s.decided_correct;
    } else {
      ++s.pending;
    }
  }
}

// Loads the immutable snapshot a run directory was created with.
RunConfig load_snapshot(const fs::path& run_dir) {
  fs::path snap = run_dir / "config.snapshot.json";
  if (!fs::exists(snap))
    throw ConfigError("not a run directory (missing config.snapshot.json): " +
                      run_dir.string());
  return run_config_from_json(nlohmann::json::parse(read_file(snap)));
}

std::vector<fs::path> sorted_json_files(const fs::path& dir) {
  std::vector<fs::path> files;
  if (fs::exists(dir))
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

PromptKind kind_for(const BugCase& bug) {
  return is_type1(bug.bug_kind) ? PromptKind::Type1Check : PromptKind::Type2Apply;
}

}  // namespace

RunSummary run(const RunConfig& config, Transport* transport) {
  config.validate();

  LoadReport loaded = load_corpus(config.corpus_root, config.include_variants, config.loc_cap);
  for (const auto& issue : loaded.issues)
    if (issue.code == "DUPLICATE_ID")
      throw ConfigError("corpus: duplicate case id '" + issue.id + "'");
  CorpusIndex index;
  try {
    index = filter_cases(loaded.index, config.selector);
  } catch (const CorpusError& e) {
    throw ConfigError(e.what());
  }
  if (index.cases.empty()) throw ConfigError("case selection matched no cases");

  PromptTemplates templates;
  try {
    templates = PromptTemplates::load(config.prompts_dir);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot load prompt templates: ") + e.what());
  }

  const fs::path dir = config.output_dir;
  ensure_dir(dir);
  const std::string snapshot_text = config.to_json().dump(2) + "\n";
  const fs::path snapshot_file = dir / "config.snapshot.json";
  if (fs::exists(snapshot_file)) {
    if (read_file(snapshot_file) != snapshot_text)
      throw ConfigError("run directory was created with a different config: " +
                        snapshot_file.string());
  } else {
    write_file_atomic(snapshot_file, snapshot_text);
  }
  const fs::path outcomes_dir = dir / "outcomes";
  const fs::path scratch_dir = dir / "scratch";
  ensure_dir(outcomes_dir);
  ensure_dir(dir / "reports");

  std::vector<Adjudication> adjudications = load_adjudications(dir / "adjudications.jsonl");

  std::unique_ptr<Transport> http;
  if (!transport) {
    http = make_http_transport();
    transport = http.get();
  }
  Gateway gateway(dir / "attempts", transport);
  gateway.set_backoff_base_ms(config.backoff_base_ms);

  RunSummary summary;
  summary.run_dir = dir;

  std::vector<WorkItem> items;
  for (const auto& bug : index.cases) {
    for (const auto& backend : config.backends) {
      std::vector<double> temps =
          config.temperatures.empty() ? std::vector<double>{backend.default_temperature}
                                      : config.temperatures;
      for (double t : temps) {
        for (int attempt = 1; attempt <= config.k; ++attempt) {
          ++summary.planned;
          WorkItem item;
          item.bug = &bug;
          item.backend = &backend;
          item.temperature = t;
          item.attempt = attempt;
          item.key = sanitize_component(bug.id) + "__" + sanitize_component(backend.name) +
                     "__t" + temp_tag(t) + "__a" + std::to_string(attempt);
          item.outcome_file = outcomes_dir / outcome_file_name(bug.id, backend.name, t, attempt);
          if (fs::exists(item.outcome_file)) continue;  // resume: stage already persisted
          items.push_back(std::move(item));
        }
      }
    }
  }

  std::mutex mu;
  std::condition_variable slots;
  std::map<std::string, int> in_flight;
  size_t next = 0;
  std::vector<ItemFailure> failures;
  int executed = 0;

  auto process = [&](const WorkItem& item) {
    PromptInstance prompt = render_for_case(*item.bug, templates);
    AttemptRecord rec = gateway.complete(*item.backend, prompt, item.temperature, item.attempt);
    Verdict verdict = parse_verdict(rec.raw_response, kind_for(*item.bug));
    CaseOutcome outcome;
    if (is_type1(item.bug->bug_kind)) {
      const Adjudication* adj =
          find_adjudication(adjudications, item.bug->id, item.backend->name, item.attempt);
      outcome = judge_type1(*item.bug, verdict, adj);
    } else {
      fs::path workspace = scratch_dir / item.key;
      outcome = judge_type2(*item.bug, verdict, workspace, config.checkers);
      std::error_code ec;
      fs::remove_all(workspace, ec);
    }
    outcome.backend = item.backend->name;
    outcome.attempt_index = item.attempt;
    outcome.temperature = item.temperature;
    outcome.request_digest = rec.request_digest;
    write_file_atomic(item.outcome_file, outcome.to_json().dump(2) + "\n");
  };

  auto worker = [&] {
    for (;;) {
      size_t i;
      {
        std::lock_guard<std::mutex> lk(mu);
        if (next >= items.size()) return;
        i = next++;
      }
      const WorkItem& item = items[i];
      {
        std::unique_lock<std::mutex> lk(mu);
        slots.wait(lk, [&] {
          return in_flight[item.backend->name] < config.per_backend_in_flight;
        });
        ++in_flight[item.backend->name];
      }
      try {
        process(item);
        std::lock_guard<std::mutex> lk(mu);
        ++executed;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(mu);
        failures.push_back({item.key, e.what()});
      }
      {
        std::lock_guard<std::mutex> lk(mu);
        --in_flight[item.backend->name];
      }
      slots.notify_all();
    }
  };

  size_t thread_count = std::min<size_t>(config.concurrency, items.size());
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::error_code ec;
  fs::remove_all(scratch_dir, ec);

  summary.executed = executed;
  summary.failures = std::move(failures);
  std::sort(summary.failures.begin(), summary.failures.end(),
            [](const ItemFailure& a, const ItemFailure& b) { return a.key < b.key; });
  tally_outcomes(outcomes_dir, summary);
  return summary;
}

namespace {

struct LoadedOutcome {
  fs::path file;
  CaseOutcome outcome;
};

std::vector<LoadedOutcome> load_outcomes(const fs::path& run_dir) {
  std::vector<LoadedOutcome> out;
  for (const auto& f : sorted_json_files(run_dir / "outcomes"))
    out.push_back({f, CaseOutcome::from_json(nlohmann::json::parse(read_file(f)))});
  return out;
}

std::string verdict_body_for(const fs::path& run_dir, const CaseOutcome& o, PromptKind kind) {
  fs::path attempt_file = run_dir / "attempts" / (o.request_digest + ".json");
  if (!fs::exists(attempt_file)) return "";
  AttemptRecord rec = AttemptRecord::from_json(nlohmann::json::parse(read_file(attempt_file)));
  Verdict v = parse_verdict(rec.raw_response, kind);
  return v.body;
}

}  // namespace

std::vector<PendingReview> review_list(const fs::path& run_dir) {
  RunConfig config = load_snapshot(run_dir);
  LoadReport loaded = load_corpus(config.corpus_root, config.include_variants, config.loc_cap);
  std::vector<PendingReview> out;
  for (const auto& [file, o] : load_outcomes(run_dir)) {
    if (o.status != OutcomeStatus::PendingAdjudication) continue;
    const BugCase* bug = loaded.index.find(o.case_id);
    PendingReview r;
    r.case_id = o.case_id;
    r.backend = o.backend;
    r.attempt_index = o.attempt_index;
    r.temperature = o.temperature;
    r.note = o.note;
    if (bug) {
      r.bug_kind = bug->bug_kind;
      r.reason_text = bug->ground_truth_reason.text;
      r.verdict_body = verdict_body_for(run_dir, o, kind_for(*bug));
      r.hint = suggest_explanation_label(bug->ground_truth_reason.category, r.verdict_body);
    }
    out.push_back(std::move(r));
  }
  return out;
}

int review_set(const fs::path& run_dir, const ReviewKey& key, bool correct,
               const std::string& note, bool force) {
  RunConfig config = load_snapshot(run_dir);
  LoadReport loaded = load_corpus(config.corpus_root, config.include_variants, config.loc_cap);

  std::vector<LoadedOutcome> matches;
  for (auto& lo : load_outcomes(run_dir)) {
    const CaseOutcome& o = lo.outcome;
    if (o.case_id != key.case_id || o.backend != key.backend ||
        o.attempt_index != key.attempt_index)
      continue;
    if (key.temperature && std::abs(o.temperature - *key.temperature) > 1e-9) continue;
    matches.push_back(std::move(lo));
  }
  if (matches.empty())
    throw RunnerError("UNKNOWN_TRIPLE", key.case_id + " / " + key.backend + " / attempt " +
                                            std::to_string(key.attempt_index));

  const BugCase* bug = loaded.index.find(key.case_id);
  if (!bug) throw RunnerError("UNKNOWN_TRIPLE", "case not in corpus: " + key.case_id);
  if (!is_type1(bug->bug_kind))
    throw RunnerError("NOT_ADJUDICABLE",
                      "Type II outcomes are decided by the oracles; delete the outcome file "
                      "and re-run to retry");

  fs::path ledger = run_dir / "adjudications.jsonl";
  std::vector<Adjudication> existing = load_adjudications(ledger);
  if (find_adjudication(existing, key.case_id, key.backend, key.attempt_index) && !force)
    throw RunnerError("ALREADY_ADJUDICATED",
                      "use --force to append an overriding adjudication (both are kept, "
                      "last wins)");

  Adjudication adj;
  adj.case_id = key.case_id;
  adj.backend = key.backend;
  adj.attempt_index = key.attempt_index;
  adj.explanation_correct = correct;
  adj.note = note;
  adj.decided_at = iso_timestamp_now();
  append_adjudication(ledger, adj);

  int rewritten = 0;
  for (const auto& [file, o] : matches) {
    fs::path attempt_file = run_dir / "attempts" / (o.request_digest + ".json");
    if (!fs::exists(attempt_file)) continue;
    AttemptRecord rec =
        AttemptRecord::from_json(nlohmann::json::parse(read_file(attempt_file)));
    Verdict verdict = parse_verdict(rec.raw_response, PromptKind::Type1Check);
    CaseOutcome updated = judge_type1(*bug, verdict, &adj);
    updated.backend = o.backend;
    updated.attempt_index = o.attempt_index;
    updated.temperature = o.temperature;
    updated.request_digest = o.request_digest;
    write_file_atomic(file, updated.to_json().dump(2) + "\n");
    ++rewritten;
  }
  return rewritten;
}

namespace {

struct SliceKey {
  std::string backend;
  std::string temp;
  std::string cohort;

  bool operator<(const SliceKey& other) const {
    return std::tie(backend, temp, cohort) < std::tie(other.backend, other.temp, other.cohort);
  }
};

std::string md_rate_table(const std::vector<RateRow>& rows) {
  std::string md = "| backend | bug kind | cohort | correct | total | rate |\n";
  md += "|---|---|---|---:|---:|---:|\n";
  for (const auto& r : rows) {
    auto get = [&](const char* k) {
      auto it = r.group.find(k);
      return it == r.group.end() ? std::string("*") : it->second;
    };
    md += "| " + get("backend") + " | " + get("bug_kind") + " | " + get("cohort") + " | " +
          std::to_string(r.numerator) + " | " + std::to_string(r.denominator) + " | " +
          r.rate.rounded() + " |\n";
  }
  return md;
}

}  // namespace

void report(const fs::path& run_dir, const ReportFormats& formats) {
  RunConfig config = load_snapshot(run_dir);
  LoadReport loaded = load_corpus(config.corpus_root, config.include_variants, config.loc_cap);
  const CorpusIndex& index = loaded.index;

  std::vector<CaseOutcome> outcomes;
  for (auto& [file, o] : load_outcomes(run_dir)) outcomes.push_back(std::move(o));

  std::map<SliceKey, std::vector<CaseOutcome>> slices;
  for (const auto& o : outcomes) {
    const BugCase* bug = index.find(o.case_id);
    std::string cohort = bug && bug->is_variant ? "variants" : "cases";
    slices[{o.backend, temp_tag(o.temperature), cohort}].push_back(o);
  }

  ReportBundle bundle;
  std::vector<CaseOutcome> scored;  // fully decided slices, attempt 1 scoring pool
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<double, Percent>>>
      temp_points;  // (backend, cohort) → (t, pass1)

  for (const auto& [key, slice] : slices) {
    int pending = 0;
    for (const auto& o : slice)
      if (o.status == OutcomeStatus::PendingAdjudication) ++pending;
    std::string label =
        "backend=" + key.backend + " temperature=" + key.temp + " cohort=" + key.cohort;
    if (pending > 0) {
      bundle.partial_groups.push_back(label + ": " + std::to_string(pending) + " pending");
      continue;
    }
    CorrectnessMatrix matrix;
    try {
      matrix = matrix_from_outcomes(slice);
    } catch (const std::invalid_argument& e) {
      bundle.partial_groups.push_back(label + ": " + e.what());
      continue;
    }
    for (int k = 1; k <= matrix.k; ++k) {
      ReportBundle::SeriesPoint p;
      p.backend = key.backend;
      p.cohort = key.cohort;
      p.temperature = std::stod(key.temp);
      p.k = k;
      p.pass = pass_at_k(matrix, k);
      p.consistency = consistency_at_k(matrix, k);
      bundle.series.push_back(std::move(p));
    }
    temp_points[{key.backend, key.cohort}].emplace_back(std::stod(key.temp),
                                                        pass_at_k(matrix, 1));
    for (const auto& o : slice) scored.push_back(o);
  }

  bundle.detection = detection_rates(scored, index, {GroupDim::Backend});
  auto by_kind = detection_rates(scored, index, {GroupDim::Backend, GroupDim::BugKind});
  bundle.detection.insert(bundle.detection.end(), by_kind.begin(), by_kind.end());

  // union-of-backends rows: a case counts when any backend solved it at
  // attempt 1 (per temperature and cohort)
  std::set<std::string> temps_seen;
  for (const auto& o : scored) temps_seen.insert(temp_tag(o.temperature));
  std::map<std::pair<std::string, std::string>, std::map<std::string, bool>> union_hits;
  for (const auto& o : scored) {
    if (o.attempt_index != 1) continue;
    const BugCase* bug = index.find(o.case_id);
    std::string cohort = bug && bug->is_variant ? "variants" : "cases";
    bool& hit = union_hits[{temp_tag(o.temperature), cohort}][o.case_id];
    hit = hit || o.correct;
  }
  for (const auto& [key, cases] : union_hits) {
    RateRow row;
    row.group["backend"] =
        temps_seen.size() > 1 ? "union@t" + key.first : std::string("union");
    row.group["cohort"] = key.second;
    row.denominator = (long long)cases.size();
    for (const auto& [id, hit] : cases)
      if (hit) ++row.numerator;
    row.rate = {row.numerator, row.denominator};
    bundle.detection.push_back(std::move(row));
  }
  std::sort(bundle.detection.begin(), bundle.detection.end(),
            [](const RateRow& a, const RateRow& b) { return a.group < b.group; });

  bundle.incorrect_explanation =
      incorrect_explanation_rate(scored, index, {GroupDim::Backend, GroupDim::BugKind});

  for (const auto& [bc, points] : temp_points) {
    auto sorted_points = points;
    std::sort(sorted_points.begin(), sorted_points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [t, p] : sorted_points) {
      ReportBundle::TempPoint tp;
      tp.backend = bc.first;
      tp.cohort = bc.second;
      tp.temperature = t;
      tp.pass1 = p;
      bundle.temperature.push_back(std::move(tp));
    }
  }

  // cost accounting over all persisted attempts
  std::vector<AttemptRecord> records;
  for (const auto& f : sorted_json_files(run_dir / "attempts"))
    records.push_back(AttemptRecord::from_json(nlohmann::json::parse(read_file(f))));
  std::map<std::string, RateCard> cards;
  std::map<std::string, BugKind> kinds;
  for (const auto& b : config.backends) cards[b.name] = b.rate_card;
  for (const auto& bug : index.cases) kinds[bug.id] = bug.bug_kind;

  struct TokenSum {
    long long prompt = 0;
    long long completion = 0;
  };
  std::map<std::pair<std::string, std::string>, TokenSum> tokens;  // (backend, kind)
  for (const auto& r : records) {
    auto kind = kinds.find(r.case_id);
    std::string kind_key = kind == kinds.end() ? "UNKNOWN" : to_string(kind->second);
    auto& t = tokens[{r.backend_name, kind_key}];
    t.prompt += r.prompt_tokens;
    t.completion += r.completion_tokens;
  }
  std::string cost_csv = "backend,bug_kind,prompt_tokens,completion_tokens,cost\n";
  nlohmann::json cost_json = nlohmann::json::object();
  double grand_total = 0.0;
  long long grand_prompt = 0, grand_completion = 0;
  std::set<std::string> backend_names;
  for (const auto& r : records) backend_names.insert(r.backend_name);
  for (const auto& name : backend_names) {
    std::vector<AttemptRecord> subset;
    for (const auto& r : records)
      if (r.backend_name == name) subset.push_back(r);
    auto grouped = cost_summary(subset, cards, CostGrouping::ByBugKind, kinds);
    for (const auto& [group, cost] : grouped) {
      if (group == "TOTAL") continue;
      TokenSum t = tokens[{name, group}];
      cost_csv += name + "," + group + "," + std::to_string(t.prompt) + "," +
                  std::to_string(t.completion) + "," +
                  format_fixed(round_half_up(cost, 4), 4) + "\n";
    }
    double total = grouped.at("TOTAL");
    TokenSum all;
    for (const auto& [bk, t] : tokens)
      if (bk.first == name) {
        all.prompt += t.prompt;
        all.completion += t.completion;
      }
    cost_csv += name + ",TOTAL," + std::to_string(all.prompt) + "," +
                std::to_string(all.completion) + "," +
                format_fixed(round_half_up(total, 4), 4) + "\n";
    cost_json[name] = format_fixed(round_half_up(total, 4), 4);
    grand_total += total;
    grand_prompt += all.prompt;
    grand_completion += all.completion;
  }
  cost_csv += "TOTAL,TOTAL," + std::to_string(grand_prompt) + "," +
              std::to_string(grand_completion) + "," +
              format_fixed(round_half_up(grand_total, 4), 4) + "\n";
  cost_json["TOTAL"] = format_fixed(round_half_up(grand_total, 4), 4);
  bundle.extra = {{"cost", cost_json}};

  const fs::path reports_dir = run_dir / "reports";
  emit_reports(reports_dir, bundle);
  write_file_atomic(reports_dir / "cost.csv", cost_csv);

  // summary.md
  int decided = 0, correct = 0, pending = 0;
  for (const auto& o : outcomes) {
    if (o.status == OutcomeStatus::Decided) {
      ++decided;
      if (o.correct) ++correct;
    } else {
      ++pending;
    }
  }
  std::string md = "# Run summary\n\n";
  md += "- run directory: `" + run_dir.filename().string() + "`\n";
  md += "- corpus root: `" + config.corpus_root.string() + "`\n";
  md += "- outcomes: " + std::to_string(outcomes.size()) + " (" + std::to_string(decided) +
        " decided, " + std::to_string(correct) + " correct, " + std::to_string(pending) +
        " pending)\n";
  md += "- total cost: " + format_fixed(round_half_up(grand_total, 4), 4) + "\n\n";
  md += "## Detection rates (attempt 1)\n\n" + md_rate_table(bundle.detection) + "\n";
  if (!bundle.series.empty()) {
    md += "## pass@k / consistency@k\n\n";
    md += "| backend | cohort | temperature | k | pass@k | consistency@k |\n";
    md += "|---|---|---|---:|---:|---:|\n";
    for (const auto& p : bundle.series)
      md += "| " + p.backend + " | " + p.cohort + " | " + format_fixed(p.temperature, 3) +
            " | " + std::to_string(p.k) + " | " + p.pass.rounded() + " | " +
            p.consistency.rounded() + " |\n";
    md += "\n";
  }
  if (!bundle.partial_groups.empty()) {
    md += "## Partial groups (excluded from scoring)\n\n";
    for (const auto& g : bundle.partial_groups) md += "- " + g + "\n";
    md += "\n";
  }
  write_file_atomic(reports_dir / "summary.md", md);

  if (!formats.json) {
    std::error_code ec;
    fs::remove(reports_dir / "metrics.json", ec);
  }
  if (!formats.csv) {
    std::error_code ec;
    for (const char* f : {"pass_at_k.csv", "consistency_at_k.csv", "detection_rates.csv",
                          "temperature.csv", "cost.csv"})
      fs::remove(reports_dir / f, ec);
  }
  if (!formats.md) {
    std::error_code ec;
    fs::remove(reports_dir / "summary.md", ec);
  }
}

}  // namespace sentinel
