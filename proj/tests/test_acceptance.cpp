// Acceptance gate: one test per criterion, each printing a single
// "criterion N: PASS|FAIL" line so the suite output doubles as a checklist.

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sentinel/corpus.hpp"
#include "sentinel/gateway.hpp"
#include "sentinel/lexer.hpp"
#include "sentinel/metamorph.hpp"
#include "sentinel/metrics.hpp"
#include "sentinel/oracle.hpp"
#include "sentinel/runner.hpp"
#include "sentinel/util.hpp"
#include "sentinel/verdict.hpp"
#include "test_support.hpp"

namespace sentinel {
namespace {

namespace fs = std::filesystem;
using testsup::TempDir;
using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

class AcceptanceTest : public ::testing::Test {
 protected:
  void TearDown() override {
    const auto* result = ::testing::UnitTest::GetInstance()->current_test_info()->result();
    std::string status = "PASS";
    if (HasFailure())
      status = "FAIL";
    else if (result->Skipped())
      status = "PASS (skipped: no live endpoint configured)";
    std::cout << "criterion " << current_ << ": " << status << std::endl;
  }

  int current_ = 0;
};

// ---- shared fixture programs ------------------------------------------------

// The query program after a correct Pull Up Method of doQuery into Query.
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

// The shadowing program after a correct Push Down Field of A.f into C.
std::vector<SourceUnit> pushed_down_field_units(bool field_left_in_a) {
  std::string a = field_left_in_a ? "public class A {\n  private int f = 0;\n}\n"
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

// The shapes program after a correct Push Down Method of area into Circle.
std::vector<SourceUnit> pushed_down_area_units() {
  return {{"Shape.java",
           "public class Shape {\n"
           "}\n"
           "public class Circle extends Shape {\n"
           "  public double radius() {\n"
           "    return 2.0;\n"
           "  }\n"
           "  public double area() {\n"
           "    return 0.0;\n"
           "  }\n"
           "}\n"
           "public class Square extends Shape {\n"
           "}\n"}};
}

std::string fenced_yes(const std::vector<SourceUnit>& units) {
  std::string out = "YES\n```java\n";
  for (const auto& u : units) out += u.text;
  out += "```\n";
  return out;
}

// ---- mock model used by the end-to-end criteria -----------------------------

struct MockReply {
  const char* needle;  // unique prompt substring identifying the case
  bool correct_first;  // attempt 1 gets the correct reply when true
  std::string correct;
  std::string wrong;
};

std::vector<MockReply> mock_replies() {
  return {
      {"super.k()", true,
       "NO\nMoving B.m down changes behavior: inside C, super.k() resolves to B.k, so main "
       "prints 20 instead of the original 10.\n",
       "YES\n"},
      {"A.this.m", false,
       "NO\nThe rewritten call A.this.m(\"1\") does not compile because m was renamed to "
       "concat.\n",
       "YES\n"},
      {"welcome", false,
       "NO\nThe call g.greet() still targets the old name, so it raises AttributeError at "
       "runtime.\n",
       "YES\n"},
      {"continue =", true,
       "NO\ncontinue is a reserved keyword, so the assignment is a syntax error and the file "
       "does not compile.\n",
       "YES\n"},
      {"newFunction", true,
       "NO\nnewFunction is declared const char but returns a string literal, which is a "
       "compile error.\n",
       "YES\n"},
      {"doQuery", true, fenced_yes(pulled_up_query_units()),
       "NO\nThe refactoring cannot be applied.\n"},
      {"A.f to class C", true, fenced_yes(pushed_down_field_units(false)),
       "NO\nThe refactoring cannot be applied.\n"},
      {"area from Shape", false, fenced_yes(pushed_down_area_units()),
       "NO\nThe refactoring cannot be applied.\n"},
  };
}

// Replies per (prompt, nth occurrence): exactly one correct and one incorrect
// response per fixture case, in the order the table prescribes. Failed posts
// never reach the responder, so interruption does not skew the mapping.
class MockModel {
 public:
  std::string operator()(const nlohmann::json& body) {
    const std::string content = body.at("messages").at(0).at("content").get<std::string>();
    int nth;
    {
      std::lock_guard<std::mutex> lock(mu_);
      nth = seen_[content]++;
    }
    for (const auto& r : table_) {
      if (content.find(r.needle) == std::string::npos) continue;
      return (nth == 0) == r.correct_first ? r.correct : r.wrong;
    }
    ADD_FAILURE() << "no scripted reply matches the prompt";
    return "UNPARSEABLE";
  }

 private:
  std::vector<MockReply> table_ = mock_replies();
  std::mutex mu_;
  std::map<std::string, int> seen_;
};

RunConfig mock_config(const fs::path& out_dir) {
  BackendProfile b;
  b.name = "mock-a";
  b.endpoint_url = "http://mock-a.test/v1";
  b.api_flavor = ApiFlavor::ChatCompletions;
  b.model_id = "model-a";
  b.default_temperature = 0.0;
  b.rate_card.input_cost_per_1k_tokens = 0.10;
  b.rate_card.output_cost_per_1k_tokens = 0.20;
  b.max_retries = 0;
  b.timeout_secs = 5;

  RunConfig c;
  c.corpus_root = testsup::corpus_dir();
  c.backends = {b};
  c.k = 2;
  c.temperatures = {0.0};
  c.concurrency = 1;  // keeps the nth-reply mapping deterministic
  c.backoff_base_ms = 0;
  c.output_dir = out_dir;
  c.prompts_dir = testsup::prompts_dir();
  c.checkers.java_cmd = kBuiltinJavaChecker;  // no JDK required
  return c;
}

// The NO-answering attempt of each Type I case, as scripted above.
std::vector<ReviewKey> scripted_adjudication_keys() {
  return {{"java-pushdown-method-behavior", "mock-a", 1, std::nullopt},
          {"java-rename-method-supercall", "mock-a", 2, std::nullopt},
          {"python-rename-method-missed-call", "mock-a", 2, std::nullopt},
          {"python-rename-variable-keyword", "mock-a", 1, std::nullopt},
          {"c-extract-function-return", "mock-a", 1, std::nullopt}};
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file())
      out[fs::relative(e.path(), dir).string()] = util::read_file(e.path());
  return out;
}

// Attempt files keyed by name with the only wall-clock field zeroed out.
std::map<std::string, std::string> attempts_masked(const fs::path& attempts_dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(attempts_dir)) {
    if (e.path().extension() != ".json") continue;
    nlohmann::json j = nlohmann::json::parse(util::read_file(e.path()));
    j["latency_ms"] = 0;
    out[e.path().filename().string()] = j.dump(2);
  }
  return out;
}

RewriteMaps inverse_of(const RenamePlan& plan) {
  RewriteMaps inv;
  for (const auto& [from, to] : plan.identifier_map) inv.identifiers[to] = from;
  for (const auto& [from, to] : plan.literal_map) inv.literals[to] = from;
  for (const auto& name : plan.class_targets)
    inv.path_stems.insert(plan.identifier_map.at(name));
  for (const auto& name : plan.package_targets)
    inv.path_components.insert(plan.identifier_map.at(name));
  return inv;
}

// ---- criteria ---------------------------------------------------------------

TEST_F(AcceptanceTest, Criterion01MetricsMatchDirectEnumeration) {
  current_ = 1;
  const auto start = Clock::now();

  std::mt19937 rng(912026);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int trial = 0; trial < 1000; ++trial) {
    CorrectnessMatrix m;
    m.n = 1 + (int)(rng() % 20);
    m.k = 1 + (int)(rng() % 10);
    m.labels.resize(m.n);
    m.rows.resize(m.n);
    std::bernoulli_distribution coin(unit(rng));
    for (int i = 0; i < m.n; ++i) {
      m.labels[i] = "case-" + std::to_string(i);
      m.rows[i].resize(m.k);
      for (int j = 0; j < m.k; ++j) m.rows[i][j] = coin(rng);
    }

    double prev_pass = -1.0;
    for (int k = 1; k <= m.k; ++k) {
      Percent pass = pass_at_k(m, k);
      Percent cons = consistency_at_k(m, k);

      // direct per-definition enumeration over the first k attempts
      int detected = 0;
      double cons_sum = 0.0;
      for (int i = 0; i < m.n; ++i) {
        int c = 0;
        for (int j = 0; j < k; ++j) c += m.rows[i][j] ? 1 : 0;
        if (c >= 1) ++detected;
        cons_sum += (double)c / k;
      }
      ASSERT_NEAR(pass.value(), 100.0 * detected / m.n, 1e-9);
      ASSERT_NEAR(cons.value(), 100.0 * cons_sum / m.n, 1e-9);

      if (k == 1) {
        ASSERT_DOUBLE_EQ(pass.value(), cons.value());
        ASSERT_EQ(pass.rounded(), cons.rounded());
      }
      ASSERT_GE(pass.value(), prev_pass - 1e-12);       // non-decreasing in k
      ASSERT_LE(cons.value(), pass.value() + 1e-12);    // consistency bounds pass
      prev_pass = pass.value();
    }
  }

  EXPECT_LT(ms_since(start), 5000);
}

TEST_F(AcceptanceTest, Criterion02WorkedExampleReproduces) {
  current_ = 2;
  CorrectnessMatrix m;
  m.n = 2;
  m.k = 3;
  m.labels = {"case-a", "case-b"};
  m.rows = {{true, true, false}, {false, false, false}};

  Percent pass = pass_at_k(m, 3);
  Percent cons = consistency_at_k(m, 3);
  EXPECT_DOUBLE_EQ(pass.value(), 50.0);
  EXPECT_EQ(pass.rounded(), "50.0");
  EXPECT_NEAR(cons.value(), 100.0 / 3.0, 1e-12);
  EXPECT_EQ(cons.rounded(), "33.3");
}

TEST_F(AcceptanceTest, Criterion03CompileOracleFixtures) {
  current_ = 3;
  const CheckerConfig checkers = CheckerConfig::defaults();
  TempDir td("sentinel-acceptance-compile");

  BugCase behavior = testsup::load_fixture_case("java-pushdown-method-behavior");
  BugCase keyword = testsup::load_fixture_case("python-rename-variable-keyword");
  BugCase extracted = testsup::load_fixture_case("c-extract-function-return");
  ASSERT_TRUE(behavior.after && keyword.after && extracted.after);

  struct Check {
    const char* label;
    Language lang;
    std::vector<SourceUnit> units;
    bool want_ok;
  };
  const std::vector<Check> checks = {
      {"push-down original", Language::Java, behavior.before, true},
      {"push-down transformed", Language::Java, *behavior.after, true},
      {"keyword-renamed python", Language::Python, *keyword.after, false},
      {"extracted-function c", Language::C, *extracted.after, false},
      {"pulled-up query", Language::Java, pulled_up_query_units(), true},
  };
  int i = 0;
  for (const auto& c : checks) {
    const auto start = Clock::now();
    CompileResult r = check_static(c.lang, c.units, td.path / std::to_string(i++), checkers);
    EXPECT_EQ(r.ok, c.want_ok) << c.label << "\n" << r.output;
    EXPECT_LT(ms_since(start), 30000) << c.label;
  }
}

TEST_F(AcceptanceTest, Criterion04MechanicsFixtures) {
  current_ = 4;

  BugCase query = testsup::load_fixture_case("java-pullup-method-query");
  EXPECT_TRUE(check_mechanics(query, pulled_up_query_units()).ok);
  EXPECT_FALSE(check_mechanics(query, query.before).ok);  // nothing was pulled up

  BugCase shadow = testsup::load_fixture_case("java-pushdown-field-shadow");
  EXPECT_TRUE(check_mechanics(shadow, pushed_down_field_units(false)).ok);
  EXPECT_FALSE(check_mechanics(shadow, pushed_down_field_units(true)).ok);
}

TEST_F(AcceptanceTest, Criterion05GoldenTranscriptsParseDeterministically) {
  current_ = 5;

  struct Golden {
    const char* file;
    PromptKind kind;
    VerdictDecision decision;
    DecisionSource source;
    int unit_count;
  };
  const std::vector<Golden> table = {
      {"t01_exact_yes.txt", PromptKind::Type1Check, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, 0},
      {"t02_exact_no_explained.txt", PromptKind::Type1Check, VerdictDecision::No,
       DecisionSource::ExactFirstLine, 0},
      {"t03_decorated_no.txt", PromptKind::Type1Check, VerdictDecision::No,
       DecisionSource::ExactFirstLine, 0},
      {"t04_preamble_recovery.txt", PromptKind::Type1Check, VerdictDecision::No,
       DecisionSource::Recovered, 0},
      {"t05_reasoning_block_no.txt", PromptKind::Type1Check, VerdictDecision::No,
       DecisionSource::ExactFirstLine, 0},
      {"t06_reasoning_block_yes.txt", PromptKind::Type1Check, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, 0},
      {"t07_yes_fenced_code.txt", PromptKind::Type2Apply, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, 1},
      {"t08_yes_file_headers.txt", PromptKind::Type2Apply, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, 2},
      {"t09_fragmented_code_prose.txt", PromptKind::Type2Apply, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, 1},
      {"t10_empty.txt", PromptKind::Type1Check, VerdictDecision::Unparseable,
       DecisionSource::None, 0},
      {"t11_whitespace_only.txt", PromptKind::Type1Check, VerdictDecision::Unparseable,
       DecisionSource::None, 0},
      {"t12_unparseable_prose.txt", PromptKind::Type1Check, VerdictDecision::Unparseable,
       DecisionSource::None, 0},
      {"t13_mixed_sentence_yes.txt", PromptKind::Type1Check, VerdictDecision::Unparseable,
       DecisionSource::None, 0},
      {"t14_late_no_beyond_window.txt", PromptKind::Type1Check, VerdictDecision::Unparseable,
       DecisionSource::None, 0},
      {"t15_competing_tokens.txt", PromptKind::Type1Check, VerdictDecision::Yes,
       DecisionSource::Recovered, 0},
      {"t16_yes_without_code.txt", PromptKind::Type2Apply, VerdictDecision::Yes,
       DecisionSource::ExactFirstLine, 0},
  };
  ASSERT_GE(table.size(), 12u);

  for (const auto& g : table) {
    SCOPED_TRACE(g.file);
    const std::string raw =
        util::read_file(testsup::data_dir() / "transcripts" / g.file);
    Verdict first = parse_verdict(raw, g.kind);
    Verdict second = parse_verdict(raw, g.kind);

    EXPECT_EQ(first.decision, g.decision);
    EXPECT_EQ(first.decision_source, g.source);
    EXPECT_EQ((int)first.extracted_units.size(), g.unit_count);

    // deterministic: a second parse reproduces every field
    EXPECT_EQ(second.decision, first.decision);
    EXPECT_EQ(second.decision_source, first.decision_source);
    EXPECT_EQ(second.body, first.body);
    EXPECT_EQ(second.reasoning_stripped, first.reasoning_stripped);
    EXPECT_EQ(second.extracted_units, first.extracted_units);
  }
}

TEST_F(AcceptanceTest, Criterion06MockReplayMatchesHandCounts) {
  current_ = 6;
  TempDir td("sentinel-acceptance-replay");
  MockModel model;
  ScriptedTransport transport([&model](const nlohmann::json& b) { return model(b); });
  RunConfig config = mock_config(td.path / "run");

  RunSummary s = run(config, &transport);
  EXPECT_EQ(s.planned, 16);  // 8 fixture cases x 2 attempts
  EXPECT_EQ(s.executed, 16);
  EXPECT_TRUE(s.failures.empty());
  EXPECT_EQ(s.decided, 11);
  EXPECT_EQ(s.decided_correct, 3);  // the three faithful Type II programs
  EXPECT_EQ(s.pending, 5);          // one NO per Type I case awaits a human

  for (const auto& key : scripted_adjudication_keys())
    EXPECT_EQ(review_set(config.output_dir, key, true, "matches the ground-truth reason",
                         false),
              1)
        << key.case_id;
  EXPECT_TRUE(review_list(config.output_dir).empty());

  report(config.output_dir);
  // hand counts: attempt-1 correctness per case is behavior yes, supercall no,
  // missed-call no, keyword yes, extract yes, query yes, shadow yes, area no
  EXPECT_EQ(util::read_file(config.output_dir / "reports/detection_rates.csv"),
            "backend,bug_kind,language,reason_category,cohort,numerator,denominator,"
            "detection_rate\n"
            "mock-a,type1_behavior_change,*,*,cases,1,1,100.0\n"
            "mock-a,type1_compile_error,*,*,cases,2,3,66.7\n"
            "mock-a,type1_runtime_error,*,*,cases,0,1,0.0\n"
            "mock-a,type2_blocked_valid,*,*,cases,2,3,66.7\n"
            "mock-a,*,*,*,cases,5,8,62.5\n"
            "union,*,*,*,cases,5,8,62.5\n");

  auto first = dir_contents(config.output_dir / "reports");
  report(config.output_dir);
  EXPECT_EQ(first, dir_contents(config.output_dir / "reports"));
}

TEST_F(AcceptanceTest, Criterion07MetamorphicInvariance) {
  current_ = 7;
  const auto start = Clock::now();
  const std::set<RenameScope> all_scopes = {RenameScope::Variables, RenameScope::Methods,
                                            RenameScope::Classes, RenameScope::Packages,
                                            RenameScope::Numbers};
  const CheckerConfig checkers = CheckerConfig::defaults();
  TempDir td("sentinel-acceptance-meta");

  const std::vector<std::string> fixtures = {
      "java-pushdown-method-behavior", "java-pullup-method-query",
      "python-rename-variable-keyword", "c-extract-function-return"};
  for (const auto& id : fixtures) {
    BugCase parent = testsup::load_fixture_case(id);
    for (long long seed = 1; seed <= 5; ++seed) {
      SCOPED_TRACE(id + " seed " + std::to_string(seed));
      MetamorphicVariant v = generate_variant(parent, seed, all_scopes);

      // fresh names are legal identifiers, never language keywords
      for (const auto& [from, to] : v.plan.identifier_map) {
        EXPECT_TRUE(is_valid_identifier(parent.language, to)) << to;
        EXPECT_FALSE(is_reserved_word(parent.language, to)) << to;
      }

      // oracle statuses match the parent's
      v = verify_variant(std::move(v), parent,
                         td.path / (id + "-s" + std::to_string(seed)), checkers);
      EXPECT_TRUE(v.verified);

      // inverse round-trip restores the parent byte for byte
      RewriteMaps inv = inverse_of(v.plan);
      EXPECT_EQ(rewrite_units(parent.language, v.bug.before, inv), parent.before);
      if (parent.after) {
        ASSERT_TRUE(v.bug.after.has_value());
        EXPECT_EQ(rewrite_units(parent.language, *v.bug.after, inv), *parent.after);
      }
      if (parent.refactoring_params) {
        ASSERT_TRUE(v.bug.refactoring_params.has_value());
        EXPECT_EQ(rewrite_words(*v.bug.refactoring_params, inv.identifiers),
                  *parent.refactoring_params);
      }
    }
  }

  EXPECT_LT(ms_since(start), 120000);
}

TEST_F(AcceptanceTest, Criterion08LiveSmoke) {
  current_ = 8;
  const char* endpoint = std::getenv("SENTINEL_LIVE_ENDPOINT");
  const char* model = std::getenv("SENTINEL_LIVE_MODEL");
  if (!endpoint || !*endpoint || !model || !*model)
    GTEST_SKIP() << "set SENTINEL_LIVE_ENDPOINT and SENTINEL_LIVE_MODEL to run the live smoke";

  TempDir td("sentinel-acceptance-live");
  RunConfig config = mock_config(td.path / "run");
  BackendProfile& b = config.backends[0];
  b.name = "live";
  b.endpoint_url = endpoint;
  b.model_id = model;
  if (const char* flavor = std::getenv("SENTINEL_LIVE_FLAVOR"))
    b.api_flavor = api_flavor_from_string(flavor);
  if (const char* token_env = std::getenv("SENTINEL_LIVE_TOKEN_ENV"))
    b.auth_token_env = token_env;
  b.max_retries = 2;
  b.timeout_secs = 120;
  config.k = 1;
  config.selector.ids = std::vector<std::string>{
      "java-pushdown-method-behavior", "java-rename-method-supercall",
      "java-pullup-method-query", "python-rename-variable-keyword",
      "c-extract-function-return"};

  RunSummary s = run(config, nullptr);  // real HTTP
  EXPECT_EQ(s.planned, 5);
  EXPECT_EQ(s.executed, 5);
  EXPECT_TRUE(s.failures.empty());

  int records = 0;
  for (const auto& e : fs::directory_iterator(config.output_dir / "attempts")) {
    if (e.path().extension() != ".json") continue;
    AttemptRecord r = AttemptRecord::from_json(nlohmann::json::parse(util::read_file(e.path())));
    EXPECT_FALSE(r.raw_response.empty());
    EXPECT_GT(r.prompt_tokens, 0);
    EXPECT_GE(r.completion_tokens, 0);
    ++records;
  }
  EXPECT_EQ(records, 5);

  report(config.output_dir);
  for (const char* f : {"metrics.json", "pass_at_k.csv", "consistency_at_k.csv",
                        "detection_rates.csv", "temperature.csv", "cost.csv", "summary.md"})
    EXPECT_TRUE(fs::exists(config.output_dir / "reports" / f)) << f;
}

TEST_F(AcceptanceTest, Criterion09CostAccounting) {
  current_ = 9;
  const std::map<std::string, RateCard> cards = {{"mock-a", {0.10, 0.20}}};

  AttemptRecord reference;
  reference.case_id = "a";
  reference.backend_name = "mock-a";
  reference.prompt_tokens = 1000;
  reference.completion_tokens = 1000;
  auto total = cost_summary({reference}, cards, CostGrouping::Total);
  EXPECT_NEAR(total.at("TOTAL"), 0.30, 1e-12);
  EXPECT_EQ(util::format_fixed(util::round_half_up(total.at("TOTAL"), 4), 4), "0.3000");

  // BY_BUG_KIND subtotals (including the UNKNOWN bucket) sum to TOTAL
  AttemptRecord r1 = reference;  // -> type1_behavior_change
  AttemptRecord r2 = reference;
  r2.case_id = "b";  // -> type2_blocked_valid
  r2.prompt_tokens = 500;
  r2.completion_tokens = 250;
  AttemptRecord r3 = reference;
  r3.case_id = "unmapped";  // -> UNKNOWN
  r3.prompt_tokens = 100;
  r3.completion_tokens = 10;
  const std::map<std::string, BugKind> kinds = {{"a", BugKind::Type1BehaviorChange},
                                                {"b", BugKind::Type2BlockedValid}};
  auto grouped = cost_summary({r1, r2, r3}, cards, CostGrouping::ByBugKind, kinds);
  ASSERT_TRUE(grouped.count("TOTAL"));
  ASSERT_TRUE(grouped.count("type1_behavior_change"));
  ASSERT_TRUE(grouped.count("type2_blocked_valid"));
  ASSERT_TRUE(grouped.count("UNKNOWN"));
  double sum = 0.0;
  for (const auto& [group, cost] : grouped)
    if (group != "TOTAL") sum += cost;
  EXPECT_NEAR(sum, grouped.at("TOTAL"), 1e-12);
}

TEST_F(AcceptanceTest, Criterion10ResumabilityMatchesUninterruptedRun) {
  current_ = 10;
  TempDir td("sentinel-acceptance-resume");

  // reference: the same grid, uninterrupted
  MockModel reference_model;
  ScriptedTransport reference_transport(
      [&reference_model](const nlohmann::json& b) { return reference_model(b); });
  RunConfig reference = mock_config(td.path / "uninterrupted");
  RunSummary ref = run(reference, &reference_transport);
  EXPECT_EQ(ref.executed, 16);
  EXPECT_EQ(reference_transport.calls(), 16);

  // interrupted: the run dies after its first persisted attempt, then resumes
  MockModel model;
  ScriptedTransport transport([&model](const nlohmann::json& b) { return model(b); });
  RunConfig interrupted = mock_config(td.path / "interrupted");
  transport.fail_after(1);
  RunSummary killed = run(interrupted, &transport);
  EXPECT_EQ(killed.executed, 1);
  EXPECT_EQ(killed.failures.size(), 15u);

  transport.fail_after(-1);
  RunSummary resumed = run(interrupted, &transport);
  EXPECT_EQ(resumed.executed, 15);
  EXPECT_TRUE(resumed.failures.empty());
  EXPECT_EQ(resumed.decided, ref.decided);
  EXPECT_EQ(resumed.decided_correct, ref.decided_correct);
  EXPECT_EQ(resumed.pending, ref.pending);

  // zero duplicate backend calls: one wire hit per distinct request digest
  EXPECT_EQ(transport.calls(), 16);

  // identical persisted state, masking only attempt latency
  EXPECT_EQ(dir_contents(reference.output_dir / "outcomes"),
            dir_contents(interrupted.output_dir / "outcomes"));
  EXPECT_EQ(attempts_masked(reference.output_dir / "attempts"),
            attempts_masked(interrupted.output_dir / "attempts"));
}

}  // namespace
}  // namespace sentinel
