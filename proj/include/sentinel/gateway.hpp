#pragma once

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sentinel/corpus.hpp"
#include "sentinel/prompt.hpp"

namespace sentinel {

enum class ApiFlavor { ChatCompletions, LocalDaemon };

std::string to_string(ApiFlavor f);
ApiFlavor api_flavor_from_string(const std::string& s);

struct RateCard {
  double input_cost_per_1k_tokens = 0.0;
  double output_cost_per_1k_tokens = 0.0;
};

struct BackendProfile {
  std::string name;
  std::string endpoint_url;
  ApiFlavor api_flavor = ApiFlavor::ChatCompletions;
  std::string model_id;
  double default_temperature = 0.0;
  std::string auth_token_env;  // empty: no auth header
  RateCard rate_card;
  int max_retries = 2;
  int timeout_secs = 120;

  // INVALID_PROFILE violations as human-readable strings; empty when valid.
  std::vector<std::string> validate() const;
};

struct AttemptRecord {
  std::string case_id;
  std::string backend_name;
  int attempt_index = 1;
  double temperature = 0.0;
  std::string raw_response;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
  long long latency_ms = 0;
  bool from_cache = false;  // runtime provenance, persisted as false
  std::string request_digest;

  nlohmann::json to_json() const;
  static AttemptRecord from_json(const nlohmann::json& j);
};

class GatewayError : public std::runtime_error {
 public:
  GatewayError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  // BACKEND_UNREACHABLE | AUTH_FAILED | TIMEOUT | MALFORMED_BACKEND_REPLY |
  // INVALID_PROFILE | MISSING_RATE_CARD
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct WireResponse {
  int status = 0;            // 0 when the transport itself failed
  std::string body;
  bool timed_out = false;
  std::string error;         // transport-level failure description
};

// One HTTP POST. Implementations: real HTTP client, scripted test doubles.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual WireResponse post(const std::string& endpoint_url, const std::string& path,
                            const std::vector<std::pair<std::string, std::string>>& headers,
                            const std::string& body, int timeout_secs) = 0;
};

std::unique_ptr<Transport> make_http_transport();

// Deterministic stand-in for a model: replies are looked up by a caller-built
// key derived from the prompt, and every network hit is counted.
class ScriptedTransport : public Transport {
 public:
  using Responder = std::function<std::string(const nlohmann::json& request_body)>;

  explicit ScriptedTransport(Responder responder, ApiFlavor flavor = ApiFlavor::ChatCompletions);
  WireResponse post(const std::string& endpoint_url, const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& headers,
                    const std::string& body, int timeout_secs) override;

  int calls() const;
  // When > 0: the transport reports a connection failure after this many
  // successful calls (simulates a run being killed mid-flight).
  void fail_after(int successful_calls);

 private:
  Responder responder_;
  ApiFlavor flavor_;
  mutable std::mutex mu_;
  int calls_ = 0;
  int fail_after_ = -1;
};

std::string request_digest(const BackendProfile& profile, const std::string& prompt_text,
                           double temperature, int attempt_index);

// Caching front door to the backends. The cache directory is append-only:
// one <request_digest>.json per successful attempt; failures are not cached.
class Gateway {
 public:
  Gateway(std::filesystem::path cache_dir, Transport* transport);

  // Backoff between retries = base * 2^retry; 0 disables sleeping (tests).
  void set_backoff_base_ms(int ms);

  AttemptRecord complete(const BackendProfile& profile, const PromptInstance& prompt,
                         double temperature, int attempt_index);

  std::optional<AttemptRecord> cached(const std::string& digest) const;
  const std::filesystem::path& cache_dir() const { return cache_dir_; }
  int network_calls() const;

 private:
  AttemptRecord fetch(const BackendProfile& profile, const std::string& prompt_text,
                      double temperature, int attempt_index, const std::string& digest);

  std::filesystem::path cache_dir_;
  Transport* transport_;
  int backoff_base_ms_ = 500;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::set<std::string> in_flight_;
  std::atomic<int> network_calls_{0};
};

enum class CostGrouping { Total, ByBugKind };

// Cost in currency units per group. Grouping by bug kind needs the
// case_id → kind mapping, which records alone do not carry. The "TOTAL" key
// is always present. Cached records cost 0. Values are exact sums; round at
// presentation with round_half_up(value, 4).
std::map<std::string, double> cost_summary(const std::vector<AttemptRecord>& records,
                                           const std::map<std::string, RateCard>& rate_cards,
                                           CostGrouping grouping,
                                           const std::map<std::string, BugKind>& case_kinds = {});

}  // namespace sentinel
