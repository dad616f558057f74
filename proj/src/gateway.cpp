#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "sentinel/gateway.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "sentinel/util.hpp"

namespace fs = std::filesystem;

namespace sentinel {
using namespace util;

std::string to_string(ApiFlavor f) {
  return f == ApiFlavor::ChatCompletions ? "CHAT_COMPLETIONS" : "LOCAL_DAEMON";
}

ApiFlavor api_flavor_from_string(const std::string& s) {
  std::string u = to_lower(trim(s));
  if (u == "chat_completions") return ApiFlavor::ChatCompletions;
  if (u == "local_daemon") return ApiFlavor::LocalDaemon;
  throw std::invalid_argument("unknown api flavor: " + s);
}

std::vector<std::string> BackendProfile::validate() const {
  std::vector<std::string> v;
  if (name.empty()) v.push_back("name is empty");
  if (endpoint_url.empty()) v.push_back("endpoint_url is empty");
  if (model_id.empty()) v.push_back("model_id is empty");
  if (default_temperature < 0.0 || default_temperature > 1.0)
    v.push_back("default_temperature outside [0,1]");
  if (max_retries < 0) v.push_back("max_retries negative");
  if (timeout_secs <= 0) v.push_back("timeout not positive");
  if (rate_card.input_cost_per_1k_tokens < 0 || rate_card.output_cost_per_1k_tokens < 0)
    v.push_back("negative rate card cost");
  return v;
}

nlohmann::json AttemptRecord::to_json() const {
  return {{"case_id", case_id},
          {"backend_name", backend_name},
          {"attempt_index", attempt_index},
          {"temperature", temperature},
          {"raw_response", raw_response},
          {"prompt_tokens", prompt_tokens},
          {"completion_tokens", completion_tokens},
          {"latency_ms", latency_ms},
          {"from_cache", false},
          {"request_digest", request_digest}};
}

AttemptRecord AttemptRecord::from_json(const nlohmann::json& j) {
  AttemptRecord r;
  r.case_id = j.at("case_id").get<std::string>();
  r.backend_name = j.at("backend_name").get<std::string>();
  r.attempt_index = j.at("attempt_index").get<int>();
  r.temperature = j.at("temperature").get<double>();
  r.raw_response = j.at("raw_response").get<std::string>();
  r.prompt_tokens = j.value("prompt_tokens", 0LL);
  r.completion_tokens = j.value("completion_tokens", 0LL);
  r.latency_ms = j.value("latency_ms", 0LL);
  r.request_digest = j.at("request_digest").get<std::string>();
  return r;
}

namespace {

// scheme://host[:port] and the path prefix baked into endpoint_url
std::pair<std::string, std::string> split_endpoint(const std::string& url) {
  size_t scheme = url.find("://");
  size_t path_start = scheme == std::string::npos ? url.find('/') : url.find('/', scheme + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string base = url.substr(0, path_start);
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {base, prefix};
}

class HttpTransport : public Transport {
 public:
  WireResponse post(const std::string& endpoint_url, const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& headers,
                    const std::string& body, int timeout_secs) override {
    auto [base, prefix] = split_endpoint(endpoint_url);
    httplib::Client client(base);
    client.set_connection_timeout(timeout_secs, 0);
    client.set_read_timeout(timeout_secs, 0);
    client.set_write_timeout(timeout_secs, 0);
    client.set_follow_location(true);
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    auto res = client.Post(prefix + path, h, body, "application/json");
    WireResponse w;
    if (!res) {
      w.error = httplib::to_string(res.error());
      w.timed_out = res.error() == httplib::Error::ConnectionTimeout ||
                    res.error() == httplib::Error::Read ||
                    res.error() == httplib::Error::Write;
      return w;
    }
    w.status = res->status;
    w.body = res->body;
    return w;
  }
};

long long word_count(const std::string& s) {
  long long n = 0;
  bool in_word = false;
  for (char c : s) {
    bool ws = c == ' ' || c == '\n' || c == '\t' || c == '\r';
    if (!ws && !in_word) ++n;
    in_word = !ws;
  }
  return n;
}

}  // namespace

std::unique_ptr<Transport> make_http_transport() {
  return std::make_unique<HttpTransport>();
}

ScriptedTransport::ScriptedTransport(Responder responder, ApiFlavor flavor)
    : responder_(std::move(responder)), flavor_(flavor) {}

WireResponse ScriptedTransport::post(const std::string&, const std::string&,
                                     const std::vector<std::pair<std::string, std::string>>&,
                                     const std::string& body, int) {
  {
    std::lock_guard<std::mutex> lk(mu_);
    if (fail_after_ >= 0 && calls_ >= fail_after_) {
      WireResponse w;
      w.error = "connection refused (scripted)";
      return w;
    }
    ++calls_;
  }
  nlohmann::json req = nlohmann::json::parse(body);
  std::string reply = responder_(req);
  std::string prompt;
  if (req.contains("messages") && !req["messages"].empty())
    prompt = req["messages"][0].value("content", "");
  WireResponse w;
  w.status = 200;
  if (flavor_ == ApiFlavor::ChatCompletions) {
    w.body = nlohmann::json{
        {"choices", {{{"message", {{"role", "assistant"}, {"content", reply}}}}}},
        {"usage",
         {{"prompt_tokens", word_count(prompt)}, {"completion_tokens", word_count(reply)}}}}
                 .dump();
  } else {
    w.body = nlohmann::json{{"message", {{"role", "assistant"}, {"content", reply}}},
                            {"prompt_eval_count", word_count(prompt)},
                            {"eval_count", word_count(reply)}}
                 .dump();
  }
  return w;
}

int ScriptedTransport::calls() const {
  std::lock_guard<std::mutex> lk(mu_);
  return calls_;
}

void ScriptedTransport::fail_after(int successful_calls) {
  std::lock_guard<std::mutex> lk(mu_);
  fail_after_ = successful_calls;
}

std::string request_digest(const BackendProfile& profile, const std::string& prompt_text,
                           double temperature, int attempt_index) {
  std::string key = profile.name + "|" + profile.model_id + "|" + prompt_text + "|" +
                    format_fixed(temperature, 3) + "|" + std::to_string(attempt_index);
  return sha256_hex(key);
}

Gateway::Gateway(fs::path cache_dir, Transport* transport)
    : cache_dir_(std::move(cache_dir)), transport_(transport) {
  ensure_dir(cache_dir_);
}

void Gateway::set_backoff_base_ms(int ms) { backoff_base_ms_ = ms; }

std::optional<AttemptRecord> Gateway::cached(const std::string& digest) const {
  fs::path file = cache_dir_ / (digest + ".json");
  std::error_code ec;
  if (!fs::exists(file, ec)) return std::nullopt;
  AttemptRecord r = AttemptRecord::from_json(nlohmann::json::parse(read_file(file)));
  r.from_cache = true;
  return r;
}

int Gateway::network_calls() const { return network_calls_.load(); }

AttemptRecord Gateway::complete(const BackendProfile& profile, const PromptInstance& prompt,
                                double temperature, int attempt_index) {
  auto violations = profile.validate();
  if (!violations.empty())
    throw GatewayError("INVALID_PROFILE", profile.name + ": " + join(violations, "; "));
  if (prompt.text.empty()) throw GatewayError("INVALID_PROFILE", "empty prompt");
  if (attempt_index < 1) throw GatewayError("INVALID_PROFILE", "attempt_index must be >= 1");

  std::string digest = request_digest(profile, prompt.text, temperature, attempt_index);
  {
    std::unique_lock<std::mutex> lk(mu_);
    for (;;) {
      lk.unlock();
      auto hit = cached(digest);
      lk.lock();
      if (hit) return *hit;
      if (!in_flight_.count(digest)) {
        in_flight_.insert(digest);
        break;
      }
      cv_.wait(lk);
    }
  }
  AttemptRecord rec;
  try {
    rec = fetch(profile, prompt.text, temperature, attempt_index, digest);
    rec.case_id = prompt.case_id;
    write_file_atomic(cache_dir_ / (digest + ".json"), rec.to_json().dump(2) + "\n");
  } catch (...) {
    std::lock_guard<std::mutex> lk(mu_);
    in_flight_.erase(digest);
    cv_.notify_all();
    throw;
  }
  {
    std::lock_guard<std::mutex> lk(mu_);
    in_flight_.erase(digest);
    cv_.notify_all();
  }
  return rec;
}

AttemptRecord Gateway::fetch(const BackendProfile& profile, const std::string& prompt_text,
                             double temperature, int attempt_index, const std::string& digest) {
  std::vector<std::pair<std::string, std::string>> headers;
  if (!profile.auth_token_env.empty()) {
    const char* token = std::getenv(profile.auth_token_env.c_str());
    if (!token || !*token)
      throw GatewayError("AUTH_FAILED",
                         "environment variable " + profile.auth_token_env + " is not set");
    headers.emplace_back("Authorization", std::string("Bearer ") + token);
  }

  nlohmann::json messages = nlohmann::json::array();
  messages.push_back({{"role", "user"}, {"content", prompt_text}});
  std::string path;
  nlohmann::json body;
  if (profile.api_flavor == ApiFlavor::ChatCompletions) {
    path = "/chat/completions";
    body = {{"model", profile.model_id},
            {"messages", messages},
            {"temperature", temperature},
            {"stream", false}};
  } else {
    path = "/api/chat";
    body = {{"model", profile.model_id},
            {"messages", messages},
            {"stream", false},
            {"options", {{"temperature", temperature}}}};
  }
  const std::string payload = body.dump();

  WireResponse last;
  for (int retry = 0;; ++retry) {
    if (retry > 0 && backoff_base_ms_ > 0)
      std::this_thread::sleep_for(
          std::chrono::milliseconds((long long)backoff_base_ms_ << (retry - 1)));
    auto start = std::chrono::steady_clock::now();
    ++network_calls_;
    last = transport_->post(profile.endpoint_url, path, headers, payload, profile.timeout_secs);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    bool transient = last.status == 0 || last.status == 429 || last.status >= 500;
    if (transient) {
      if (retry < profile.max_retries) continue;
      if (last.status == 0 && last.timed_out)
        throw GatewayError("TIMEOUT", profile.name + ": " + last.error);
      if (last.status == 0)
        throw GatewayError("BACKEND_UNREACHABLE", profile.name + ": " + last.error);
      throw GatewayError("BACKEND_UNREACHABLE",
                         profile.name + ": HTTP " + std::to_string(last.status) + " after " +
                             std::to_string(profile.max_retries + 1) + " attempts");
    }
    if (last.status == 401 || last.status == 403)
      throw GatewayError("AUTH_FAILED",
                         profile.name + ": HTTP " + std::to_string(last.status));
    if (last.status < 200 || last.status >= 300)
      throw GatewayError("MALFORMED_BACKEND_REPLY",
                         profile.name + ": unexpected HTTP " + std::to_string(last.status));

    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(last.body);
    } catch (const nlohmann::json::parse_error& e) {
      throw GatewayError("MALFORMED_BACKEND_REPLY",
                         profile.name + ": reply is not JSON (" + std::string(e.what()) + ")");
    }
    AttemptRecord rec;
    rec.backend_name = profile.name;
    rec.attempt_index = attempt_index;
    rec.temperature = temperature;
    rec.latency_ms = elapsed;
    rec.request_digest = digest;
    try {
      if (profile.api_flavor == ApiFlavor::ChatCompletions) {
        rec.raw_response =
            reply.at("choices").at(0).at("message").at("content").get<std::string>();
        if (reply.contains("usage")) {
          rec.prompt_tokens = reply["usage"].value("prompt_tokens", 0LL);
          rec.completion_tokens = reply["usage"].value("completion_tokens", 0LL);
        }
      } else {
        rec.raw_response = reply.at("message").at("content").get<std::string>();
        rec.prompt_tokens = reply.value("prompt_eval_count", 0LL);
        rec.completion_tokens = reply.value("eval_count", 0LL);
      }
    } catch (const nlohmann::json::exception& e) {
      throw GatewayError("MALFORMED_BACKEND_REPLY",
                         profile.name + ": missing completion text (" + std::string(e.what()) +
                             ")");
    }
    return rec;
  }
}

std::map<std::string, double> cost_summary(const std::vector<AttemptRecord>& records,
                                           const std::map<std::string, RateCard>& rate_cards,
                                           CostGrouping grouping,
                                           const std::map<std::string, BugKind>& case_kinds) {
  std::map<std::string, double> out;
  out["TOTAL"] = 0.0;
  for (const auto& r : records) {
    if (r.from_cache) continue;
    auto card = rate_cards.find(r.backend_name);
    if (card == rate_cards.end())
      throw GatewayError("MISSING_RATE_CARD", "no rate card for backend " + r.backend_name);
    double cost = r.prompt_tokens / 1000.0 * card->second.input_cost_per_1k_tokens +
                  r.completion_tokens / 1000.0 * card->second.output_cost_per_1k_tokens;
    out["TOTAL"] += cost;
    if (grouping == CostGrouping::ByBugKind) {
      auto kind = case_kinds.find(r.case_id);
      std::string key = kind == case_kinds.end() ? "UNKNOWN" : to_string(kind->second);
      out[key] += cost;
    }
  }
  return out;
}

}  // namespace sentinel
