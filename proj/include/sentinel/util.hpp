#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sentinel::util {

// ---------- strings ----------

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
std::string join(const std::vector<std::string>& parts, const std::string& sep);
bool starts_with(const std::string& s, const std::string& prefix);
bool ends_with(const std::string& s, const std::string& suffix);
std::string to_lower(std::string s);
std::string replace_all(std::string s, const std::string& from, const std::string& to);

// Keeps [A-Za-z0-9._-], maps everything else to '_'. Used for file names
// derived from case/backend ids.
std::string sanitize_component(const std::string& s);

// ---------- numbers ----------

// Half-up decimal rounding; `decimals` in [0, 9].
double round_half_up(double value, int decimals);

// Formats with a fixed number of decimals, half-up. "92.85" -> "92.9" style.
std::string format_fixed(double value, int decimals);

// ---------- filesystem ----------

std::string read_file(const std::filesystem::path& path);
// Writes via temp file + rename so readers never observe partial content.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
void ensure_dir(const std::filesystem::path& dir);

// ---------- hashing ----------

std::string sha256_hex(const std::string& data);

// ---------- subprocess ----------

struct ProcessResult {
  int exit_code = -1;
  std::string output;    // stdout and stderr interleaved
  bool timed_out = false;
  bool spawn_failed = false;  // command not found / exec failure
  int64_t duration_ms = 0;
};

// Runs argv[0] with the given arguments, cwd and wall-clock timeout.
// Never throws; failures are reported in the result.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::filesystem::path& cwd,
                          int timeout_secs);

bool command_on_path(const std::string& name);

// ---------- time ----------

// UTC timestamp like 2025-03-01T12:34:56Z.
std::string iso_timestamp_now();

}  // namespace sentinel::util
