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

enum class RenameScope { Variables, Methods, Classes, Packages, Numbers };

std::string to_string(RenameScope s);
RenameScope rename_scope_from_string(const std::string& s);
// comma-separated, e.g. "classes,numbers"
std::set<RenameScope> parse_scopes(const std::string& csv);

class MetamorphError : public std::runtime_error {
 public:
  MetamorphError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }  // RENAME_COLLISION | UNLEXABLE_SOURCE

 private:
  std::string code_;
};

struct RenamePlan {
  long long seed = 0;
  std::set<RenameScope> scope;
  std::map<std::string, std::string> identifier_map;  // old → new
  std::map<std::string, std::string> literal_map;     // old literal text → new
  // which identifier_map keys were renamed as classes / packages
  // (needed to rename file stems and path components, and to invert)
  std::set<std::string> class_targets;
  std::set<std::string> package_targets;

  nlohmann::json to_json() const;
  static RenamePlan from_json(const nlohmann::json& j);
};

struct MetamorphicVariant {
  std::string parent_id;
  std::string variant_id;
  RenamePlan plan;
  BugCase bug;  // rewritten before/after/params
  bool verified = false;
};

struct RewriteMaps {
  std::map<std::string, std::string> identifiers;
  std::map<std::string, std::string> literals;
  std::set<std::string> path_stems;       // old class names whose files rename
  std::set<std::string> path_components;  // old package components
};

// Whole-token substitution over lexed units; paths are adjusted for renamed
// class stems and package components. Inverting the maps and re-applying
// restores the input byte-for-byte.
std::vector<SourceUnit> rewrite_units(Language lang, const std::vector<SourceUnit>& units,
                                      const RewriteMaps& maps);

// Consistent whole-word substitution in refactoring params text.
std::string rewrite_words(const std::string& text,
                          const std::map<std::string, std::string>& identifiers);

// Deterministic for fixed (case, seed, scope). Fresh names never collide
// with keywords, builtins, pinned identifiers, or anything already present.
MetamorphicVariant generate_variant(const BugCase& bug, long long seed,
                                    const std::set<RenameScope>& scope);

// verified = true iff the variant's compile-oracle statuses equal the
// parent's (before, and after for Type I cases).
MetamorphicVariant verify_variant(MetamorphicVariant variant, const BugCase& parent,
                                  const std::filesystem::path& workspace,
                                  const CheckerConfig& config);

// variants/<parent_id>/<variant_id>.case.json + <variant_id>.plan.json
void persist_variant(const std::filesystem::path& corpus_root, const MetamorphicVariant& v);

}  // namespace sentinel
