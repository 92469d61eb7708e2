#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qforms/common/version.hpp"

namespace qforms::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 2, kLimit = 3, kConsistency = 4 };

// Order-independent digest of the parameters and engine version: the
// parameters are re-serialized with sorted keys.
std::string cache_key(const Json& params, std::string_view engine_version = kEngineVersion);

// Append-only JSON-lines store of finished results, locked with flock.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path) : path_(std::move(path)) {}

  const std::filesystem::path& path() const { return path_; }
  // The stored entry for key, or nothing. Unparsable lines are skipped.
  std::optional<Json> find(const std::string& key) const;
  void append(const std::string& key, const Json& params, const Json& entry) const;

 private:
  std::filesystem::path path_;
};

// Runs one command; args excludes the program name. The report (or an
// error object) goes to out, diagnostics and help text to err.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qforms::cli
