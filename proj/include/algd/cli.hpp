#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace algd {

inline constexpr const char* kToolVersion = "0.1.0";

// Command-line overrides; unset fields fall back to the manifest.
struct RunFlags {
  std::optional<std::uint64_t> seed;
  std::optional<int> degree_bound;
  std::optional<int> samples;
  bool parallel = false;
  std::string cache_dir;  // empty: $ALGD_CACHE_DIR, then .algd-cache
  bool use_cache = true;
  std::string out;        // machine report path; empty = none
  std::string format = "text";
  std::string mutation;
};

struct RunOutcome {
  int exit_code = 0;    // 0 pass, 1 assertion failure, 2 parse or validation error
  std::string text;     // human report, includes timings
  std::string machine;  // canonical JSON, no timings; empty on exit code 2
  std::string error;    // "<Kind>: message" on exit code 2
  std::map<std::string, bool> cache_hits;  // task key -> hit
};

RunOutcome run_manifest_text(const std::string& text, const RunFlags& flags);
RunOutcome run_manifest_file(const std::string& path, const RunFlags& flags);

std::string sha256_hex(const std::string& data);

}  // namespace algd
