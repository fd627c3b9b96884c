#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algd/cech.hpp"

namespace algd::cli {

inline const std::vector<std::string> kTasks = {"check-axioms", "pontryagin",      "ch2",
                                                "eva-class",    "compare-classes", "verify-lemmas"};

struct Manifest {
  int version = 0;
  ContextPtr ctx;
  std::vector<std::string> charts;
  std::optional<CoverSpec> cover;
  std::optional<BundleCocycle> bundle;
  std::vector<std::optional<Connection>> connections;  // per chart; nullopt = flat
  std::vector<std::optional<FrameEVA>> frames;
  std::vector<std::optional<DiffForm>> primitives;
  std::vector<std::string> tasks;
  std::vector<std::string> lemmas;  // verify-lemmas selection; empty = all
  std::uint64_t seed = 0;
  int degree_bound = 6;
  int samples = 20;
  // canonical re-serialization of each top-level section, for cache keys
  std::string canonical;

  bool has_connections() const;
  bool has_all_frames() const;
};

// throws ParseError for malformed YAML or literals, ValidationError for
// schema and consistency problems
Manifest parse_manifest(const std::string& text);

}  // namespace algd::cli
