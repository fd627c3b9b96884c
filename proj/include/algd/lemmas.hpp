#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace algd {

struct LemmaOptions {
  std::uint64_t seed = 0;
  int samples = 20;
  bool parallel = false;
  // Name of a deliberately broken variant, for negative controls. Empty = none.
  std::string mutation;
  // chart size for the Courant axiom lemmas; below 4 the Pontryagin form vanishes
  int axiom_vars = 4;
};

struct LemmaResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> witnesses;  // failing inputs and values, as literals
};

// Suite order; names are stable report keys.
const std::vector<std::string>& lemma_names();
const std::vector<std::string>& mutation_names();

// throws ValidationError for an unknown name
LemmaResult run_lemma(const std::string& name, const LemmaOptions& opt);
// Empty selection = every lemma.
std::vector<LemmaResult> verify_lemmas(const std::vector<std::string>& selection, const LemmaOptions& opt);

}  // namespace algd
