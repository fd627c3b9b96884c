#include "algd/axioms.hpp"

namespace algd {

AxiomReport merge_outcomes(const std::vector<std::string>& names, const std::vector<SampleOutcome>& samples,
                           std::size_t max_witnesses) {
  AxiomReport rep;
  for (const auto& n : names) rep.results.push_back(AxiomResult{n, true, 0, {}});
  auto slot = [&](const std::string& n) -> AxiomResult& {
    for (auto& r : rep.results)
      if (r.name == n) return r;
    rep.results.push_back(AxiomResult{n, true, 0, {}});
    return rep.results.back();
  };
  for (const auto& s : samples) {
    for (const auto& [name, witness] : s) {
      AxiomResult& r = slot(name);
      ++r.checked;
      if (witness.empty()) continue;
      r.passed = false;
      if (r.witnesses.size() < max_witnesses) r.witnesses.push_back(witness);
    }
  }
  return rep;
}

}  // namespace algd
