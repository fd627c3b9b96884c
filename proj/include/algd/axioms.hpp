#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "algd/forms.hpp"

namespace algd {

// Runs f(0..n-1), optionally on worker threads; results come back in index
// order so aggregation never depends on scheduling.
template <class F>
auto parallel_map(std::size_t n, bool parallel, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  std::size_t workers = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1;
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  workers = std::min(workers, n);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

// Everything the axiom checkers need to know about a structure.
template <class E>
struct StructureOps {
  std::function<E(const E&, const E&)> bracket;
  std::function<RatFunc(const E&, const E&)> pairing;
  std::function<VectorField(const E&)> anchor;
  std::function<E(const RatFunc&)> derivation;
  std::function<E(const RatFunc&, const E&)> scale;
  std::function<E(const E&, const E&)> add;
  std::function<E(const E&, const E&)> sub;
  std::function<bool(const E&)> is_zero;
  std::function<std::string(const E&)> show;
};

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> witnesses;
};

struct AxiomReport {
  std::vector<AxiomResult> results;

  bool all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
  }
  const AxiomResult* find(const std::string& name) const {
    for (const auto& r : results)
      if (r.name == name) return &r;
    return nullptr;
  }
  bool passed(const std::string& name) const {
    const AxiomResult* r = find(name);
    return r && r->passed;
  }
};

// One sample's outcome for each named check: empty string = pass.
using SampleOutcome = std::vector<std::pair<std::string, std::string>>;

// Merges per-sample outcomes in sample order, keeping every witness.
AxiomReport merge_outcomes(const std::vector<std::string>& names, const std::vector<SampleOutcome>& samples,
                           std::size_t max_witnesses = 8);

inline constexpr const char* kCourantAxioms[] = {"complex", "leibniz", "ip-invar", "bracket-o",
                                                 "ip-o", "ip-symm", "jacobi", "anchor-morphism"};

// The six Courant axioms, plus the Jacobi identity of the Leibniz bracket and
// the anchor being a bracket morphism. Triple t uses functions[t % size].
template <class E>
AxiomReport check_courant_like(const StructureOps<E>& ops, const std::vector<std::array<E, 3>>& triples,
                               const std::vector<RatFunc>& functions, bool parallel = false) {
  std::vector<std::string> names(std::begin(kCourantAxioms), std::end(kCourantAxioms));
  auto run = [&](std::size_t t) {
    const E& q = triples[t][0];
    const E& q1 = triples[t][1];
    const E& q2 = triples[t][2];
    const RatFunc f = functions.empty() ? RatFunc(0L) : functions[t % functions.size()];
    const ContextPtr& ctx = ops.anchor(q).context();
    std::string tag = "sample " + std::to_string(t) + ": ";
    SampleOutcome out;
    auto elem = [&](const char* name, const E& diff) {
      out.emplace_back(name, ops.is_zero(diff) ? "" : tag + "defect " + ops.show(diff));
    };
    auto fn = [&](const char* name, const RatFunc& diff) {
      out.emplace_back(name, diff.is_zero() ? "" : tag + "defect " + diff.to_string(*ctx));
    };

    VectorField pd = ops.anchor(ops.derivation(f));
    out.emplace_back("complex", pd.is_zero() ? "" : tag + "pi(df) = " + pd.to_string());

    E lhs = ops.bracket(q1, ops.scale(f, q2));
    E rhs = ops.add(ops.scale(f, ops.bracket(q1, q2)), ops.scale(ops.anchor(q1).apply(f), q2));
    elem("leibniz", ops.sub(lhs, rhs));

    E b01 = ops.bracket(q, q1), b02 = ops.bracket(q, q2);
    fn("ip-invar", ops.pairing(b01, q2) + ops.pairing(q1, b02) - ops.anchor(q).apply(ops.pairing(q1, q2)));

    elem("bracket-o", ops.sub(ops.bracket(q, ops.derivation(f)), ops.derivation(ops.anchor(q).apply(f))));
    fn("ip-o", ops.pairing(q, ops.derivation(f)) - ops.anchor(q).apply(f));

    E b12 = ops.bracket(q1, q2), b21 = ops.bracket(q2, q1);
    elem("ip-symm", ops.sub(ops.add(b12, b21), ops.derivation(ops.pairing(q1, q2))));

    // {a,{b,c}} - {{a,b},c} - {b,{a,c}}
    E jac = ops.sub(ops.sub(ops.bracket(q, b12), ops.bracket(b01, q2)), ops.bracket(q1, b02));
    elem("jacobi", jac);

    VectorField am = ops.anchor(b12) - vf_bracket(ops.anchor(q1), ops.anchor(q2));
    out.emplace_back("anchor-morphism", am.is_zero() ? "" : tag + "defect " + am.to_string());
    return out;
  };
  return merge_outcomes(names, parallel_map(triples.size(), parallel, run));
}

}  // namespace algd
