#pragma once

#include <cstdint>
#include <random>

#include "algd/courant.hpp"
#include "algd/vertex.hpp"

namespace algd {

// Seeded random inputs with bounded degree and term count.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, int max_deg = 2, int max_terms = 3) : rng_(seed), deg_(max_deg), terms_(max_terms) {}

  std::mt19937_64& rng() { return rng_; }
  int pick(int lo, int hi);  // uniform in [lo, hi]

  RatFunc poly(int nvars);
  DiffForm form(const ContextPtr& ctx, int p);
  VectorField field(const ContextPtr& ctx);
  MatrixForm matrix(const ContextPtr& ctx, int r, int p);
  Connection connection(const ContextPtr& ctx, int r) { return Connection(matrix(ctx, r, 1)); }
  CourantElement element(const CourantStructure& s);
  std::vector<std::array<CourantElement, 3>> triples(const CourantStructure& s, int count);
  std::vector<RatFunc> functions(int nvars, int count);
  VertexElement vertex(const FrameEVA& V);

 private:
  std::mt19937_64 rng_;
  int deg_, terms_;
};

}  // namespace algd
