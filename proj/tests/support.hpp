#pragma once

// Random inputs for property tests.

#include <random>

#include "algd/ratfunc.hpp"

namespace test {

inline algd::RatFunc random_poly(std::mt19937_64& rng, int nvars, int max_deg = 2, int max_terms = 3) {
  std::uniform_int_distribution<int> nterms(1, max_terms), coef(-3, 3), var(0, nvars - 1), deg(0, max_deg);
  algd::RatFunc f;
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    int c = coef(rng);
    if (c == 0) c = 1;
    algd::RatFunc m(static_cast<long>(c));
    int d = deg(rng);
    for (int k = 0; k < d; ++k) m = m * algd::RatFunc::var(var(rng));
    f = f + m;
  }
  return f;
}

inline algd::RatFunc random_ratfunc(std::mt19937_64& rng, int nvars) {
  algd::RatFunc n = random_poly(rng, nvars);
  std::uniform_int_distribution<int> coin(0, 2);
  if (coin(rng) == 0) return n;
  algd::RatFunc d = random_poly(rng, nvars, 1, 2);
  if (d.is_zero()) return n;
  return n / d;
}

}  // namespace test

#include "algd/matrix_form.hpp"

namespace test {

inline algd::DiffForm random_form(std::mt19937_64& rng, const algd::ContextPtr& ctx, int p) {
  algd::DiffForm a(ctx);
  int n = ctx->dim();
  for (unsigned m = 0; m < (1u << n); ++m) {
    if (algd::popcount(algd::IndexMask(m)) != p) continue;
    std::uniform_int_distribution<int> coin(0, 1);
    if (p > 0 && coin(rng)) continue;
    a.add_term(algd::IndexMask(m), random_poly(rng, n));
  }
  return a;
}

inline algd::VectorField random_field(std::mt19937_64& rng, const algd::ContextPtr& ctx) {
  std::vector<algd::RatFunc> c;
  for (int i = 0; i < ctx->dim(); ++i) c.push_back(random_poly(rng, ctx->dim()));
  return algd::VectorField(ctx, c);
}

inline algd::MatrixForm random_matrix_form(std::mt19937_64& rng, const algd::ContextPtr& ctx, int r, int p) {
  algd::MatrixForm m(ctx, r, p);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m.set(i, j, random_form(rng, ctx, p));
  return m;
}

}  // namespace test

#include "algd/courant.hpp"

namespace test {

inline algd::Connection random_connection(std::mt19937_64& rng, const algd::ContextPtr& ctx, int r) {
  return algd::Connection(random_matrix_form(rng, ctx, r, 1));
}

// A_{nabla,H} with H the homotopy primitive of 1/2 <c ^ c>.
inline algd::CourantStructure admissible_structure(const algd::Connection& conn) {
  algd::DiffForm half = algd::mat_wedge_pair(algd::curvature(conn), algd::curvature(conn)).scaled(algd::Rational(1, 2));
  return algd::CourantStructure::extension(conn, algd::poincare_primitive(half));
}

inline algd::CourantElement random_element(std::mt19937_64& rng, const algd::CourantStructure& s) {
  return {random_form(rng, s.context(), 1), random_matrix_form(rng, s.context(), s.rank(), 0),
          random_field(rng, s.context())};
}

inline std::vector<std::array<algd::CourantElement, 3>> random_triples(std::mt19937_64& rng,
                                                                     const algd::CourantStructure& s, int count) {
  std::vector<std::array<algd::CourantElement, 3>> out;
  for (int i = 0; i < count; ++i) out.push_back({random_element(rng, s), random_element(rng, s), random_element(rng, s)});
  return out;
}

inline std::vector<algd::RatFunc> random_functions(std::mt19937_64& rng, int nvars, int count) {
  std::vector<algd::RatFunc> out;
  for (int i = 0; i < count; ++i) out.push_back(random_poly(rng, nvars));
  return out;
}

}  // namespace test
