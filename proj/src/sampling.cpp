#include "algd/sampling.hpp"

namespace algd {

int Sampler::pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

RatFunc Sampler::poly(int nvars) {
  RatFunc f;
  int n = pick(1, terms_);
  for (int t = 0; t < n; ++t) {
    int c = pick(-3, 3);
    RatFunc m(static_cast<long>(c == 0 ? 1 : c));
    int d = pick(0, deg_);
    for (int k = 0; k < d; ++k) m = m * RatFunc::var(pick(0, nvars - 1));
    f = f + m;
  }
  return f;
}

DiffForm Sampler::form(const ContextPtr& ctx, int p) {
  DiffForm a(ctx);
  const int n = ctx->dim();
  for (IndexMask m = 0; m < (IndexMask(1) << n); ++m) {
    if (popcount(m) != p) continue;
    if (p > 0 && pick(0, 1)) continue;
    a.add_term(m, poly(n));
  }
  return a;
}

VectorField Sampler::field(const ContextPtr& ctx) {
  std::vector<RatFunc> c;
  for (int i = 0; i < ctx->dim(); ++i) c.push_back(poly(ctx->dim()));
  return VectorField(ctx, c);
}

MatrixForm Sampler::matrix(const ContextPtr& ctx, int r, int p) {
  MatrixForm m(ctx, r, p);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m.set(i, j, form(ctx, p));
  return m;
}

CourantElement Sampler::element(const CourantStructure& s) {
  return {form(s.context(), 1), matrix(s.context(), s.rank(), 0), field(s.context())};
}

std::vector<std::array<CourantElement, 3>> Sampler::triples(const CourantStructure& s, int count) {
  std::vector<std::array<CourantElement, 3>> out;
  for (int i = 0; i < count; ++i) {
    CourantElement a = element(s), b = element(s), c = element(s);
    out.push_back({a, b, c});
  }
  return out;
}

std::vector<RatFunc> Sampler::functions(int nvars, int count) {
  std::vector<RatFunc> out;
  for (int i = 0; i < count; ++i) out.push_back(poly(nvars));
  return out;
}

VertexElement Sampler::vertex(const FrameEVA& V) {
  VertexElement v = V.zero();
  v.alpha = form(V.context(), 1);
  for (auto& g : v.g) g = poly(V.dim());
  return v;
}

}  // namespace algd
