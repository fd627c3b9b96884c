#include "algd/vertex.hpp"

#include "algd/errors.hpp"

namespace algd {

bool VertexElement::is_zero() const {
  if (!alpha.is_zero()) return false;
  for (const auto& c : g)
    if (!c.is_zero()) return false;
  return true;
}

VertexElement VertexElement::operator-() const {
  VertexElement out{-alpha, g};
  for (auto& c : out.g) c = -c;
  return out;
}

VertexElement operator+(const VertexElement& x, const VertexElement& y) {
  if (x.g.size() != y.g.size()) throw StructureMismatch("elements over frames of different size");
  VertexElement out{x.alpha + y.alpha, x.g};
  for (std::size_t m = 0; m < y.g.size(); ++m) out.g[m] = out.g[m] + y.g[m];
  return out;
}

VertexElement operator-(const VertexElement& x, const VertexElement& y) { return x + (-y); }

std::string VertexElement::to_string(const Context& ctx) const {
  std::string s = "(" + (alpha.is_zero() ? std::string("0") : alpha.to_string()) + ";";
  for (std::size_t m = 0; m < g.size(); ++m) s += (m ? ", " : " ") + g[m].to_string(ctx);
  return s + ")";
}

FrameEVA::FrameEVA(ContextPtr ctx, std::vector<VectorField> frame) : ctx_(std::move(ctx)), frame_(std::move(frame)) {
  const int n = ctx_->dim();
  if (static_cast<int>(frame_.size()) != n)
    throw FrameInvalid("frame has " + std::to_string(frame_.size()) + " fields on a " + std::to_string(n) +
                       "-dimensional chart");
  std::vector<RatFunc> comps;
  for (const auto& t : frame_) {
    require_same(t.context(), ctx_);
    for (int k = 0; k < n; ++k) comps.push_back(t[k]);
  }
  MatrixForm T = MatrixForm::functions(ctx_, n, comps);
  if (mat_det(T).is_zero()) throw FrameInvalid("frame fields are not a module basis");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!vf_bracket(frame_[i], frame_[j]).is_zero())
        throw FrameInvalid("frame fields t" + std::to_string(i + 1) + ", t" + std::to_string(j + 1) +
                           " do not commute");
  inverse_ = mat_inverse(T);
}

FrameEVA FrameEVA::coordinate(ContextPtr ctx) {
  std::vector<VectorField> fr;
  for (int k = 0; k < ctx->dim(); ++k) fr.push_back(VectorField::coordinate(ctx, k));
  return FrameEVA(ctx, fr);
}

FrameEVA FrameEVA::sheared(const ChartMap& map, const ChartMap& inverse) {
  const ContextPtr& ctx = map.ctx;
  if (!map.compose(inverse).is_identity() || !inverse.compose(map).is_identity())
    throw FrameInvalid("maps are not mutually inverse");
  std::vector<VectorField> fr;
  for (int k = 0; k < ctx->dim(); ++k) fr.push_back(pull_field(map, inverse, VectorField::coordinate(ctx, k)));
  return FrameEVA(ctx, fr);
}

VertexElement FrameEVA::zero() const { return {DiffForm(ctx_), std::vector<RatFunc>(dim())}; }

VertexElement FrameEVA::form(const DiffForm& alpha) const {
  VertexElement v = zero();
  v.alpha = alpha;
  check(v);
  return v;
}

VertexElement FrameEVA::generator(int m) const {
  VertexElement v = zero();
  v.g.at(m) = RatFunc(1L);
  return v;
}

std::vector<RatFunc> FrameEVA::coefficients(const VectorField& xi) const {
  require_same(xi.context(), ctx_);
  const int n = dim();
  std::vector<RatFunc> c(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      if (!xi[k].is_zero()) c[m] = c[m] + xi[k] * inverse_.fn(k, m);
  return c;
}

VertexElement FrameEVA::lift(const VectorField& xi) const {
  VertexElement v = zero();
  v.g = coefficients(xi);
  return v;
}

void FrameEVA::check(const VertexElement& v) const {
  if (static_cast<int>(v.g.size()) != dim()) throw StructureMismatch("element has the wrong number of frame slots");
  if (!v.alpha.context() || !(*v.alpha.context() == *ctx_)) throw StructureMismatch("element lives on another chart");
  if (!v.alpha.is_zero() && v.alpha.degree() != 1) throw StructureMismatch("Omega^1 part is not a 1-form");
}

VectorField FrameEVA::anchor(const VertexElement& v) const {
  VectorField out(ctx_);
  for (int m = 0; m < dim(); ++m)
    if (!v.g[m].is_zero()) out = out + v.g[m] * frame_[m];
  return out;
}

VertexElement FrameEVA::derivation(const RatFunc& f) const { return form(ext_d(DiffForm(ctx_, f))); }

// f*(alpha + sum g_m (x) t_m) = f alpha + sum (f g_m (x) t_m + t_m(f) dg_m + t_m(g_m) df)
VertexElement FrameEVA::star(const RatFunc& f, const VertexElement& v) const {
  check(v);
  VertexElement out = zero();
  if (f.is_zero()) return out;
  out.alpha = f * v.alpha;
  DiffForm df = ext_d(DiffForm(ctx_, f));
  for (int m = 0; m < dim(); ++m) {
    if (v.g[m].is_zero()) continue;
    out.g[m] = f * v.g[m];
    RatFunc tf = frame_[m].apply(f), tg = frame_[m].apply(v.g[m]);
    if (!tf.is_zero()) out.alpha += tf * ext_d(DiffForm(ctx_, v.g[m]));
    if (!tg.is_zero()) out.alpha += tg * df;
  }
  return out;
}

std::vector<FrameEVA::Term> FrameEVA::terms(const VertexElement& v) const {
  check(v);
  std::vector<Term> out;
  for (int m = 0; m < dim(); ++m)
    if (!v.g[m].is_zero()) out.push_back({v.g[m], m});
  for (int k = 0; k < dim(); ++k) {
    RatFunc a = v.alpha.coeff(IndexMask(1u << k));
    if (!a.is_zero()) out.push_back({a, dim() + k});
  }
  return out;
}

VectorField FrameEVA::gen_anchor(int gen) const { return gen < dim() ? frame_[gen] : VectorField(ctx_); }

// <t_i, t_j> = 0, <t_i, dx_k> = t_i(x_k), <dx, dx> = 0
RatFunc FrameEVA::gen_pairing(int a, int b) const {
  const int n = dim();
  if (a < n && b >= n) return frame_[a][b - n];
  if (b < n && a >= n) return frame_[b][a - n];
  return RatFunc();
}

// tau -> V is a bracket morphism and tau is abelian; [t_i, dx_k] = d(t_i(x_k))
// by bracket-o, and symm-bracket then kills [dx_k, t_i].
VertexElement FrameEVA::gen_bracket(int a, int b) const {
  const int n = dim();
  if (a < n && b >= n) return derivation(frame_[a][b - n]);
  return zero();
}

VertexElement FrameEVA::gen_element(int gen) const {
  if (gen < dim()) return generator(gen);
  return form(DiffForm::dx(ctx_, gen - dim()));
}

// <c*G_a, e*G_b> = c(e<G_b,G_a> - pi(G_b)(pi(G_a)(e))) - pi(G_a)(e pi(G_b)(c)), from the
// pairing rule applied once in each slot and symmetry.
RatFunc FrameEVA::pairing(const VertexElement& v1, const VertexElement& v2) const {
  RatFunc out;
  std::vector<Term> t2 = terms(v2);
  for (const auto& [c, a] : terms(v1)) {
    VectorField pa = gen_anchor(a);
    for (const auto& [e, b] : t2) {
      VectorField pb = gen_anchor(b);
      out = out + c * (e * gen_pairing(b, a) - pb.apply(pa.apply(e))) - pa.apply(e * pb.apply(c));
    }
  }
  return out;
}

// [c*G_a, e*G_b] = (c pi(G_a))(e)*G_b + e*[c*G_a, G_b] by leib, and
// [c*G_a, G_b] = -pi(G_b)(c)*G_a - c*[G_b, G_a] + d<c*G_a, G_b> by leib and symm-bracket.
VertexElement FrameEVA::bracket(const VertexElement& v1, const VertexElement& v2) const {
  VertexElement out = zero();
  std::vector<Term> t2 = terms(v2);
  for (const auto& [c, a] : terms(v1)) {
    VectorField pa = gen_anchor(a);
    VertexElement Ga = gen_element(a);
    for (const auto& [e, b] : t2) {
      VectorField pb = gen_anchor(b);
      VertexElement Gb = gen_element(b);
      RatFunc pair_cGa_Gb = c * gen_pairing(a, b) - pa.apply(pb.apply(c));
      VertexElement inner = star(-pb.apply(c), Ga) - star(c, gen_bracket(b, a)) + derivation(pair_cGa_Gb);
      out = out + star(c * pa.apply(e), Gb) + star(e, inner);
    }
  }
  return out;
}

VertexElement star(const FrameEVA& V, const RatFunc& f, const VertexElement& v) { return V.star(f, v); }
VertexElement eva_bracket(const FrameEVA& V, const VertexElement& v1, const VertexElement& v2) {
  return V.bracket(v1, v2);
}
RatFunc eva_pairing(const FrameEVA& V, const VertexElement& v1, const VertexElement& v2) {
  return V.pairing(v1, v2);
}

StructureOps<VertexElement> vertex_ops(const FrameEVA& V) {
  StructureOps<VertexElement> ops;
  ops.bracket = [V](const VertexElement& x, const VertexElement& y) { return V.bracket(x, y); };
  ops.pairing = [V](const VertexElement& x, const VertexElement& y) { return V.pairing(x, y); };
  ops.anchor = [V](const VertexElement& x) { return V.anchor(x); };
  ops.derivation = [V](const RatFunc& f) { return V.derivation(f); };
  ops.scale = [V](const RatFunc& f, const VertexElement& x) { return V.star(f, x); };
  ops.add = [](const VertexElement& x, const VertexElement& y) { return x + y; };
  ops.sub = [](const VertexElement& x, const VertexElement& y) { return x - y; };
  ops.is_zero = [](const VertexElement& x) { return x.is_zero(); };
  ops.show = [V](const VertexElement& x) { return x.to_string(*V.context()); };
  return ops;
}

AxiomReport check_vertex_axioms(const StructureOps<VertexElement>& ops, const std::vector<VertexSample>& samples,
                                bool parallel) {
  std::vector<std::string> names(std::begin(kVertexAxioms), std::end(kVertexAxioms));
  auto run = [&](std::size_t t) {
    const auto& [v, v1, v2, f, g] = samples[t];
    const ContextPtr& ctx = ops.anchor(v).context();
    std::string tag = "sample " + std::to_string(t) + ": ";
    SampleOutcome out;
    auto elem = [&](const char* name, const VertexElement& diff) {
      out.emplace_back(name, ops.is_zero(diff) ? "" : tag + "defect " + ops.show(diff));
    };
    auto fn = [&](const char* name, const RatFunc& diff) {
      out.emplace_back(name, diff.is_zero() ? "" : tag + "defect " + diff.to_string(*ctx));
    };
    auto field = [&](const char* name, const VectorField& diff) {
      out.emplace_back(name, diff.is_zero() ? "" : tag + "defect " + diff.to_string());
    };
    auto pi = ops.anchor;
    auto star = ops.scale;
    auto d = ops.derivation;
    VectorField pv = pi(v), pv1 = pi(v1), pv2 = pi(v2);

    // f*(g*v) - (fg)*v = pi(v)(f)*dg + pi(v)(g)*df
    elem("assoc", ops.sub(ops.sub(star(f, star(g, v)), star(f * g, v)),
                          ops.add(star(pv.apply(f), d(g)), star(pv.apply(g), d(f)))));
    VertexElement b12 = ops.bracket(v1, v2);
    elem("leib", ops.sub(ops.bracket(v1, star(f, v2)), ops.add(star(pv1.apply(f), v2), star(f, b12))));
    RatFunc p12 = ops.pairing(v1, v2);
    elem("symm-bracket", ops.sub(ops.add(b12, ops.bracket(v2, v1)), d(p12)));
    field("anchor-lin", pi(star(f, v)) - f * pv);
    fn("pairing", ops.pairing(star(f, v1), v2) - f * p12 + pv1.apply(pv2.apply(f)));
    VertexElement b01 = ops.bracket(v, v1), b02 = ops.bracket(v, v2);
    fn("pairing-inv", pv.apply(p12) - ops.pairing(b01, v2) - ops.pairing(v1, b02));
    elem("deriv", ops.sub(d(f * g), ops.add(star(f, d(g)), star(g, d(f)))));
    elem("bracket-o", ops.sub(ops.bracket(v, d(f)), d(pv.apply(f))));
    fn("pairing-o", ops.pairing(v, d(f)) - pv.apply(f));
    fn("pairing-symm", p12 - ops.pairing(v2, v1));
    field("complex", pi(d(f)));
    elem("jacobi", ops.sub(ops.sub(ops.bracket(v, b12), ops.bracket(b01, v2)), ops.bracket(v1, b02)));
    field("anchor-morphism", pi(b12) - vf_bracket(pv1, pv2));
    return out;
  };
  return merge_outcomes(names, parallel_map(samples.size(), parallel, run));
}

AxiomReport check_vertex_axioms(const FrameEVA& V, const std::vector<VertexSample>& samples, bool parallel) {
  for (const auto& s : samples) {
    V.check(s.v);
    V.check(s.v1);
    V.check(s.v2);
  }
  return check_vertex_axioms(vertex_ops(V), samples, parallel);
}

}  // namespace algd
