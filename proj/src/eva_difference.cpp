#include "algd/errors.hpp"
#include "algd/vertex.hpp"

namespace algd {

namespace {

EvaPair pair_star(const FrameEVA& V2, const FrameEVA& V1, const RatFunc& f, const EvaPair& p) {
  return {V2.star(f, p.v2), V1.star(f, p.v1)};
}

EvaPair pair_add(const EvaPair& x, const EvaPair& y) { return {x.v2 + y.v2, x.v1 + y.v1}; }
EvaPair pair_sub(const EvaPair& x, const EvaPair& y) { return {x.v2 - y.v2, x.v1 - y.v1}; }

}  // namespace

EvaDifference::EvaDifference(FrameEVA V2, FrameEVA V1)
    : V2_(std::move(V2)), V1_(std::move(V1)), q_(CourantStructure::exact(V2_.context(), DiffForm(V2_.context()))) {
  if (!(*V2_.context() == *V1_.context())) throw ContextMismatch("algebroids live on different charts");
  const ContextPtr& ctx = context();
  const int n = ctx->dim();
  // extended from the frame of V1, so the splitting does not depend on coordinates
  for (int m = 0; m < n; ++m) raw_.push_back({V2_.lift(V1_.frame()[m]), V1_.generator(m)});
  std::vector<EvaPair> L;
  for (int k = 0; k < n; ++k) L.push_back(lift(VectorField::coordinate(ctx, k)));
  H_ = DiffForm(ctx);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      EvaPair C{V2_.bracket(L[i].v2, L[j].v2), V1_.bracket(L[i].v1, L[j].v1)};
      if (!V2_.anchor(C.v2).is_zero()) throw StructureMismatch("splitting is not a bracket morphism");
      for (int k = j + 1; k < n; ++k) {
        RatFunc h = V2_.pairing(C.v2, L[k].v2) - V1_.pairing(C.v1, L[k].v1);
        if (!h.is_zero()) H_.add_term(mask_of({i, j, k}), h);
      }
    }
  q_ = CourantStructure::exact(ctx, H_);
}

EvaPair EvaDifference::form(const DiffForm& alpha) const { return {V2_.form(alpha), V1_.zero()}; }

EvaPair EvaDifference::frame_splitting(const VectorField& xi) const {
  EvaPair out{V2_.zero(), V1_.zero()};
  std::vector<RatFunc> c = V1_.coefficients(xi);
  for (std::size_t m = 0; m < c.size(); ++m)
    if (!c[m].is_zero()) out = pair_add(out, pair_star(V2_, V1_, c[m], raw_[m]));
  return out;
}

// s(xi) - 1/2 sum_j <s(xi), s(d_j)> dx_j
EvaPair EvaDifference::lift(const VectorField& xi) const {
  EvaPair p = frame_splitting(xi);
  std::vector<RatFunc> vals;
  for (int j = 0; j < xi.dim(); ++j) {
    EvaPair r = frame_splitting(VectorField::coordinate(context(), j));
    vals.push_back(V2_.pairing(p.v2, r.v2) - V1_.pairing(p.v1, r.v1));
  }
  p.v2.alpha -= one_form(context(), vals).scaled(Rational(1, 2));
  return p;
}

bool EvaDifference::is_zero(const EvaPair& p) const {
  for (const auto& c : p.v2.g)
    if (!c.is_zero()) return false;
  for (const auto& c : p.v1.g)
    if (!c.is_zero()) return false;
  return p.v2.alpha == p.v1.alpha;
}

DiffForm EvaDifference::omega_part(const EvaPair& p) const {
  if (!V2_.anchor(p.v2).is_zero() || !V1_.anchor(p.v1).is_zero())
    throw StructureMismatch("class has a nonzero anchor");
  return p.v2.alpha - p.v1.alpha;
}

CourantElement EvaDifference::to_structure(const EvaPair& p) const {
  VectorField xi = V2_.anchor(p.v2);
  if (V1_.anchor(p.v1) != xi) throw StructureMismatch("pair has different anchors");
  CourantElement out = CourantElement::form(q_, omega_part(pair_sub(p, lift(xi))));
  out.xi = xi;
  return out;
}

StructureOps<EvaPair> EvaDifference::ops() const {
  const EvaDifference self = *this;
  StructureOps<EvaPair> o;
  o.bracket = [self](const EvaPair& x, const EvaPair& y) {
    return EvaPair{self.V2_.bracket(x.v2, y.v2), self.V1_.bracket(x.v1, y.v1)};
  };
  o.pairing = [self](const EvaPair& x, const EvaPair& y) {
    return self.V2_.pairing(x.v2, y.v2) - self.V1_.pairing(x.v1, y.v1);
  };
  o.anchor = [self](const EvaPair& x) { return self.V2_.anchor(x.v2); };
  o.derivation = [self](const RatFunc& f) { return EvaPair{self.V2_.derivation(f), self.V1_.zero()}; };
  o.scale = [self](const RatFunc& f, const EvaPair& x) { return pair_star(self.V2_, self.V1_, f, x); };
  o.add = pair_add;
  o.sub = pair_sub;
  o.is_zero = [self](const EvaPair& x) { return self.is_zero(x); };
  o.show = [self](const EvaPair& x) {
    const Context& c = *self.context();
    return "[" + x.v2.to_string(c) + ", " + x.v1.to_string(c) + "]";
  };
  return o;
}

EvaDifference eva_difference(const FrameEVA& V2, const FrameEVA& V1) { return EvaDifference(V2, V1); }

}  // namespace algd
