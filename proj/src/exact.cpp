#include "algd/courant.hpp"
#include "algd/errors.hpp"

namespace algd {

namespace {

void require_same_context(const CourantStructure& a, const CourantStructure& b) {
  if (!(*a.context() == *b.context())) throw ChartMismatch("structures live on different charts");
}

// s1's elements written over s2's connection: phi(nabla2, nabla1).
CourantElement transport(const CourantStructure& s2, const CourantStructure& s1, const CourantElement& e1) {
  if (!s1.connection()) return e1;
  return phi_change(*s2.connection(), *s1.connection(), e1);
}

}  // namespace

CourantStructure baer_sum(const CourantStructure& q, const CourantStructure& s) {
  require_same_context(q, s);
  if (q.rank() != 0) throw StructureMismatch("the first summand must be exact");
  return twist_by_H(s, q.H());
}

CourantElement baer_sum_map(const CourantStructure& q, const CourantStructure& s, const CourantElement& eq,
                            const CourantElement& es) {
  check_element(q, eq);
  check_element(s, es);
  if (eq.xi != es.xi) throw StructureMismatch("summands have different anchors");
  return {eq.alpha + es.alpha, es.a, es.xi};
}

CourantStructure courant_difference(const CourantStructure& s2, const CourantStructure& s1) {
  require_same_context(s2, s1);
  if (s2.rank() != s1.rank()) throw PairingMismatch("kernel pairings differ: ranks " + std::to_string(s2.rank()) +
                                                    " and " + std::to_string(s1.rank()));
  DiffForm H = s2.H() - s1.H();
  if (s2.rank() > 0) H -= cs_form(*s1.connection(), *s2.connection());
  return CourantStructure::exact(s2.context(), H);
}

CourantElement difference_class(const CourantStructure& s2, const CourantStructure& s1, const DifferencePair& p) {
  check_element(s2, p.e2);
  check_element(s1, p.e1);
  CourantElement t = transport(s2, s1, p.e1);
  if (t.a != p.e2.a || t.xi != p.e2.xi) throw StructureMismatch("pair has different images in A");
  CourantStructure q = CourantStructure::exact(s2.context(), DiffForm(s2.context()));
  CourantElement out = CourantElement::form(q, p.e2.alpha - t.alpha);
  out.xi = p.e2.xi;
  return out;
}

DifferencePair difference_lift(const CourantStructure& s2, const CourantStructure& s1, const CourantElement& e1,
                               const DiffForm& alpha2) {
  require_same_context(s2, s1);
  CourantElement t = transport(s2, s1, e1);
  return {CourantElement{alpha2, t.a, t.xi}, e1};
}

TorsorModel::TorsorModel(ContextPtr ctx, std::vector<TorsorLabel> labels)
    : ctx_(std::move(ctx)),
      labels_(std::move(labels)),
      q0_(CourantStructure::exact(ctx_, DiffForm(ctx_))) {
  if (labels_.empty()) throw InconsistentPresentation("presentation has no labels");
  for (auto& l : labels_) {
    if (!l.offset.context()) l.offset = DiffForm(ctx_);
    if (!l.curvature.context()) l.curvature = DiffForm(ctx_);
    if (!l.offset.is_zero() && l.offset.degree() != 2)
      throw InconsistentPresentation("offset of " + l.label + " is not a 2-form");
    if (!l.curvature.is_zero() && l.curvature.degree() != 3)
      throw InconsistentPresentation("curvature of " + l.label + " is not a 3-form");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j) {
      const auto &a = labels_[i], &b = labels_[j];
      if (b.curvature - a.curvature != ext_d(b.offset - a.offset))
        throw InconsistentPresentation("c(" + b.label + ") != c(" + a.label + ") + d(" + b.label + " - " + a.label +
                                       ")");
    }
}

// (s, q) ~ (s + w, q - iota_{pi q} w)
TorsorModel::Elem TorsorModel::relabel(const Elem& e, int target) const {
  DiffForm w = labels_.at(target).offset - labels_.at(e.label).offset;
  Elem out{target, e.q};
  out.q.alpha -= interior(e.q.xi, w);
  return out;
}

TorsorModel::Elem TorsorModel::bracket(const Elem& x, const Elem& y) const {
  Elem y1 = relabel(y, x.label);
  CourantElement b = dorfman_bracket(q0_, x.q, y1.q);
  b.alpha += interior(y.q.xi, interior(x.q.xi, labels_[x.label].curvature));
  return {x.label, b};
}

RatFunc TorsorModel::pairing(const Elem& x, const Elem& y) const {
  return courant_pairing(q0_, x.q, relabel(y, x.label).q);
}

CourantStructure TorsorModel::structure(int base) const {
  return CourantStructure::exact(ctx_, labels_.at(base).curvature);
}

CourantElement TorsorModel::to_structure(const Elem& e, int base) const { return relabel(e, base).q; }

TorsorModel torsor_twist(ContextPtr ctx, std::vector<TorsorLabel> labels) {
  return TorsorModel(std::move(ctx), std::move(labels));
}

}  // namespace algd
