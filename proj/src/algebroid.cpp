#include "algd/algebroid.hpp"

#include "algd/errors.hpp"

namespace algd {

Connection::Connection(MatrixForm w) : omega(std::move(w)) {
  if (omega.degree() != 1 && !omega.is_zero()) throw DegreeError("connection form must have degree 1");
}

Connection Connection::flat(ContextPtr ctx, int rank) { return Connection(MatrixForm(std::move(ctx), rank, 1)); }

MatrixForm Connection::at(const VectorField& xi) const {
  if (omega.is_zero()) return MatrixForm(omega.context(), omega.rank(), 0);
  return mat_interior(xi, omega);
}

AlgElement Connection::lift(const VectorField& xi) const { return {at(xi), xi}; }

static MatrixForm commutator(const MatrixForm& a, const MatrixForm& b) { return mat_wedge(a, b) - mat_wedge(b, a); }

AlgElement atiyah_bracket(const AlgElement& e1, const AlgElement& e2) {
  if (e1.m.rank() != e2.m.rank() || !(*e1.xi.context() == *e2.xi.context()))
    throw ChartMismatch("Atiyah elements from different charts");
  MatrixForm m = commutator(e1.m, e2.m) + mat_apply(e1.xi, e2.m) - mat_apply(e2.xi, e1.m);
  return {m, vf_bracket(e1.xi, e2.xi)};
}

MatrixForm curvature(const Connection& conn) {
  const MatrixForm& w = conn.omega;
  MatrixForm c = mat_ext_d(w) + mat_wedge(w, w);
  if (c.is_zero()) return MatrixForm(w.context(), w.rank(), 2);
  return c;
}

RatFunc ghat_apply(const GhatElement& g, const AlgElement& a) {
  return mat_trace_product(g.dual_matrix, a.m) + evaluate(g.dual_form, {a.xi});
}

void check_ghat(const GhatElement& g) {
  if (g.dual_matrix != g.b) throw ChartMismatch("functional does not restrict to Tr(b .) on g");
}

GhatElement ghat_element(const DiffForm& form_part, const MatrixForm& b) { return {b, form_part, b}; }

GhatElement ghat_bracket(const GhatElement& g1, const GhatElement& g2) {
  check_ghat(g1);
  check_ghat(g2);
  const ContextPtr& ctx = g1.b.context();
  // (b1 . g2*)(c) = -g2*([b1, c]); [b1,(m,xi)] = ([b1,m] - xi(b1), 0)
  MatrixForm b = commutator(g1.b, g2.b);
  std::vector<RatFunc> vals;
  for (int k = 0; k < ctx->dim(); ++k)
    vals.push_back(mat_trace_product(g2.dual_matrix, mat_apply(VectorField::coordinate(ctx, k), g1.b)));
  return {b, one_form(ctx, vals), b};
}

RatFunc ghat_pairing(const GhatElement& g1, const GhatElement& g2) { return mat_trace_product(g1.b, g2.b); }

DiffForm leibniz_cocycle(const Connection& conn, const MatrixForm& a, const MatrixForm& b) {
  const ContextPtr& ctx = conn.context();
  std::vector<RatFunc> vals;
  for (int k = 0; k < ctx->dim(); ++k) {
    AlgElement br = atiyah_bracket(conn.lift(VectorField::coordinate(ctx, k)), {a, VectorField(ctx)});
    vals.push_back(mat_trace_product(br.m, b));
  }
  return one_form(ctx, vals);
}

InvarianceReport pairing_invariance_check(const AtiyahChart& chart, const std::vector<InvarianceSample>& samples) {
  InvarianceReport rep;
  VectorField zero(chart.ctx);
  for (const auto& s : samples) {
    RatFunc lhs = s.a.xi.apply(mat_trace_product(s.b, s.c));
    RatFunc rhs = mat_trace_product(atiyah_bracket(s.a, {s.b, zero}).m, s.c) +
                  mat_trace_product(s.b, atiyah_bracket(s.a, {s.c, zero}).m);
    if (lhs != rhs) {
      rep.passed = false;
      rep.witnesses.push_back("a=(" + s.a.m.to_string() + ", " + s.a.xi.to_string() + ") b=" + s.b.to_string() +
                              " c=" + s.c.to_string());
    }
  }
  return rep;
}

}  // namespace algd
