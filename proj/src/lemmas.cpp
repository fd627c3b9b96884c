#include "algd/lemmas.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "algd/cech.hpp"
#include "algd/errors.hpp"
#include "algd/sampling.hpp"

namespace algd {

namespace {

struct Tally {
  LemmaResult r;
  explicit Tally(std::string name) { r.name = std::move(name); }
  void check(bool ok, const std::string& witness) {
    ++r.checked;
    if (ok) return;
    r.passed = false;
    if (r.witnesses.size() < 8) r.witnesses.push_back(witness);
  }
  void absorb(const AxiomReport& rep, const std::string& prefix) {
    for (const auto& a : rep.results) {
      r.checked += a.checked;
      if (a.passed) continue;
      r.passed = false;
      for (const auto& w : a.witnesses)
        if (r.witnesses.size() < 8) r.witnesses.push_back(prefix + a.name + ": " + w);
    }
  }
};

RatFunc X(int i) { return RatFunc::var(i); }

int max_degree(const DiffForm& a) {
  int deg = 0;
  for (const auto& [m, f] : a.terms()) deg = std::max(deg, f.num().total_degree());
  return deg;
}

CourantStructure admissible(const Connection& conn) {
  DiffForm half = mat_wedge_pair(curvature(conn), curvature(conn)).scaled(Rational(1, 2));
  return CourantStructure::extension(conn, ansatz_primitive(half, max_degree(half) + 1));
}

std::string show_conn(const Connection& c) { return c.omega.to_string(); }

// composite of x1 -> x1 + x2 x3 and x2 -> x2 + x1 x3
FrameEVA sheared3(const ContextPtr& ctx) {
  ChartMap a{ctx, {X(0) + X(1) * X(2), X(1), X(2)}};
  ChartMap ai{ctx, {X(0) - X(1) * X(2), X(1), X(2)}};
  ChartMap b{ctx, {X(0), X(1) + X(0) * X(2), X(2)}};
  ChartMap bi{ctx, {X(0), X(1) - X(0) * X(2), X(2)}};
  return FrameEVA::sheared(a.compose(b), bi.compose(ai));
}

LemmaResult courant_admissible(Sampler& S, const LemmaOptions& opt) {
  Tally t("courant-axioms-admissible");
  auto ctx = standard_context(opt.axiom_vars);
  Connection conn = S.connection(ctx, 2);
  CourantStructure s = admissible(conn);
  t.check(s.admissible(), "dH != 1/2 <c^c> for omega = " + show_conn(conn));
  AxiomReport rep = check_courant_axioms(s, S.triples(s, opt.samples), S.functions(ctx->dim(), 3), opt.parallel);
  t.absorb(rep, "omega = " + show_conn(conn) + ", H = " + s.H().to_string() + "; ");
  return t.r;
}

LemmaResult courant_inadmissible(Sampler& S, const LemmaOptions& opt) {
  Tally t("courant-axioms-inadmissible");
  auto ctx = standard_context(opt.axiom_vars);
  Connection conn = S.connection(ctx, 2);
  CourantStructure base = admissible(conn);
  DiffForm K(ctx);
  for (int tries = 0; tries < 50 && ext_d(K).is_zero(); ++tries) K = S.form(ctx, 3);
  if (ext_d(K).is_zero()) K = DiffForm::term(ctx, mask_of({1, 2, 3 % ctx->dim()}), X(0));
  CourantStructure s = twist_by_H(base, K);
  const int n = ctx->dim();
  DiffForm F = mat_wedge_pair(s.curvature(), s.curvature()).scaled(Rational(-1, 2)) + ext_d(s.H());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        VectorField a = VectorField::coordinate(ctx, i), b = VectorField::coordinate(ctx, j),
                    c = VectorField::coordinate(ctx, k);
        CourantElement J = jacobiator(s, CourantElement::field(s, a), CourantElement::field(s, b),
                                      CourantElement::field(s, c));
        DiffForm expect = interior(c, interior(b, interior(a, F)));
        t.check(J == CourantElement::form(s, expect), "coordinate triple (" + std::to_string(i + 1) + "," +
                                                          std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                                          "), H = " + s.H().to_string() + ": got " + J.to_string());
      }
  return t.r;
}

LemmaResult jacobiator_dual_path(Sampler& S, const LemmaOptions& opt) {
  Tally t("jacobiator-dual-path");
  auto ctx = standard_context(3);
  CourantStructure s = twist_by_H(admissible(S.connection(ctx, 2)), S.form(ctx, 3));
  for (int k = 0; k < opt.samples; ++k) {
    VectorField a = S.field(ctx), b = S.field(ctx), c = S.field(ctx);
    CourantElement J =
        jacobiator(s, CourantElement::field(s, a), CourantElement::field(s, b), CourantElement::field(s, c));
    t.check(J == CourantElement::form(s, jacobiator_predicted(s, a, b, c)),
            "fields " + a.to_string() + ", " + b.to_string() + ", " + c.to_string());
  }
  return t.r;
}

LemmaResult exp_b_iff_closed(Sampler& S, const LemmaOptions& opt) {
  Tally t("exp-b-iff-closed");
  auto ctx = standard_context(3);
  CourantStructure s = admissible(S.connection(ctx, 1));
  for (int k = 0; k < opt.samples; ++k) {
    TwoFormMorphism B{k % 2 ? S.form(ctx, 2) : ext_d(S.form(ctx, 1))};
    std::vector<std::pair<CourantElement, CourantElement>> samples;
    for (int m = 0; m < 2; ++m) {
      CourantElement x = S.element(s);
      samples.emplace_back(x, S.element(s));
    }
    auto phi = [&](const CourantElement& x) { return exp_B(B, x); };
    MorphismCheck mc = check_morphism(s, s, phi, samples);
    std::string tag = "B = " + B.B.to_string();
    t.check(mc.pairings && mc.anchors, tag + ": pairing not preserved");
    t.check(mc.brackets == B.closed(), tag + (B.closed() ? ": closed B is not a morphism" : ": open B is a morphism"));
    if (!B.closed()) {
      CourantStructure src = twist_by_H(s, opt.mutation == "exp-b-twist" ? -ext_d(B.B) : ext_d(B.B));
      t.check(check_morphism(src, s, phi, samples).passed(), tag + ": bracket defect is not the dB-twist");
    }
  }
  return t.r;
}

LemmaResult phi_change_morphism(Sampler& S, const LemmaOptions& opt) {
  Tally t("phi-change-morphism");
  auto ctx = standard_context(3);
  for (int k = 0; k < std::max(1, opt.samples / 5); ++k) {
    Connection c0 = S.connection(ctx, 2), c1 = S.connection(ctx, 2);
    CourantStructure s = admissible(c0);
    CourantStructure src = CourantStructure::extension(c1, s.H() + cs_form(c0, c1));
    std::vector<std::pair<CourantElement, CourantElement>> samples;
    for (int m = 0; m < 3; ++m) {
      CourantElement x = S.element(src);
      samples.emplace_back(x, S.element(src));
    }
    MorphismCheck mc = check_morphism(src, s, [&](const CourantElement& x) { return phi_change(s, c1, x); }, samples);
    t.check(mc.passed(), "omega = " + show_conn(c0) + ", omega' = " + show_conn(c1) +
                             (mc.witnesses.empty() ? "" : ": " + mc.witnesses.front()));
  }
  return t.r;
}

LemmaResult three_conns(Sampler& S, const LemmaOptions& opt) {
  Tally t("three-conns");
  auto ctx = standard_context(3);
  const Rational half = opt.mutation == "three-conns-sign" ? Rational(-1, 2) : Rational(1, 2);
  for (int k = 0; k < opt.samples; ++k) {
    Connection c0 = S.connection(ctx, 2), c1 = S.connection(ctx, 2), c2 = S.connection(ctx, 2);
    MatrixForm A = c1.omega - c0.omega, A2 = c2.omega - c1.omega;
    DiffForm B = triple_composition(c0, c1, c2).B;
    std::string tag = "omega = " + show_conn(c0) + ", omega' = " + show_conn(c1) + ", omega'' = " + show_conn(c2);
    t.check(B == mat_wedge_pair(A, A2).scaled(half), tag + ": B = " + B.to_string());
    t.check(ext_d(B) == cs_form(c0, c1) + cs_form(c1, c2) + cs_form(c2, c0), tag + ": dB is not the CS sum");
    t.check(triple_composition(c0, c1, c0).B.is_zero(), tag + ": degenerate composite is not the identity");
  }
  return t.r;
}

LemmaResult cs_transgression(Sampler& S, const LemmaOptions& opt) {
  Tally t("cs-transgression");
  auto ctx = standard_context(4);
  for (int k = 0; k < opt.samples; ++k) {
    Connection x = S.connection(ctx, 2), y = S.connection(ctx, 2);
    DiffForm px = mat_wedge_pair(curvature(x), curvature(x)), py = mat_wedge_pair(curvature(y), curvature(y));
    DiffForm P = cs_form(x, y);
    if (opt.mutation == "cs-sign") P = -P;
    t.check(ext_d(P) == (py - px).scaled(Rational(1, 2)), "omega = " + show_conn(x) + ", omega' = " + show_conn(y));
  }
  return t.r;
}

LemmaResult c_rel_skewness(Sampler& S, const LemmaOptions& opt) {
  Tally t("c-rel-skewness");
  auto ctx = standard_context(3);
  for (int k = 0; k < std::max(1, opt.samples / 5); ++k) {
    Connection conn = S.connection(ctx, 2);
    DiffForm H = S.form(ctx, 3);
    CourantStructure s = CourantStructure::extension(conn, H);
    CourantCurvature cc = curvature_courant(s, canonical_lift(s));
    t.check(cc.totally_skew && cc.c_rel == H, "canonical lift, H = " + H.to_string());
    MatrixForm B = S.matrix(ctx, 2, 1);
    CourantLift tilted = isotropize(s, [&](const VectorField& xi) {
      return CourantElement{DiffForm(ctx), mat_interior(xi, B), xi};
    });
    CourantCurvature ct = curvature_courant(s, tilted);
    t.check(ct.totally_skew, "tilted lift by " + B.to_string());
    t.check(ct.g_part == curvature(Connection(conn.omega + B)), "tilted lift curvature, B = " + B.to_string());
  }
  return t.r;
}

LemmaResult baer_round_trip(Sampler& S, const LemmaOptions& opt) {
  Tally t("baer-round-trip");
  auto ctx = standard_context(3);
  for (int k = 0; k < std::max(1, opt.samples / 5); ++k) {
    DiffForm H1 = S.form(ctx, 3), H2 = S.form(ctx, 3);
    CourantStructure q1 = CourantStructure::exact(ctx, H1), q2 = CourantStructure::exact(ctx, H2);
    CourantStructure sum = baer_sum(q1, q2);
    std::string tag = "H1 = " + H1.to_string() + ", H2 = " + H2.to_string();
    t.check(sum.H() == H1 + H2, tag + ": sum has H = " + sum.H().to_string());
    CourantElement a1 = S.element(q1), b1 = S.element(q1), a2 = S.element(q2), b2 = S.element(q2);
    a2.xi = a1.xi;
    b2.xi = b1.xi;
    t.check(baer_sum_map(q1, q2, dorfman_bracket(q1, a1, b1), dorfman_bracket(q2, a2, b2)) ==
                dorfman_bracket(sum, baer_sum_map(q1, q2, a1, a2), baer_sum_map(q1, q2, b1, b2)),
            tag + ": sum map is not a bracket morphism");
    t.check(courant_pairing(q1, a1, b1) + courant_pairing(q2, a2, b2) ==
                courant_pairing(sum, baer_sum_map(q1, q2, a1, a2), baer_sum_map(q1, q2, b1, b2)),
            tag + ": sum map changes pairings");

    CourantStructure s = admissible(S.connection(ctx, 2));
    DiffForm K = ext_d(S.form(ctx, 2));
    CourantStructure q = CourantStructure::exact(ctx, K);
    t.check(courant_difference(baer_sum(q, s), s).H() == K, "difference of a sum, K = " + K.to_string());
  }
  return t.r;
}

LemmaResult cancellation_flat(Sampler& S, const LemmaOptions& opt) {
  Tally t("cancellation-flat");
  auto ctx = standard_context(3);
  for (int k = 0; k < std::max(1, opt.samples / 5); ++k) {
    Connection conn = S.connection(ctx, 2);
    CourantStructure s = admissible(conn);
    CourantStructure d = courant_difference(s, s);
    t.check(d.rank() == 0 && d.H().is_zero(), "omega = " + show_conn(conn) + ": H = " + d.H().to_string());
    t.check(curvature_courant(d, canonical_lift(d)).c_rel.is_zero(), "omega = " + show_conn(conn) + ": not flat");
  }
  return t.r;
}

std::vector<VertexSample> vertex_samples(Sampler& S, const FrameEVA& V, int count) {
  std::vector<VertexSample> out;
  for (int i = 0; i < count; ++i) {
    VertexSample s;
    s.v = S.vertex(V);
    s.v1 = S.vertex(V);
    s.v2 = S.vertex(V);
    s.f = S.poly(V.dim());
    s.g = S.poly(V.dim());
    out.push_back(std::move(s));
  }
  return out;
}

LemmaResult vertex_axioms(Sampler& S, const LemmaOptions& opt) {
  Tally t("vertex-axioms");
  auto ctx = standard_context(3);
  for (const FrameEVA& V : {FrameEVA::coordinate(ctx), sheared3(ctx)}) {
    StructureOps<VertexElement> ops = vertex_ops(V);
    if (opt.mutation == "vertex-pairing") {
      auto p = ops.pairing;
      ops.pairing = [p](const VertexElement& x, const VertexElement& y) { return RatFunc(2L) * p(x, y); };
    }
    std::string frame;
    for (const auto& f : V.frame()) frame += f.to_string() + " ";
    t.absorb(check_vertex_axioms(ops, vertex_samples(S, V, opt.samples), opt.parallel), "frame " + frame + "; ");
  }
  return t.r;
}

LemmaResult truncated_axioms(Sampler& S, const LemmaOptions& opt) {
  Tally t("truncated-axioms");
  auto ctx = standard_context(3);
  for (const FrameEVA& V : {FrameEVA::coordinate(ctx), sheared3(ctx)}) {
    std::vector<TruncatedSample> samples;
    for (int i = 0; i < opt.samples; ++i) {
      TruncatedSample s;
      s.a = S.poly(3);
      s.b = S.poly(3);
      s.c = S.poly(3);
      s.x = S.vertex(V);
      s.y = S.vertex(V);
      s.z = S.vertex(V);
      samples.push_back(std::move(s));
    }
    TruncatedView T(V, opt.mutation == "truncated-sign" ? -1 : 1);
    t.absorb(check_truncated_axioms(T, samples, opt.parallel), "");
  }
  return t.r;
}

LemmaResult eva_difference_axioms(Sampler& S, const LemmaOptions& opt) {
  Tally t("eva-difference-axioms");
  auto ctx = standard_context(3);
  FrameEVA V2 = sheared3(ctx), V1 = FrameEVA::coordinate(ctx);
  EvaDifference D = eva_difference(V2, V1);
  auto pair = [&] {
    VertexElement v1 = S.vertex(V1);
    VertexElement v2 = V2.lift(V1.anchor(v1));
    v2.alpha += S.form(ctx, 1);
    return EvaPair{v2, v1};
  };
  std::vector<std::array<EvaPair, 3>> triples;
  for (int i = 0; i < std::max(1, opt.samples / 2); ++i) {
    EvaPair a = pair(), b = pair(), c = pair();
    triples.push_back({a, b, c});
  }
  t.absorb(check_courant_like(D.ops(), triples, S.functions(3, 3), opt.parallel), "");
  for (const auto& tr : triples) {
    CourantElement x = D.to_structure(tr[0]), y = D.to_structure(tr[1]);
    t.check(D.to_structure(D.ops().bracket(tr[0], tr[1])) == dorfman_bracket(D.structure(), x, y),
            "class map does not intertwine brackets");
  }
  return t.r;
}

LemmaResult cocycle_closures(Sampler& S, const LemmaOptions& opt) {
  Tally t("cocycle-closures");
  {
    auto ctx = make_context({"x1", "x2"});
    CoverSpec cover = CoverSpec::complete(ctx, {"U0", "U1", "U2"});
    BundleCocycle L(cover, 1,
                    {{{0, 1}, MatrixForm::functions(ctx, 1, {X(0)})},
                     {{1, 2}, MatrixForm::functions(ctx, 1, {X(1)})},
                     {{0, 2}, MatrixForm::functions(ctx, 1, {X(0) * X(1)})}});
    CharacteristicCocycle pi = pontryagin_cocycle(cover, L, induced_connections(cover, L, {{}, {}, {}}));
    DiffForm l1 = DiffForm::term(ctx, mask_of({0}), RatFunc(1L) / X(0));
    DiffForm l2 = DiffForm::term(ctx, mask_of({1}), RatFunc(1L) / X(1));
    t.check(pi.c40.is_zero() && pi.c31.is_zero() && pi.c22.at({0, 1, 2}) == -wedge(l1, l2),
            "dlog fixture: Pi22 = " + pi.c22.at({0, 1, 2}).to_string());
    t.check(total_is_zero(total_d(cover, pi.total())), "dlog fixture is not closed");
  }
  {
    auto ctx = standard_context(4);
    CoverSpec cover = CoverSpec::complete(ctx, {"U0", "U1", "U2"});
    MatrixForm g01 = MatrixForm::functions(ctx, 2, {1L, X(0) * X(1), 0L, 1L});
    MatrixForm g12 = MatrixForm::functions(ctx, 2, {1L, 0L, X(2) + X(3), 1L});
    BundleCocycle E(cover, 2, {{{0, 1}, g01}, {{1, 2}, g12}, {{0, 2}, mat_wedge(g01, g12)}});
    std::vector<std::optional<Connection>> seeds;
    for (int i = 0; i < 3; ++i) seeds.emplace_back(S.connection(ctx, 2));
    InducedConnections conns = induced_connections(cover, E, seeds);
    CharacteristicCocycle pi = pontryagin_cocycle(cover, E, conns);
    t.check(total_is_zero(total_d(cover, pi.total())), "rank-2 fixture is not closed");
    std::vector<DiffForm> H;
    for (const auto& c : conns.local)
      H.push_back(poincare_primitive(mat_wedge_pair(curvature(c), curvature(c)).scaled(Rational(1, 2))));
    HatPAssembly hp = hat_P_assembly(cover, E, conns, H);
    for (const auto& f : hp.failures) t.check(false, "hat P identity fails: " + f);
    t.check(true, "");
  }
  (void)opt;
  return t.r;
}

using LemmaFn = LemmaResult (*)(Sampler&, const LemmaOptions&);

const std::vector<std::pair<std::string, LemmaFn>>& registry() {
  static const std::vector<std::pair<std::string, LemmaFn>> r{
      {"courant-axioms-admissible", courant_admissible},
      {"courant-axioms-inadmissible", courant_inadmissible},
      {"jacobiator-dual-path", jacobiator_dual_path},
      {"exp-b-iff-closed", exp_b_iff_closed},
      {"phi-change-morphism", phi_change_morphism},
      {"three-conns", three_conns},
      {"cs-transgression", cs_transgression},
      {"c-rel-skewness", c_rel_skewness},
      {"baer-round-trip", baer_round_trip},
      {"cancellation-flat", cancellation_flat},
      {"vertex-axioms", vertex_axioms},
      {"truncated-axioms", truncated_axioms},
      {"eva-difference-axioms", eva_difference_axioms},
      {"cocycle-closures", cocycle_closures},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& lemma_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : registry()) out.push_back(n);
    return out;
  }();
  return names;
}

const std::vector<std::string>& mutation_names() {
  static const std::vector<std::string> names{"cs-sign", "three-conns-sign", "exp-b-twist", "vertex-pairing",
                                              "truncated-sign"};
  return names;
}

LemmaResult run_lemma(const std::string& name, const LemmaOptions& opt) {
  const auto& reg = registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == name; });
  if (it == reg.end()) throw ValidationError("unknown lemma '" + name + "'");
  if (!opt.mutation.empty() &&
      std::find(mutation_names().begin(), mutation_names().end(), opt.mutation) == mutation_names().end())
    throw ValidationError("unknown mutation '" + opt.mutation + "'");
  // each lemma draws from its own stream, so a selection does not shift the others
  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                    static_cast<std::uint32_t>(it - reg.begin())};
  std::uint32_t parts[2];
  seq.generate(parts, parts + 2);
  Sampler S((std::uint64_t(parts[0]) << 32) | parts[1]);
  try {
    return it->second(S, opt);
  } catch (const Error& e) {
    LemmaResult r;
    r.name = name;
    r.passed = false;
    r.witnesses.push_back(std::string(e.kind()) + ": " + e.what());
    return r;
  }
}

std::vector<LemmaResult> verify_lemmas(const std::vector<std::string>& selection, const LemmaOptions& opt) {
  const std::vector<std::string>& names = selection.empty() ? lemma_names() : selection;
  std::vector<LemmaResult> out;
  for (const auto& n : names) out.push_back(run_lemma(n, opt));
  return out;
}

}  // namespace algd
