#include "algd/courant.hpp"
#include "algd/errors.hpp"
#include "algd/parse.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace algd;

namespace {

DiffForm F(const std::string& s, const ContextPtr& ctx) { return parse_form(s, ctx); }

std::vector<MatrixForm> comps(const MatrixForm& w) {
  std::vector<MatrixForm> out;
  for (int k = 0; k < w.context()->dim(); ++k) out.push_back(mat_interior(VectorField::coordinate(w.context(), k), w));
  return out;
}

DiffForm pair_form(const MatrixForm& a, const std::vector<MatrixForm>& blocks) {
  std::vector<RatFunc> v;
  for (const auto& b : blocks) v.push_back(mat_trace_product(a, b));
  return one_form(a.context(), v);
}

// Closed form of the bracket on arbitrary sections, expanded by hand from
// the generator formulas: used only as an oracle.
CourantElement closed_form_bracket(const CourantStructure& s, const CourantElement& e1, const CourantElement& e2) {
  const ContextPtr& ctx = s.context();
  const int n = ctx->dim();
  const MatrixForm& w = s.omega();
  auto nab = [&](const VectorField& xi, const MatrixForm& a) {
    MatrixForm wx = mat_interior(xi, w);
    return mat_apply(xi, a) + mat_wedge(wx, a) - mat_wedge(a, wx);
  };
  MatrixForm c = s.curvature();
  auto c_xi = [&](const VectorField& xi) {  // blocks c(xi, d_k)
    std::vector<MatrixForm> out;
    for (int k = 0; k < n; ++k) out.push_back(mat_evaluate(c, {xi, VectorField::coordinate(ctx, k)}));
    return out;
  };
  std::vector<MatrixForm> nabla_a1;
  for (int k = 0; k < n; ++k) nabla_a1.push_back(nab(VectorField::coordinate(ctx, k), e1.a));

  CourantElement out = CourantElement::zero(s);
  out.xi = vf_bracket(e1.xi, e2.xi);
  out.a = nab(e1.xi, e2.a) - nab(e2.xi, e1.a) + mat_wedge(e1.a, e2.a) - mat_wedge(e2.a, e1.a);
  if (s.rank() > 0) out.a = out.a + mat_evaluate(c, {e1.xi, e2.xi});
  out.alpha = lie_derivative(e1.xi, e2.alpha) - interior(e2.xi, ext_d(e1.alpha)) +
              interior(e2.xi, interior(e1.xi, s.H()));
  if (s.rank() > 0)
    out.alpha += pair_form(e1.a, c_xi(e2.xi)) - pair_form(e2.a, c_xi(e1.xi)) +
                 [&] {
                   std::vector<RatFunc> v;
                   for (int k = 0; k < n; ++k) v.push_back(mat_trace_product(nabla_a1[k], e2.a));
                   return one_form(ctx, v);
                 }();
  return out;
}

}  // namespace

TEST_SUITE("courant") {

TEST_CASE("bracket examples") {
  auto ctx = standard_context(3);
  auto q0 = CourantStructure::exact(ctx, DiffForm(ctx));
  VectorField d1 = VectorField::coordinate(ctx, 0), d2 = VectorField::coordinate(ctx, 1);
  CourantElement x = CourantElement::field(q0, d1);
  CourantElement y = CourantElement::form(q0, F("x1 * d(x2)", ctx));
  CHECK(dorfman_bracket(q0, x, y) == CourantElement::form(q0, F("d(x2)", ctx)));

  DiffForm H = F("x3 * d(x1)^d(x2)^d(x3)", ctx);
  auto qh = CourantStructure::exact(ctx, H);
  // H(d1, d2, .) has value H(d1,d2,d3) = x3 on d3
  RatFunc h123 = evaluate(H, {d1, d2, VectorField::coordinate(ctx, 2)});
  CourantElement b = dorfman_bracket(qh, CourantElement::field(qh, d1), CourantElement::field(qh, d2));
  CHECK(b == CourantElement::form(qh, h123 * DiffForm::dx(ctx, 2)));
  CHECK(h123 == RatFunc::var(2));
}

TEST_CASE("[q,q] is half the derivative of <q,q>") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(11);
  auto s = test::admissible_structure(test::random_connection(rng, ctx, 2));
  CourantElement q = CourantElement::zero(s);
  q.a = MatrixForm::elementary(ctx, 2, 0, 1);
  q.xi = VectorField::coordinate(ctx, 0);
  CourantElement b = dorfman_bracket(s, q, q);
  CHECK(b.a.is_zero());
  CHECK(b.xi.is_zero());
  CHECK(b == RatFunc(Rational(1, 2)) * courant_derivation(s, courant_pairing(s, q, q)));
}

TEST_CASE("pairing examples") {
  auto ctx = standard_context(2);
  auto s = CourantStructure::extension(Connection::flat(ctx, 2), DiffForm(ctx));
  auto E = [&](int i, int j) { return CourantElement::matrix(s, MatrixForm::elementary(ctx, 2, i, j)); };
  CHECK(courant_pairing(s, CourantElement::form(s, DiffForm::dx(ctx, 0)),
                        CourantElement::field(s, VectorField::coordinate(ctx, 0))) == RatFunc(1L));
  CHECK(courant_pairing(s, E(0, 1), E(1, 0)) == RatFunc(1L));
  CourantElement mixed = CourantElement::form(s, DiffForm::dx(ctx, 0));
  mixed.xi = VectorField::coordinate(ctx, 1);
  CHECK(courant_pairing(s, E(0, 0), mixed).is_zero());
}

TEST_CASE("element validation") {
  auto ctx = standard_context(2);
  auto s = CourantStructure::exact(ctx, DiffForm(ctx));
  auto other = CourantStructure::extension(Connection::flat(ctx, 1), DiffForm(ctx));
  CHECK_THROWS_AS(dorfman_bracket(s, CourantElement::zero(other), CourantElement::zero(s)), StructureMismatch);
  CHECK_THROWS_AS(CourantStructure::exact(ctx, F("d(x1)", ctx)), DegreeError);
}

TEST_CASE("generator expansion agrees with the closed form") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(5);
  for (int r : {0, 1, 2}) {
    CourantStructure s = r == 0 ? CourantStructure::exact(ctx, test::random_form(rng, ctx, 3))
                                : CourantStructure::extension(test::random_connection(rng, ctx, r),
                                                              test::random_form(rng, ctx, 3));
    for (int t = 0; t < 6; ++t) {
      CourantElement x = test::random_element(rng, s), y = test::random_element(rng, s);
      CHECK(dorfman_bracket(s, x, y) == closed_form_bracket(s, x, y));
    }
  }
}

TEST_CASE("axioms hold for admissible structures") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(7);
  auto q0 = CourantStructure::exact(ctx, DiffForm(ctx));
  auto rep0 = check_courant_axioms(q0, test::random_triples(rng, q0, 6), test::random_functions(rng, 3, 3));
  CHECK(rep0.all_passed());
  auto s = test::admissible_structure(test::random_connection(rng, ctx, 2));
  REQUIRE(s.admissible());
  auto rep = check_courant_axioms(s, test::random_triples(rng, s, 6), test::random_functions(rng, 3, 3), true);
  for (const auto& r : rep.results) {
    INFO(r.name);
    CHECK(r.passed);
    CHECK(r.checked == 6);
  }
}

TEST_CASE("jacobiator matches the predicted form") {
  auto ctx = standard_context(4);
  auto H = F("x1 * d(x2)^d(x3)^d(x4)", ctx);
  auto s = CourantStructure::exact(ctx, H);
  std::vector<VectorField> d;
  for (int k = 0; k < 4; ++k) d.push_back(VectorField::coordinate(ctx, k));
  CourantElement J = jacobiator(s, CourantElement::field(s, d[1]), CourantElement::field(s, d[2]),
                                CourantElement::field(s, d[3]));
  DiffForm expect = interior(d[3], interior(d[2], interior(d[1], ext_d(H))));
  CHECK(J == CourantElement::form(s, expect));
  CHECK(expect == DiffForm::dx(ctx, 0).scaled(-1));
  CHECK(jacobiator_predicted(s, d[1], d[2], d[3]) == expect);

  // failing Jacobi check reports the predicted value
  std::mt19937_64 rng(3);
  auto rep = check_courant_axioms(s, {{CourantElement::field(s, d[1]), CourantElement::field(s, d[2]),
                                       CourantElement::field(s, d[3])}},
                                  {RatFunc::var(0)});
  CHECK_FALSE(rep.passed("jacobi"));
  CHECK(rep.passed("ip-symm"));
  REQUIRE(rep.find("jacobi")->witnesses.size() == 1);
  CHECK(rep.find("jacobi")->witnesses[0].find(CourantElement::form(s, expect).to_string()) != std::string::npos);

  CourantElement q = test::random_element(rng, s);
  CHECK(jacobiator(s, q, q, q).is_zero());
}

TEST_CASE("jacobiator on random fields, rank 2, non-admissible") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(21);
  auto base = test::admissible_structure(test::random_connection(rng, ctx, 2));
  auto s = twist_by_H(base, test::random_form(rng, ctx, 3));
  for (int t = 0; t < 4; ++t) {
    VectorField a = test::random_field(rng, ctx), b = test::random_field(rng, ctx), c = test::random_field(rng, ctx);
    CourantElement J = jacobiator(s, CourantElement::field(s, a), CourantElement::field(s, b),
                                  CourantElement::field(s, c));
    CHECK(J == CourantElement::form(s, jacobiator_predicted(s, a, b, c)));
  }
  // Jacobiator vanishes if an argument has no T-component
  CourantElement x = test::random_element(rng, s), y = test::random_element(rng, s);
  CourantElement z = test::random_element(rng, s);
  z.xi = VectorField(ctx);
  CHECK(jacobiator(s, x, y, z).is_zero());
  CHECK(jacobiator(s, z, x, y).is_zero());
}

TEST_CASE("twist_by_H") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(2);
  auto s = test::admissible_structure(test::random_connection(rng, ctx, 1));
  auto same = twist_by_H(s, DiffForm(ctx));
  CHECK(same.H() == s.H());
  auto closed = twist_by_H(s, ext_d(test::random_form(rng, ctx, 2)));
  CHECK(closed.admissible());
  DiffForm extra = test::random_form(rng, ctx, 3);
  auto t = twist_by_H(s, extra);
  VectorField a = test::random_field(rng, ctx), b = test::random_field(rng, ctx);
  CourantElement diff = dorfman_bracket(t, CourantElement::field(t, a), CourantElement::field(t, b)) -
                        dorfman_bracket(s, CourantElement::field(s, a), CourantElement::field(s, b));
  CHECK(diff == CourantElement::form(s, interior(b, interior(a, extra))));
}

TEST_CASE("exp_B") {
  auto ctx = standard_context(3);
  auto q0 = CourantStructure::exact(ctx, DiffForm(ctx));
  CourantElement e = CourantElement::field(q0, VectorField::coordinate(ctx, 0));
  CHECK(exp_B({DiffForm(ctx)}, e) == e);
  TwoFormMorphism B{F("x1 * d(x1)^d(x2)", ctx)};
  CHECK(exp_B(B, e) == CourantElement{F("x1 * d(x2)", ctx), MatrixForm(ctx, 0, 0), e.xi});

  std::mt19937_64 rng(17);
  auto s = test::admissible_structure(test::random_connection(rng, ctx, 2));
  std::vector<std::pair<CourantElement, CourantElement>> samples;
  for (int t = 0; t < 3; ++t) samples.emplace_back(test::random_element(rng, s), test::random_element(rng, s));
  TwoFormMorphism closed{ext_d(test::random_form(rng, ctx, 1))};
  auto phi_c = [&](const CourantElement& x) { return exp_B(closed, x); };
  CHECK(check_morphism(s, s, phi_c, samples).passed());
  TwoFormMorphism open{F("x3 * d(x1)^d(x2)", ctx)};
  REQUIRE_FALSE(open.closed());
  auto phi_o = [&](const CourantElement& x) { return exp_B(open, x); };
  MorphismCheck bad = check_morphism(s, s, phi_o, samples);
  CHECK(bad.pairings);
  CHECK_FALSE(bad.brackets);
  // it is a morphism from the dB-twisted structure
  CHECK(check_morphism(twist_by_H(s, ext_d(open.B)), s, phi_o, samples).passed());
}

TEST_CASE("cs_form") {
  auto ctx = standard_context(4);
  std::mt19937_64 rng(23);
  auto c1 = test::random_connection(rng, ctx, 2);
  CHECK(cs_form(c1, c1).is_zero());
  // abelian case: c ^ A + 1/2 dA ^ A
  auto a1 = test::random_connection(rng, ctx, 1), a2 = test::random_connection(rng, ctx, 1);
  DiffForm A = a2.omega.at(0, 0) - a1.omega.at(0, 0);
  DiffForm c = ext_d(a1.omega.at(0, 0));
  CHECK(cs_form(a1, a2) == wedge(c, A) + wedge(ext_d(A), A).scaled(Rational(1, 2)));
  for (int t = 0; t < 3; ++t) {
    auto x = test::random_connection(rng, ctx, 2), y = test::random_connection(rng, ctx, 2);
    auto px = mat_wedge_pair(curvature(x), curvature(x)), py = mat_wedge_pair(curvature(y), curvature(y));
    CHECK(ext_d(cs_form(x, y)) == (py - px).scaled(Rational(1, 2)));
    CHECK(cs_form(y, x) == -cs_form(x, y));
  }
  CHECK_THROWS_AS(cs_form(a1, c1), RankMismatch);
}

TEST_CASE("phi_change") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(29);
  auto c0 = test::random_connection(rng, ctx, 2), c1 = test::random_connection(rng, ctx, 2);
  auto s = test::admissible_structure(c0);
  CourantElement e = test::random_element(rng, s);
  CHECK(phi_change(s, c0, e) == e);

  MatrixForm A = c1.omega - c0.omega;
  auto Ak = comps(A);
  VectorField xi = test::random_field(rng, ctx);
  MatrixForm Axi = mat_interior(xi, A);
  CHECK(phi_change(s, c1, CourantElement::field(s, xi)) ==
        CourantElement{-pair_form(Axi, Ak).scaled(Rational(1, 2)), Axi, xi});
  MatrixForm a = test::random_matrix_form(rng, ctx, 2, 0);
  CHECK(phi_change(s, c1, CourantElement::matrix(s, a)) == CourantElement{-pair_form(a, Ak), a, VectorField(ctx)});

  auto src = CourantStructure::extension(c1, s.H() + cs_form(c0, c1));
  CHECK(src.admissible());
  std::vector<std::pair<CourantElement, CourantElement>> samples;
  for (int t = 0; t < 3; ++t) samples.emplace_back(test::random_element(rng, src), test::random_element(rng, src));
  auto phi = [&](const CourantElement& x) { return phi_change(s, c1, x); };
  CHECK(check_morphism(src, s, phi, samples).passed());
}

TEST_CASE("triple_composition") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 3; ++t) {
    auto c0 = test::random_connection(rng, ctx, 2), c1 = test::random_connection(rng, ctx, 2),
         c2 = test::random_connection(rng, ctx, 2);
    MatrixForm A = c1.omega - c0.omega, A2 = c2.omega - c1.omega;
    DiffForm B = triple_composition(c0, c1, c2).B;
    // the composite's field images are iota_xi(1/2 <A ^ A'>) = iota_xi(-1/2 <A' ^ A>)
    CHECK(B == mat_wedge_pair(A, A2).scaled(Rational(1, 2)));
    CHECK(B == mat_wedge_pair(A2, A).scaled(Rational(-1, 2)));
    // it twists by the sum of the three Chern-Simons forms
    CHECK(ext_d(B) == cs_form(c0, c1) + cs_form(c1, c2) + cs_form(c2, c0));
    CHECK(triple_composition(c0, c1, c0).B.is_zero());
    CHECK(triple_composition(c0, c0, c0).B.is_zero());
  }
}

TEST_CASE("curvature_courant") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(37);
  auto conn = test::random_connection(rng, ctx, 2);
  DiffForm H = test::random_form(rng, ctx, 3);
  auto s = CourantStructure::extension(conn, H);
  CourantCurvature cc = curvature_courant(s, canonical_lift(s));
  CHECK(cc.g_part == curvature(conn));
  CHECK(cc.c_rel == H);
  CHECK(cc.totally_skew);

  auto qh = CourantStructure::exact(ctx, H);
  CHECK(curvature_courant(qh, canonical_lift(qh)).c_rel == H);
  DiffForm alpha = test::random_form(rng, ctx, 2);
  CourantLift shifted = [&](const VectorField& xi) {
    return CourantElement{interior(xi, alpha), MatrixForm(ctx, 0, 0), xi};
  };
  CHECK(curvature_courant(qh, shifted).c_rel == H + ext_d(alpha));

  // a lift shifted by a g-valued 1-form B: induced connection omega + B
  MatrixForm B = test::random_matrix_form(rng, ctx, 2, 1);
  CourantLift tilted = isotropize(s, [&](const VectorField& xi) {
    return CourantElement{DiffForm(ctx), mat_interior(xi, B), xi};
  });
  CourantCurvature ct = curvature_courant(s, tilted);
  CHECK(ct.g_part == curvature(Connection(conn.omega + B)));
  CHECK(ct.totally_skew);

  CourantLift bad = [&](const VectorField& xi) {
    return CourantElement{xi[0] * DiffForm::dx(ctx, 0), MatrixForm(ctx, 0, 0), xi};
  };
  CHECK_THROWS_AS(curvature_courant(qh, bad), NotIsotropic);
  CourantLift nonlinear = [&](const VectorField& xi) {
    CourantElement e = CourantElement::field(qh, xi);
    e.alpha = DiffForm::dx(ctx, 0);
    return e;
  };
  CHECK_THROWS_AS(curvature_courant(qh, nonlinear), NotLinear);
}

TEST_CASE("isotropize") {
  auto ctx = standard_context(3);
  auto q0 = CourantStructure::exact(ctx, DiffForm(ctx));
  VectorField d1 = VectorField::coordinate(ctx, 0);
  CourantLift flat = canonical_lift(q0);
  CHECK(isotropize(q0, flat)(d1) == flat(d1));
  CHECK(curvature_courant(q0, isotropize(q0, flat)).c_rel.is_zero());
  // s(xi) = (iota_xi of the symmetric tensor x2 (dx1 dx2 + dx2 dx1) + dx3 dx3, xi)
  CourantLift sym = [&](const VectorField& xi) {
    std::vector<RatFunc> v{RatFunc::var(1) * xi[1], RatFunc::var(1) * xi[0], xi[2]};
    return CourantElement{one_form(ctx, v), MatrixForm(ctx, 0, 0), xi};
  };
  CHECK_FALSE(courant_pairing(q0, sym(d1), sym(VectorField::coordinate(ctx, 1))).is_zero());
  CourantLift iso = isotropize(q0, sym);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(courant_pairing(q0, iso(VectorField::coordinate(ctx, i)), iso(VectorField::coordinate(ctx, j))).is_zero());
  CourantLift nonlinear = [&](const VectorField& xi) {
    return CourantElement{DiffForm::dx(ctx, 0), MatrixForm(ctx, 0, 0), xi};
  };
  CHECK_THROWS_AS(isotropize(q0, nonlinear), NotLinear);
}

TEST_CASE("baer_sum of exact structures") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(41);
  DiffForm H1 = test::random_form(rng, ctx, 3), H2 = test::random_form(rng, ctx, 3);
  auto q1 = CourantStructure::exact(ctx, H1), q2 = CourantStructure::exact(ctx, H2);
  auto sum = baer_sum(q1, q2);
  CHECK(sum.H() == H1 + H2);
  CHECK(sum.rank() == 0);
  for (int t = 0; t < 4; ++t) {
    CourantElement a1 = test::random_element(rng, q1), b1 = test::random_element(rng, q1);
    CourantElement a2 = test::random_element(rng, q2), b2 = test::random_element(rng, q2);
    a2.xi = a1.xi;
    b2.xi = b1.xi;
    CourantElement lhs = baer_sum_map(q1, q2, dorfman_bracket(q1, a1, b1), dorfman_bracket(q2, a2, b2));
    CourantElement rhs = dorfman_bracket(sum, baer_sum_map(q1, q2, a1, a2), baer_sum_map(q1, q2, b1, b2));
    CHECK(lhs == rhs);
    CHECK(courant_pairing(q1, a1, b1) + courant_pairing(q2, a2, b2) ==
          courant_pairing(sum, baer_sum_map(q1, q2, a1, a2), baer_sum_map(q1, q2, b1, b2)));
    // (alpha, -alpha) is killed
    DiffForm al = test::random_form(rng, ctx, 1);
    CHECK(baer_sum_map(q1, q2, CourantElement::form(q1, al), CourantElement::form(q2, -al)).is_zero());
  }
  RatFunc f = test::random_poly(rng, 3);
  CHECK(baer_sum_map(q1, q2, courant_derivation(q1, f), CourantElement::zero(q2)) == courant_derivation(sum, f));
  auto ext = CourantStructure::extension(Connection::flat(ctx, 1), DiffForm(ctx));
  CHECK_THROWS_AS(baer_sum(ext, q1), StructureMismatch);
  CHECK_THROWS_AS(baer_sum(CourantStructure::exact(standard_context(2), DiffForm(standard_context(2))), q1),
                  ChartMismatch);
}

TEST_CASE("courant_difference") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(43);
  auto conn = test::random_connection(rng, ctx, 2);
  auto s = test::admissible_structure(conn);
  CHECK(courant_difference(s, s).H().is_zero());
  DiffForm K = ext_d(test::random_form(rng, ctx, 2));
  auto q = CourantStructure::exact(ctx, K);
  CHECK(courant_difference(baer_sum(q, s), s).H() == K);

  auto conn2 = test::random_connection(rng, ctx, 2);
  auto s2 = CourantStructure::extension(conn2, s.H() + cs_form(conn, conn2));
  CHECK(courant_difference(s2, s).H().is_zero());
  CHECK_THROWS_AS(courant_difference(s, test::admissible_structure(test::random_connection(rng, ctx, 1))),
                  PairingMismatch);

  // fiber-product model: the class map intertwines everything
  auto s1 = CourantStructure::extension(conn, s.H() + ext_d(test::random_form(rng, ctx, 2)));
  auto s2b = CourantStructure::extension(conn2, s1.H() + cs_form(conn, conn2) + K);
  auto Q = courant_difference(s2b, s1);
  CHECK(Q.H() == K);
  CHECK(Q.admissible());
  for (int t = 0; t < 3; ++t) {
    CourantElement e1 = test::random_element(rng, s1), f1 = test::random_element(rng, s1);
    DifferencePair p = difference_lift(s2b, s1, e1, test::random_form(rng, ctx, 1));
    DifferencePair r = difference_lift(s2b, s1, f1, test::random_form(rng, ctx, 1));
    DifferencePair br{dorfman_bracket(s2b, p.e2, r.e2), dorfman_bracket(s1, p.e1, r.e1)};
    CHECK(difference_class(s2b, s1, br) ==
          dorfman_bracket(Q, difference_class(s2b, s1, p), difference_class(s2b, s1, r)));
    CHECK(courant_pairing(s2b, p.e2, r.e2) - courant_pairing(s1, p.e1, r.e1) ==
          courant_pairing(Q, difference_class(s2b, s1, p), difference_class(s2b, s1, r)));
    // the diagonal g-hat dies
    CourantElement g1 = test::random_element(rng, s1);
    g1.xi = VectorField(ctx);
    DifferencePair diag = difference_lift(s2b, s1, g1, phi_change(conn2, conn, g1).alpha);
    CHECK(difference_class(s2b, s1, diag).is_zero());
  }
  RatFunc f = test::random_poly(rng, 3);
  DifferencePair df{courant_derivation(s2b, f), CourantElement::zero(s1)};
  CHECK(difference_class(s2b, s1, df) == courant_derivation(Q, f));
}

TEST_CASE("torsor_twist") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(47);
  auto single = torsor_twist(ctx, {{"s", DiffForm(ctx), DiffForm(ctx)}});
  CHECK(single.structure(0).H().is_zero());

  DiffForm w = test::random_form(rng, ctx, 2);
  DiffForm c0 = ext_d(test::random_form(rng, ctx, 2));
  auto model = torsor_twist(ctx, {{"a", DiffForm(ctx), c0}, {"b", w, c0 + ext_d(w)}});
  auto q0 = CourantStructure::exact(ctx, DiffForm(ctx));
  for (int t = 0; t < 4; ++t) {
    TorsorModel::Elem x{t % 2, test::random_element(rng, q0)}, y{(t / 2) % 2, test::random_element(rng, q0)};
    TorsorModel::Elem b = model.bracket(x, y);
    for (int base = 0; base < 2; ++base) {
      auto Qb = model.structure(base);
      CHECK(model.to_structure(b, base) ==
            dorfman_bracket(Qb, model.to_structure(x, base), model.to_structure(y, base)));
      CHECK(model.pairing(x, y) == courant_pairing(Qb, model.to_structure(x, base), model.to_structure(y, base)));
    }
    // representative independence
    TorsorModel::Elem b2 = model.bracket(model.relabel(x, 1 - x.label), model.relabel(y, 1 - y.label));
    CHECK(model.relabel(b2, b.label).q == b.q);
  }
  CHECK_THROWS_AS(torsor_twist(ctx, {{"a", DiffForm(ctx), DiffForm(ctx)}, {"b", w, DiffForm(ctx)}}),
                  InconsistentPresentation);
}

}  // TEST_SUITE
