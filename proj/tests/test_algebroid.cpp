#include "algd/algebroid.hpp"
#include "algd/errors.hpp"
#include "algd/parse.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace algd;

namespace {

bool ghat_equal(const GhatElement& a, const GhatElement& b) {
  return a.dual_matrix == b.dual_matrix && a.dual_form == b.dual_form && a.b == b.b;
}

GhatElement ghat_sum(const GhatElement& a, const GhatElement& b, int sign = 1) {
  if (sign > 0) return {a.dual_matrix + b.dual_matrix, a.dual_form + b.dual_form, a.b + b.b};
  return {a.dual_matrix - b.dual_matrix, a.dual_form - b.dual_form, a.b - b.b};
}

AlgElement random_alg(std::mt19937_64& rng, const ContextPtr& ctx, int r) {
  return {test::random_matrix_form(rng, ctx, r, 0), test::random_field(rng, ctx)};
}

}  // namespace

TEST_SUITE("algebroid") {

TEST_CASE("atiyah_bracket examples") {
  auto ctx = standard_context(2);
  VectorField zero(ctx);
  auto E = [&](int i, int j) { return MatrixForm::elementary(ctx, 2, i, j); };
  AlgElement r = atiyah_bracket({E(0, 1), zero}, {E(1, 0), zero});
  CHECK(r.m == E(0, 0) - E(1, 1));
  CHECK(r.xi.is_zero());
  AlgElement s = atiyah_bracket({MatrixForm(ctx, 2, 0), VectorField::coordinate(ctx, 0)}, {RatFunc::var(0) * E(0, 0), zero});
  CHECK(s.m == E(0, 0));
}

TEST_CASE("Lie algebroid axioms on random elements") {
  auto ctx = standard_context(3);
  std::mt19937_64 rng(21);
  for (int k = 0; k < 6; ++k) {
    AlgElement a = random_alg(rng, ctx, 2), b = random_alg(rng, ctx, 2), c = random_alg(rng, ctx, 2);
    AlgElement ab = atiyah_bracket(a, b), ba = atiyah_bracket(b, a);
    CHECK((ab.m + ba.m).is_zero());
    CHECK((ab.xi + ba.xi).is_zero());
    AlgElement j1 = atiyah_bracket(a, atiyah_bracket(b, c)), j2 = atiyah_bracket(b, atiyah_bracket(c, a)),
               j3 = atiyah_bracket(c, atiyah_bracket(a, b));
    CHECK((j1.m + j2.m + j3.m).is_zero());
    CHECK(ab.xi == vf_bracket(a.xi, b.xi));
    RatFunc f = test::random_poly(rng, 3);
    AlgElement fb{f * b.m, f * b.xi};
    AlgElement lhs = atiyah_bracket(a, fb);
    CHECK(lhs.m == f * ab.m + a.xi.apply(f) * b.m);
    CHECK(lhs.xi == f * ab.xi + a.xi.apply(f) * b.xi);
  }
}

TEST_CASE("curvature examples") {
  auto ctx = standard_context(4);
  CHECK(curvature(Connection::flat(ctx, 2)).is_zero());
  MatrixForm w(ctx, 1, 1);
  w.set(0, 0, parse_form("x1*d(x2)", ctx));
  CHECK(curvature(Connection(w)).at(0, 0) == parse_form("d(x1)^d(x2)", ctx));
  std::mt19937_64 rng(4);
  Connection conn(test::random_matrix_form(rng, ctx, 2, 1));
  MatrixForm c = curvature(conn);
  MatrixForm half = mat_ext_d(conn.omega) + mat_bracket(conn.omega, conn.omega).scaled(Rational(1, 2));
  CHECK(c == half);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      VectorField x = VectorField::coordinate(ctx, i), y = VectorField::coordinate(ctx, j);
      AlgElement br = atiyah_bracket(conn.lift(x), conn.lift(y));
      MatrixForm oracle = br.m - conn.at(vf_bracket(x, y));
      CHECK(mat_evaluate(c, {x, y}) == oracle);
    }
  // O-bilinear and antisymmetric
  VectorField x = test::random_field(rng, ctx), y = test::random_field(rng, ctx);
  RatFunc f = test::random_poly(rng, 4);
  CHECK(mat_evaluate(c, {f * x, y}) == f * mat_evaluate(c, {x, y}));
  CHECK(mat_evaluate(c, {x, y}) == -mat_evaluate(c, {y, x}));
  AlgElement br = atiyah_bracket(conn.lift(x), conn.lift(y));
  CHECK(mat_evaluate(c, {x, y}) == br.m - conn.at(vf_bracket(x, y)));
}

TEST_CASE("flat iff nabla is a bracket morphism on coordinate fields") {
  auto ctx = standard_context(2);
  // pure gauge is flat
  MatrixForm g = MatrixForm::functions(ctx, 2, {RatFunc(1L), RatFunc::var(0), RatFunc(), RatFunc(1L)});
  MatrixForm dg(ctx, 2, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) dg.set(i, j, ext_d(DiffForm(ctx, g.fn(i, j))));
  MatrixForm w = mat_wedge(mat_inverse(g), dg);
  std::mt19937_64 rng(2);
  for (const Connection& conn : {Connection(w), Connection(test::random_matrix_form(rng, ctx, 2, 1))}) {
    bool morphism = true;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        VectorField x = VectorField::coordinate(ctx, i), y = VectorField::coordinate(ctx, j);
        AlgElement br = atiyah_bracket(conn.lift(x), conn.lift(y));
        if (br.m != conn.at(vf_bracket(x, y))) morphism = false;
      }
    CHECK(morphism == curvature(conn).is_zero());
  }
}

TEST_CASE("pairing_invariance_check") {
  auto ctx = standard_context(2);
  AtiyahChart chart{ctx, 2};
  auto E = [&](int i, int j) { return MatrixForm::elementary(ctx, 2, i, j); };
  InvarianceSample s{{MatrixForm(ctx, 2, 0), VectorField::coordinate(ctx, 0)}, RatFunc::var(0) * E(0, 1), E(1, 0)};
  CHECK(s.a.xi.apply(mat_trace_product(s.b, s.c)) == RatFunc(1L));
  CHECK(pairing_invariance_check(chart, {s}).passed);
  std::mt19937_64 rng(17);
  std::vector<InvarianceSample> samples;
  samples.push_back({{RatFunc::var(1) * MatrixForm::identity(ctx, 2), test::random_field(rng, ctx)},
                     test::random_matrix_form(rng, ctx, 2, 0), test::random_matrix_form(rng, ctx, 2, 0)});
  for (int k = 0; k < 20; ++k)
    samples.push_back({random_alg(rng, ctx, 2), test::random_matrix_form(rng, ctx, 2, 0),
                       test::random_matrix_form(rng, ctx, 2, 0)});
  CHECK(pairing_invariance_check(chart, samples).passed);
}

TEST_CASE("ghat_bracket") {
  auto ctx = standard_context(2);
  auto E = [&](int i, int j) { return MatrixForm::elementary(ctx, 2, i, j); };
  std::mt19937_64 rng(5);
  MatrixForm b = test::random_matrix_form(rng, ctx, 2, 0);
  GhatElement g1 = ghat_element(test::random_form(rng, ctx, 1), b), g2 = ghat_element(test::random_form(rng, ctx, 1), b);
  CHECK(ghat_bracket(g1, g2).b.is_zero());

  GhatElement h = ghat_bracket(ghat_element(DiffForm(ctx), E(0, 1)), ghat_element(DiffForm(ctx), E(1, 0)));
  CHECK(h.b == E(0, 0) - E(1, 1));
  // evaluate on basis elements: functional c -> <[c, E12], E21>
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      AlgElement c{E(k, l), VectorField(ctx)};
      AlgElement cb = atiyah_bracket(c, {E(0, 1), VectorField(ctx)});
      CHECK(ghat_apply(h, c) == mat_trace_product(cb.m, E(1, 0)));
    }
  for (int k = 0; k < 2; ++k) CHECK(ghat_apply(h, {MatrixForm(ctx, 2, 0), VectorField::coordinate(ctx, k)}).is_zero());

  for (int t = 0; t < 3; ++t) {
    auto rnd = [&] { return ghat_element(test::random_form(rng, ctx, 1), test::random_matrix_form(rng, ctx, 2, 0)); };
    GhatElement a = rnd(), bb = rnd(), c = rnd();
    GhatElement lhs = ghat_bracket(a, ghat_bracket(bb, c));
    GhatElement rhs = ghat_sum(ghat_bracket(ghat_bracket(a, bb), c), ghat_bracket(bb, ghat_bracket(a, c)));
    CHECK(ghat_equal(lhs, rhs));
    GhatElement sym = ghat_sum(ghat_bracket(a, bb), ghat_bracket(bb, a));
    CHECK(sym.b.is_zero());
    CHECK(sym.dual_matrix.is_zero());
    CHECK(sym.dual_form == ext_d(DiffForm(ctx, ghat_pairing(a, bb))));
    // the adjoint action ignores the form part of its argument
    GhatElement shifted{c.dual_matrix, c.dual_form + test::random_form(rng, ctx, 1), c.b};
    CHECK(ghat_equal(ghat_bracket(shifted, a), ghat_bracket(c, a)));
  }
}

TEST_CASE("leibniz_cocycle examples") {
  auto ctx = standard_context(2);
  auto E = [&](int i, int j) { return MatrixForm::elementary(ctx, 2, i, j); };
  std::mt19937_64 rng(3);
  MatrixForm a = test::random_matrix_form(rng, ctx, 2, 0), b = test::random_matrix_form(rng, ctx, 2, 0);
  // omega = 0: <d a, b> is not zero in general, so restrict to constant matrices
  CHECK(leibniz_cocycle(Connection::flat(ctx, 2), E(0, 1), E(1, 0)).is_zero());
  // rank one: only the derivative term survives
  MatrixForm w1 = test::random_matrix_form(rng, ctx, 1, 1);
  MatrixForm s = MatrixForm::functions(ctx, 1, {RatFunc(2L)}), t = MatrixForm::functions(ctx, 1, {RatFunc(3L)});
  CHECK(leibniz_cocycle(Connection(w1), s, t).is_zero());
  MatrixForm w = MatrixForm::tensor(parse_form("d(x1)", ctx), E(0, 1));
  DiffForm c = leibniz_cocycle(Connection(w), E(1, 0), E(1, 0));
  CHECK(c.is_zero());
  // trace oracle for iota_d1 with a = E21, b = E12: Tr([E12,E21]E12) = Tr((E11-E22)E12) = 0; with b = E11: 1
  CHECK(leibniz_cocycle(Connection(w), E(1, 0), E(0, 0)) == parse_form("d(x1)", ctx));
  // bilinear over scalars
  DiffForm base = leibniz_cocycle(Connection(w), a, b);
  CHECK(leibniz_cocycle(Connection(w), a.scaled(3), b) == base.scaled(3));
}

}
