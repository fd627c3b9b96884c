#include "algd/courant.hpp"
#include "algd/errors.hpp"

namespace algd {

namespace {

std::vector<MatrixForm> components(const MatrixForm& w) {
  const ContextPtr& ctx = w.context();
  std::vector<MatrixForm> out;
  for (int k = 0; k < ctx->dim(); ++k)
    out.push_back(w.is_zero() ? MatrixForm(ctx, w.rank(), 0) : mat_interior(VectorField::coordinate(ctx, k), w));
  return out;
}

// <a, A(.)> = sum_k Tr(a A_k) dx_k
DiffForm pair_with(const MatrixForm& a, const std::vector<MatrixForm>& Ak) {
  std::vector<RatFunc> vals;
  for (const auto& m : Ak) vals.push_back(mat_trace_product(a, m));
  return one_form(a.context(), vals);
}

void require_same_chart(const Connection& a, const Connection& b) {
  require_same(a.context(), b.context());
  if (a.rank() != b.rank()) throw RankMismatch("connections of different rank");
}

}  // namespace

DiffForm cs_form(const Connection& conn, const Connection& conn2) {
  require_same_chart(conn, conn2);
  const ContextPtr& ctx = conn.context();
  MatrixForm A = conn2.omega - conn.omega;
  if (A.is_zero()) return DiffForm(ctx);
  MatrixForm c = curvature(conn);
  DiffForm P = mat_wedge_pair(c, A);
  P += mat_wedge_pair(covariant_d(conn.omega, A), A).scaled(Rational(1, 2));
  P += mat_wedge_pair(mat_bracket(A, A), A).scaled(Rational(1, 6));
  return P;
}

CourantElement phi_change(const Connection& conn, const Connection& conn2, const CourantElement& e) {
  require_same_chart(conn, conn2);
  MatrixForm A = conn2.omega - conn.omega;
  if (A.is_zero()) return e;
  std::vector<MatrixForm> Ak = components(A);
  MatrixForm Axi(A.context(), A.rank(), 0);
  for (int k = 0; k < A.context()->dim(); ++k)
    if (!e.xi[k].is_zero()) Axi = Axi + e.xi[k] * Ak[k];
  DiffForm alpha = e.alpha - pair_with(e.a, Ak) - pair_with(Axi, Ak).scaled(Rational(1, 2));
  return {alpha, e.a + Axi, e.xi};
}

CourantElement phi_change(const CourantStructure& s, const Connection& conn2, const CourantElement& e) {
  if (!s.connection()) throw RankMismatch("phi_change needs a structure with a connection");
  check_element(s, e);
  return phi_change(*s.connection(), conn2, e);
}

TwoFormMorphism triple_composition(const Connection& c0, const Connection& c1, const Connection& c2) {
  require_same_chart(c0, c1);
  require_same_chart(c0, c2);
  const ContextPtr& ctx = c0.context();
  const int n = ctx->dim(), r = c0.rank();
  auto composite = [&](const CourantElement& e) {
    return phi_change(c0, c1, phi_change(c1, c2, phi_change(c2, c0, e)));
  };
  DiffForm zero(ctx);
  MatrixForm zm(ctx, r, 0);
  VectorField zv(ctx);
  // The composite must fix Omega^1 and g and move fields by 1-forms only.
  for (int k = 0; k < n; ++k) {
    CourantElement e{DiffForm::dx(ctx, k), zm, zv};
    if (composite(e) != e) throw CompositionNotExpB("composite moves dx" + std::to_string(k + 1));
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      CourantElement e{zero, MatrixForm::elementary(ctx, r, i, j), zv};
      if (composite(e) != e) throw CompositionNotExpB("composite moves a g generator");
    }
  std::vector<DiffForm> beta;
  for (int k = 0; k < n; ++k) {
    VectorField d = VectorField::coordinate(ctx, k);
    CourantElement img = composite({zero, zm, d});
    if (!img.a.is_zero() || img.xi != d) throw CompositionNotExpB("composite changes the A-component of a field");
    beta.push_back(img.alpha);
  }
  // B = 1/2 sum_k dx_k ^ beta_k whenever beta_k = iota_k B
  DiffForm B(ctx);
  for (int k = 0; k < n; ++k) B += wedge(DiffForm::dx(ctx, k), beta[k]);
  B = B.scaled(Rational(1, 2));
  for (int k = 0; k < n; ++k)
    if (interior(VectorField::coordinate(ctx, k), B) != beta[k])
      throw CompositionNotExpB("field images are not contractions of a 2-form");
  return {B};
}

CourantLift canonical_lift(const CourantStructure& s) {
  return [s](const VectorField& xi) { return CourantElement::field(s, xi); };
}

namespace {

std::vector<CourantElement> coordinate_images(const CourantStructure& s, const CourantLift& lift) {
  const ContextPtr& ctx = s.context();
  const int n = s.dim();
  std::vector<CourantElement> L;
  for (int k = 0; k < n; ++k) {
    VectorField d = VectorField::coordinate(ctx, k);
    CourantElement e = lift(d);
    check_element(s, e);
    if (e.xi != d) throw NotLinear("lift does not split the anchor at d" + std::to_string(k + 1));
    L.push_back(e);
  }
  // function-linearity on x_m d_k and on the sum of all coordinate fields
  VectorField total(ctx);
  CourantElement total_img = CourantElement::zero(s);
  for (int k = 0; k < n; ++k) {
    VectorField d = VectorField::coordinate(ctx, k);
    total = total + d;
    total_img = total_img + L[k];
    for (int m = 0; m < n; ++m) {
      RatFunc x = RatFunc::var(m);
      if (lift(x * d) != x * L[k])
        throw NotLinear("lift is not function-linear on " + ctx->name(m) + " d" + std::to_string(k + 1));
    }
  }
  if (lift(total) != total_img) throw NotLinear("lift is not additive");
  return L;
}

}  // namespace

CourantCurvature curvature_courant(const CourantStructure& s, const CourantLift& lift) {
  const ContextPtr& ctx = s.context();
  const int n = s.dim(), r = s.rank();
  std::vector<CourantElement> L = coordinate_images(s, lift);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (!courant_pairing(s, L[i], L[j]).is_zero())
        throw NotIsotropic("<lift(d" + std::to_string(i + 1) + "), lift(d" + std::to_string(j + 1) + ")> != 0");

  CourantCurvature out;
  out.g_part = MatrixForm(ctx, r, 2);
  // R[i][j][k] = iota_k c_rel(d_i, d_j)
  std::vector<RatFunc> R(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      CourantElement C = dorfman_bracket(s, L[i], L[j]);  // coordinate fields commute
      if (!C.xi.is_zero()) throw StructureMismatch("anchor is not a bracket morphism");
      DiffForm rel = C.alpha;
      for (int k = 0; k < n; ++k) {
        RatFunc tr = mat_trace_product(C.a, L[k].a);
        if (!tr.is_zero()) rel += tr * DiffForm::dx(ctx, k);
      }
      for (int k = 0; k < n; ++k) R[(i * n + j) * n + k] = rel.coeff(IndexMask(1u << k));
      if (i < j)
        out.g_part = out.g_part + MatrixForm::tensor(wedge(DiffForm::dx(ctx, i), DiffForm::dx(ctx, j)), C.a);
    }
  auto at = [&](int i, int j, int k) -> const RatFunc& { return R[(i * n + j) * n + k]; };
  out.c_rel = DiffForm(ctx);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const RatFunc& v = at(i, j, k);
        if ((i == j || j == k || i == k) && !v.is_zero()) out.totally_skew = false;
        if (v != -at(j, i, k) || v != -at(i, k, j)) out.totally_skew = false;
        if (i < j && j < k && !v.is_zero()) out.c_rel.add_term(mask_of({i, j, k}), v);
      }
  return out;
}

CourantLift isotropize(const CourantStructure& s, const CourantLift& section) {
  std::vector<CourantElement> L = coordinate_images(s, section);
  return [s, section, L](const VectorField& xi) {
    CourantElement e = section(xi);
    std::vector<RatFunc> vals;
    for (const auto& l : L) vals.push_back(courant_pairing(s, e, l));
    e.alpha -= one_form(s.context(), vals).scaled(Rational(1, 2));
    return e;
  };
}

MorphismCheck check_morphism(const CourantStructure& src, const CourantStructure& dst,
                             const std::function<CourantElement(const CourantElement&)>& phi,
                             const std::vector<std::pair<CourantElement, CourantElement>>& samples) {
  MorphismCheck out;
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const auto& [x, y] = samples[t];
    CourantElement px = phi(x), py = phi(y);
    std::string tag = "sample " + std::to_string(t) + ": ";
    CourantElement defect = dorfman_bracket(dst, px, py) - phi(dorfman_bracket(src, x, y));
    if (!defect.is_zero()) {
      out.brackets = false;
      out.witnesses.push_back(tag + "bracket defect " + defect.to_string());
    }
    RatFunc pd = courant_pairing(dst, px, py) - courant_pairing(src, x, y);
    if (!pd.is_zero()) {
      out.pairings = false;
      out.witnesses.push_back(tag + "pairing defect " + pd.to_string(*src.context()));
    }
    if (px.xi != x.xi || py.xi != y.xi) {
      out.anchors = false;
      out.witnesses.push_back(tag + "anchor changed");
    }
  }
  return out;
}

}  // namespace algd
