#include "algd/courant.hpp"

#include <sstream>

#include "algd/errors.hpp"

namespace algd {

// Bracket table of the generators dx_k, E_ij, d_k, stored sparsely.
struct CourantStructure::Table {
  int n = 0, r = 0, G = 0;
  std::vector<std::vector<std::pair<int, RatFunc>>> br;  // [A * G + B]
  std::vector<int> partner;                              // pairing-dual generator, or -1

  const std::vector<std::pair<int, RatFunc>>& at(int a, int b) const { return br[a * G + b]; }
  bool is_field(int g) const { return g >= n + r * r; }
  int field_index(int g) const { return g - n - r * r; }
};

namespace {

using Coeffs = std::vector<RatFunc>;

void push(std::vector<std::pair<int, RatFunc>>& v, int g, const RatFunc& c) {
  if (!c.is_zero()) v.emplace_back(g, c);
}

std::shared_ptr<const CourantStructure::Table> build_table(const CourantStructure& s) {
  auto t = std::make_shared<CourantStructure::Table>();
  const int n = s.dim(), r = s.rank();
  t->n = n;
  t->r = r;
  t->G = 2 * n + r * r;
  const int G = t->G;
  t->br.assign(G * G, {});
  t->partner.assign(G, -1);
  auto E = [&](int i, int j) { return n + i * r + j; };
  auto F = [&](int k) { return n + r * r + k; };
  for (int k = 0; k < n; ++k) {
    t->partner[k] = F(k);
    t->partner[F(k)] = k;
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) t->partner[E(i, j)] = E(j, i);

  const ContextPtr& ctx = s.context();
  std::vector<VectorField> d;
  for (int k = 0; k < n; ++k) d.push_back(VectorField::coordinate(ctx, k));
  std::vector<MatrixForm> w(n);
  for (int k = 0; k < n; ++k) w[k] = s.omega().is_zero() ? MatrixForm(ctx, r, 0) : mat_interior(d[k], s.omega());
  // c_ij as functions
  std::vector<MatrixForm> c(n * n, MatrixForm(ctx, r, 0));
  if (r > 0 && !s.curvature().is_zero())
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) c[i * n + j] = mat_evaluate(s.curvature(), {d[i], d[j]});

  // [d_i, d_j] = c_ij + H(d_i, d_j, .)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      auto& cell = t->br[F(i) * G + F(j)];
      DiffForm hij = interior(d[j], interior(d[i], s.H()));
      for (int k = 0; k < n; ++k) push(cell, k, hij.coeff(IndexMask(1u << k)));
      for (int p = 0; p < r; ++p)
        for (int q = 0; q < r; ++q) push(cell, E(p, q), c[i * n + j].fn(p, q));
    }
  // [d_i, E_pq] = [w_i, E_pq] - <c(d_i, .), E_pq>, and minus that for [E_pq, d_i]
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < r; ++p)
      for (int q = 0; q < r; ++q) {
        auto& cell = t->br[F(i) * G + E(p, q)];
        for (int k = 0; k < n; ++k) push(cell, k, -c[i * n + k].fn(q, p));
        for (int u = 0; u < r; ++u)
          for (int v = 0; v < r; ++v) {
            RatFunc val;
            if (v == q) val += w[i].fn(u, p);
            if (u == p) val -= w[i].fn(q, v);
            push(cell, E(u, v), val);
          }
        auto& rev = t->br[E(p, q) * G + F(i)];
        for (const auto& [g, val] : cell) rev.emplace_back(g, -val);
      }
  // [E_pq, E_uv] = [E_pq, E_uv]_g + sum_k Tr([w_k, E_pq] E_uv) dx_k
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      for (int u = 0; u < r; ++u)
        for (int v = 0; v < r; ++v) {
          auto& cell = t->br[E(p, q) * G + E(u, v)];
          for (int k = 0; k < n; ++k) {
            RatFunc val;
            if (q == u) val += w[k].fn(v, p);
            if (v == p) val -= w[k].fn(q, u);
            push(cell, k, val);
          }
          for (int x = 0; x < r; ++x)
            for (int y = 0; y < r; ++y) {
              long val = (q == u && x == p && y == v) - (v == p && x == u && y == q);
              push(cell, E(x, y), RatFunc(val));
            }
        }
  return t;
}

Coeffs coefficients(const CourantStructure& s, const CourantElement& e) {
  const int n = s.dim(), r = s.rank();
  Coeffs c(s.generator_count());
  for (const auto& [m, f] : e.alpha.terms()) c[mask_indices(m)[0]] = f;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) c[n + i * r + j] = e.a.fn(i, j);
  for (int k = 0; k < n; ++k) c[n + r * r + k] = e.xi[k];
  return c;
}

CourantElement from_coefficients(const CourantStructure& s, const Coeffs& c) {
  const int n = s.dim(), r = s.rank();
  const ContextPtr& ctx = s.context();
  CourantElement e = CourantElement::zero(s);
  for (int k = 0; k < n; ++k)
    if (!c[k].is_zero()) e.alpha.add_term(IndexMask(1u << k), c[k]);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (!c[n + i * r + j].is_zero()) e.a.set(i, j, c[n + i * r + j]);
  std::vector<RatFunc> xi(n);
  for (int k = 0; k < n; ++k) xi[k] = c[n + r * r + k];
  e.xi = VectorField(ctx, std::move(xi));
  return e;
}

}  // namespace

const MatrixForm& CourantStructure::omega() const { return conn_ ? conn_->omega : zero_omega_; }

CourantStructure CourantStructure::exact(ContextPtr ctx, const DiffForm& H) {
  CourantStructure s;
  s.chart_ = AtiyahChart{std::move(ctx), 0};
  s.H_ = H.context() ? H : DiffForm(s.chart_.ctx);
  s.finish();
  return s;
}

CourantStructure CourantStructure::extension(const Connection& conn, const DiffForm& H) {
  CourantStructure s;
  s.chart_ = AtiyahChart{conn.context(), conn.rank()};
  s.conn_ = conn;
  s.H_ = H.context() ? H : DiffForm(s.chart_.ctx);
  s.finish();
  return s;
}

void CourantStructure::finish() {
  require_same(chart_.ctx, H_.context());
  if (!H_.is_zero() && H_.degree() != 3) throw DegreeError("H must be a 3-form");
  zero_omega_ = MatrixForm(chart_.ctx, chart_.rank, 1);
  if (conn_) {
    curv_ = algd::curvature(*conn_);
    pont_ = mat_wedge_pair(curv_, curv_);
  } else {
    curv_ = MatrixForm(chart_.ctx, 0, 2);
    pont_ = DiffForm(chart_.ctx);
  }
  admissible_ = ext_d(H_) == pont_.scaled(Rational(1, 2));
  table_ = build_table(*this);
}

std::string CourantStructure::describe() const {
  std::ostringstream os;
  os << (rank() == 0 ? "exact" : "rank " + std::to_string(rank())) << " structure, H = " << H_.to_string();
  if (conn_) os << ", omega = " << conn_->omega.to_string();
  return os.str();
}

CourantElement CourantElement::zero(const CourantStructure& s) {
  return {DiffForm(s.context()), MatrixForm(s.context(), s.rank(), 0), VectorField(s.context())};
}

CourantElement CourantElement::form(const CourantStructure& s, const DiffForm& alpha) {
  CourantElement e = zero(s);
  e.alpha = alpha;
  return e;
}

CourantElement CourantElement::matrix(const CourantStructure& s, const MatrixForm& a) {
  CourantElement e = zero(s);
  e.a = a;
  return e;
}

CourantElement CourantElement::field(const CourantStructure& s, const VectorField& xi) {
  CourantElement e = zero(s);
  e.xi = xi;
  return e;
}

CourantElement CourantElement::operator-() const { return {-alpha, -a, -xi}; }

CourantElement operator+(const CourantElement& x, const CourantElement& y) {
  return {x.alpha + y.alpha, x.a + y.a, x.xi + y.xi};
}

CourantElement operator-(const CourantElement& x, const CourantElement& y) {
  return {x.alpha - y.alpha, x.a - y.a, x.xi - y.xi};
}

CourantElement operator*(const RatFunc& f, const CourantElement& x) { return {f * x.alpha, f * x.a, f * x.xi}; }

std::string CourantElement::to_string() const {
  return "(" + alpha.to_string() + "; " + (a.rank() ? a.to_string() : "-") + "; " + xi.to_string() + ")";
}

void check_element(const CourantStructure& s, const CourantElement& e) {
  const Context& ctx = *s.context();
  if (!e.alpha.context() || !(*e.alpha.context() == ctx) || !e.a.context() || !(*e.a.context() == ctx) ||
      !e.xi.context() || !(*e.xi.context() == ctx))
    throw StructureMismatch("element lives on a different chart");
  if (e.a.rank() != s.rank()) throw StructureMismatch("element rank differs from the structure rank");
  if (e.a.degree() != 0 && !e.a.is_zero()) throw StructureMismatch("g-part must be a matrix of functions");
  if (!e.alpha.is_zero() && e.alpha.degree() != 1) throw StructureMismatch("Omega^1 part must be a 1-form");
}

// [fA, hB] = fh[A,B] - h pi(B)(f) A + f pi(A)(h) B + h <A,B> df on generators
// A, B: Leibniz in the right slot, the symmetry relation in the left slot.
CourantElement dorfman_bracket(const CourantStructure& s, const CourantElement& e1, const CourantElement& e2) {
  check_element(s, e1);
  check_element(s, e2);
  const auto& t = s.table();
  const int n = t.n, G = t.G;
  Coeffs c1 = coefficients(s, e1), c2 = coefficients(s, e2);
  std::vector<int> nz1, nz2;
  for (int g = 0; g < G; ++g) {
    if (!c1[g].is_zero()) nz1.push_back(g);
    if (!c2[g].is_zero()) nz2.push_back(g);
  }
  std::vector<Coeffs> d1(G), d2(G);
  for (int g : nz1) {
    d1[g].resize(n);
    for (int k = 0; k < n; ++k) d1[g][k] = c1[g].partial(k);
  }
  for (int g : nz2) {
    d2[g].resize(n);
    for (int k = 0; k < n; ++k) d2[g][k] = c2[g].partial(k);
  }
  Coeffs out(G);
  for (int A : nz1) {
    const RatFunc& f = c1[A];
    for (int B : nz2) {
      const RatFunc& h = c2[B];
      const auto& cell = t.at(A, B);
      if (!cell.empty()) {
        RatFunc fh = f * h;
        for (const auto& [g, val] : cell) out[g] += fh * val;
      }
      if (t.is_field(B) && !d1[A][t.field_index(B)].is_zero()) out[A] -= h * d1[A][t.field_index(B)];
      if (t.is_field(A) && !d2[B][t.field_index(A)].is_zero()) out[B] += f * d2[B][t.field_index(A)];
      if (t.partner[A] == B)
        for (int m = 0; m < n; ++m)
          if (!d1[A][m].is_zero()) out[m] += h * d1[A][m];
    }
  }
  return from_coefficients(s, out);
}

RatFunc courant_pairing(const CourantStructure& s, const CourantElement& e1, const CourantElement& e2) {
  check_element(s, e1);
  check_element(s, e2);
  return interior(e2.xi, e1.alpha).function() + interior(e1.xi, e2.alpha).function() + mat_trace_product(e1.a, e2.a);
}

CourantElement courant_derivation(const CourantStructure& s, const RatFunc& f) {
  return CourantElement::form(s, ext_d(DiffForm(s.context(), f)));
}

StructureOps<CourantElement> courant_ops(const CourantStructure& s) {
  StructureOps<CourantElement> ops;
  ops.bracket = [s](const CourantElement& x, const CourantElement& y) { return dorfman_bracket(s, x, y); };
  ops.pairing = [s](const CourantElement& x, const CourantElement& y) { return courant_pairing(s, x, y); };
  ops.anchor = [](const CourantElement& x) { return x.xi; };
  ops.derivation = [s](const RatFunc& f) { return courant_derivation(s, f); };
  ops.scale = [](const RatFunc& f, const CourantElement& x) { return f * x; };
  ops.add = [](const CourantElement& x, const CourantElement& y) { return x + y; };
  ops.sub = [](const CourantElement& x, const CourantElement& y) { return x - y; };
  ops.is_zero = [](const CourantElement& x) { return x.is_zero(); };
  ops.show = [](const CourantElement& x) { return x.to_string(); };
  return ops;
}

AxiomReport check_courant_axioms(const CourantStructure& s, const std::vector<std::array<CourantElement, 3>>& triples,
                                 const std::vector<RatFunc>& functions, bool parallel) {
  return check_courant_like(courant_ops(s), triples, functions, parallel);
}

CourantElement jacobiator(const CourantStructure& s, const CourantElement& e0, const CourantElement& e1,
                          const CourantElement& e2) {
  auto br = [&](const CourantElement& x, const CourantElement& y) { return dorfman_bracket(s, x, y); };
  return br(e0, br(e1, e2)) - br(br(e0, e1), e2) - br(e1, br(e0, e2));
}

DiffForm jacobiator_predicted(const CourantStructure& s, const VectorField& xi0, const VectorField& xi1,
                              const VectorField& xi2) {
  DiffForm four = ext_d(s.H()) - s.pontryagin().scaled(Rational(1, 2));
  return interior(xi2, interior(xi1, interior(xi0, four)));
}

CourantStructure with_H(const CourantStructure& s, const DiffForm& H) {
  if (s.connection()) return CourantStructure::extension(*s.connection(), H);
  return CourantStructure::exact(s.context(), H);
}

CourantStructure twist_by_H(const CourantStructure& s, const DiffForm& extra) { return with_H(s, s.H() + extra); }

CourantElement exp_B(const TwoFormMorphism& B, const CourantElement& e) {
  if (B.B.is_zero()) return e;
  return {e.alpha + interior(e.xi, B.B), e.a, e.xi};
}

}  // namespace algd
