#include "algd/cech.hpp"

#include <algorithm>

#include "algd/linsolve.hpp"

#include "algd/errors.hpp"

namespace algd {

std::string simplex_name(const Simplex& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

namespace {

bool same_map(const ChartMap& a, const ChartMap& b) { return a.images == b.images; }

Simplex face(const Simplex& s, std::size_t m) {
  Simplex f;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != m) f.push_back(s[i]);
  return f;
}

}  // namespace

CoverSpec::CoverSpec(ContextPtr ctx, std::vector<std::string> charts, std::vector<Transition> transitions,
                     std::vector<Simplex> nerve)
    : ctx_(std::move(ctx)), charts_(std::move(charts)), identity_(ChartMap::identity(ctx_)) {
  const int n = size();
  if (n == 0) throw ChartMismatch("cover has no charts");
  by_dim_.resize(1);
  for (int i = 0; i < n; ++i) by_dim_[0].push_back({i});
  for (auto s : nerve) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end() || s.empty() || s.front() < 0 || s.back() >= n)
      throw ChartMismatch("bad simplex " + label(s));
    std::size_t p = s.size() - 1;
    if (p == 0) continue;
    if (by_dim_.size() <= p) by_dim_.resize(p + 1);
    if (std::find(by_dim_[p].begin(), by_dim_[p].end(), s) == by_dim_[p].end()) by_dim_[p].push_back(s);
  }
  for (auto& layer : by_dim_) std::sort(layer.begin(), layer.end());
  for (std::size_t p = 2; p < by_dim_.size(); ++p)
    for (const auto& s : by_dim_[p])
      for (std::size_t m = 0; m < s.size(); ++m)
        if (!has(face(s, m)))
          throw MissingSimplex("face " + label(face(s, m)) + " of " + label(s) + " is not declared");

  for (auto& t : transitions) {
    if (t.i > t.j) {
      std::swap(t.i, t.j);
      std::swap(t.forward, t.backward);
    }
    if (!has({t.i, t.j})) throw MissingSimplex("transition on undeclared overlap " + label({t.i, t.j}));
    for (const ChartMap* m : {&t.forward, &t.backward})
      if (!m->ctx || !(*m->ctx == *ctx_) || static_cast<int>(m->images.size()) != ctx_->dim())
        throw ChartMismatch("transition " + label({t.i, t.j}) + " has the wrong variables");
    if (!t.forward.compose(t.backward).is_identity() || !t.backward.compose(t.forward).is_identity())
      throw ChartMismatch("transition " + label({t.i, t.j}) + " is not inverted by its inverse");
    maps_[{t.i, t.j}] = t.forward;
    maps_[{t.j, t.i}] = t.backward;
  }
  if (by_dim_.size() > 2)
    for (const auto& s : by_dim_[2]) {
      int i = s[0], j = s[1], k = s[2];
      if (!same_map(transition(i, j).compose(transition(j, k)), transition(i, k)))
        throw CocycleViolation("transitions do not compose on " + label(s));
    }
}

CoverSpec CoverSpec::shared(ContextPtr ctx, std::vector<std::string> charts, std::vector<Simplex> nerve) {
  return CoverSpec(std::move(ctx), std::move(charts), {}, std::move(nerve));
}

CoverSpec CoverSpec::complete(ContextPtr ctx, std::vector<std::string> charts) {
  const int n = static_cast<int>(charts.size());
  std::vector<Simplex> nerve;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      nerve.push_back({i, j});
      for (int k = j + 1; k < n; ++k) nerve.push_back({i, j, k});
    }
  return shared(std::move(ctx), std::move(charts), nerve);
}

std::string CoverSpec::label(const Simplex& s) const {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + (s[i] >= 0 && s[i] < size() ? charts_[s[i]] : std::to_string(s[i]));
  return out + ")";
}

int CoverSpec::index_of(const std::string& name) const {
  auto it = std::find(charts_.begin(), charts_.end(), name);
  return it == charts_.end() ? -1 : static_cast<int>(it - charts_.begin());
}

const std::vector<Simplex>& CoverSpec::simplices(int p) const {
  static const std::vector<Simplex> none;
  if (p < 0 || p >= static_cast<int>(by_dim_.size())) return none;
  return by_dim_[p];
}

bool CoverSpec::has(const Simplex& s) const {
  if (s.empty()) return false;
  const auto& layer = simplices(static_cast<int>(s.size()) - 1);
  return std::binary_search(layer.begin(), layer.end(), s);
}

const ChartMap& CoverSpec::transition(int from, int to) const {
  if (from == to) return identity_;
  auto it = maps_.find({from, to});
  if (it != maps_.end()) return it->second;
  Simplex s{std::min(from, to), std::max(from, to)};
  if (!has(s)) throw MissingSimplex("overlap " + label(s) + " is not declared");
  return identity_;
}

RatFunc CoverSpec::transport(const RatFunc& f, int from, int to) const {
  const ChartMap& m = transition(from, to);
  return m.is_identity() ? f : m.pull(f);
}

DiffForm CoverSpec::transport(const DiffForm& a, int from, int to) const {
  if (a.is_zero()) return DiffForm(ctx_);
  return pullback(transition(from, to), a);
}

MatrixForm CoverSpec::transport(const MatrixForm& a, int from, int to) const {
  const ChartMap& m = transition(from, to);
  return m.is_identity() ? a : mat_pullback(m, a);
}

VectorField CoverSpec::transport(const VectorField& xi, int from, int to) const {
  const ChartMap& m = transition(from, to);
  return m.is_identity() ? xi : pull_field(m, transition(to, from), xi);
}

BundleCocycle::BundleCocycle(const CoverSpec& cover, int rank, std::map<std::pair<int, int>, MatrixForm> g)
    : cover_(cover), rank_(rank) {
  const ContextPtr& ctx = cover.context();
  for (auto& [key, m] : g) {
    auto [i, j] = key;
    if (i > j) throw CocycleViolation("transition matrices are given for i < j only");
    if (!cover.has({i, j})) throw MissingSimplex("matrix on undeclared overlap " + cover.label({i, j}));
    if (m.rank() != rank || m.degree() != 0) throw RankMismatch("g" + cover.label({i, j}) + " has the wrong shape");
    if (mat_det(m).is_zero()) throw CocycleViolation("g" + cover.label({i, j}) + " is singular");
    ginv_[key] = mat_inverse(m);
    g_[key] = m;
  }
  for (const auto& s : cover.simplices(1))
    if (!g_.count({s[0], s[1]})) g_[{s[0], s[1]}] = ginv_[{s[0], s[1]}] = MatrixForm::identity(ctx, rank);
  for (const auto& s : cover.simplices(2)) {
    int i = s[0], j = s[1], k = s[2];
    MatrixForm lhs = mat_wedge(cover.transport(g_.at({i, j}), j, k), g_.at({j, k}));
    if (lhs != g_.at({i, k})) throw CocycleViolation("cocycle condition fails on " + cover.label(s));
  }
}

MatrixForm BundleCocycle::g(int i, int j) const {
  if (i == j) return MatrixForm::identity(cover_.context(), rank_);
  if (i < j) return g_.at({i, j});
  return cover_.transport(ginv_.at({j, i}), i, j);
}

CechCochain CechCochain::zero(const CoverSpec& cover, int p, int q) {
  (void)cover;
  return CechCochain{p, q, {}};
}

DiffForm CechCochain::at(const Simplex& s) const {
  auto it = values.find(s);
  if (it != values.end()) return it->second;
  return DiffForm();
}

bool CechCochain::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

CechCochain CechCochain::scaled(const Rational& c) const {
  CechCochain out{p, q, {}};
  for (const auto& [s, v] : values) out.values[s] = v.scaled(c);
  return out;
}

CechCochain operator+(const CechCochain& a, const CechCochain& b) {
  if (a.p != b.p || a.q != b.q) throw DegreeError("adding cochains of different bidegree");
  CechCochain out = a;
  for (const auto& [s, v] : b.values) {
    auto it = out.values.find(s);
    if (it == out.values.end())
      out.values[s] = v;
    else
      it->second += v;
  }
  return out;
}

CechCochain operator-(const CechCochain& a, const CechCochain& b) { return a + b.scaled(Rational(-1)); }

bool CechCochain::operator==(const CechCochain& o) const {
  if (p != o.p || q != o.q) return false;
  return (*this - o).is_zero();
}

TotalCochain total_of(std::vector<CechCochain> parts) {
  TotalCochain out;
  for (auto& c : parts) {
    auto key = std::make_pair(c.p, c.q);
    auto it = out.find(key);
    if (it == out.end())
      out.emplace(key, std::move(c));
    else
      it->second = it->second + c;
  }
  return out;
}

TotalCochain total_add(const TotalCochain& a, const TotalCochain& b) {
  std::vector<CechCochain> parts;
  for (const auto& [k, c] : a) parts.push_back(c);
  for (const auto& [k, c] : b) parts.push_back(c);
  return total_of(parts);
}

TotalCochain total_scaled(const TotalCochain& a, const Rational& c) {
  TotalCochain out;
  for (const auto& [k, v] : a) out.emplace(k, v.scaled(c));
  return out;
}

bool total_is_zero(const TotalCochain& a) {
  return std::all_of(a.begin(), a.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

CechCochain cech_d(const CoverSpec& cover, const CechCochain& c) {
  CechCochain out{c.p + 1, c.q, {}};
  for (const auto& s : cover.simplices(c.p + 1)) {
    DiffForm acc(cover.context());
    for (std::size_t m = 0; m < s.size(); ++m) {
      Simplex f = face(s, m);
      if (!cover.has(f)) throw MissingSimplex("face " + cover.label(f) + " of " + cover.label(s) + " is missing");
      DiffForm v = c.at(f);
      if (v.is_zero()) continue;
      v = cover.transport(v, f.back(), s.back());
      if (m % 2)
        acc -= v;
      else
        acc += v;
    }
    if (!acc.is_zero()) out.values[s] = acc;
  }
  return out;
}

CechCochain form_d(const CechCochain& c) {
  CechCochain out{c.p, c.q + 1, {}};
  for (const auto& [s, v] : c.values) {
    DiffForm dv = v.is_zero() ? DiffForm() : ext_d(v);
    if (!dv.is_zero()) out.values[s] = dv;
  }
  return out;
}

TotalCochain total_d(const CoverSpec& cover, const TotalCochain& c) {
  std::vector<CechCochain> parts;
  for (const auto& [k, v] : c) {
    parts.push_back(form_d(v));
    if (v.p + 1 <= cover.max_dim()) {
      CechCochain dv = cech_d(cover, v);
      parts.push_back(v.q % 2 ? dv.scaled(Rational(-1)) : dv);
    }
  }
  return total_of(parts);
}

namespace {

MatrixForm conjugate(const MatrixForm& ginv, const MatrixForm& x, const MatrixForm& g) {
  return mat_wedge(mat_wedge(ginv, x), g);
}

const MatrixForm& lookup(const std::map<std::pair<int, int>, MatrixForm>& m, int i, int j) {
  auto it = m.find({i, j});
  if (it == m.end()) throw MissingSimplex("no data on " + simplex_name({i, j}));
  return it->second;
}

}  // namespace

InducedConnections induced_connections(const CoverSpec& cover, const BundleCocycle& bundle,
                                       const std::vector<std::optional<Connection>>& seeds) {
  if (static_cast<int>(seeds.size()) != cover.size()) throw ChartMismatch("one connection per chart expected");
  const ContextPtr& ctx = cover.context();
  InducedConnections out;
  for (const auto& s : seeds) {
    if (s && s->rank() != bundle.rank()) throw RankMismatch("connection rank differs from the bundle");
    out.local.push_back(s ? *s : Connection::flat(ctx, bundle.rank()));
  }
  for (const auto& e : cover.simplices(1)) {
    int i = e[0], j = e[1];
    MatrixForm g = bundle.g(i, j);
    MatrixForm ginv = mat_inverse(g);
    MatrixForm w = cover.transport(out.local[i].omega, i, j);
    MatrixForm moved = conjugate(ginv, w, g) + mat_wedge(ginv, mat_ext_d(g));
    out.A[{i, j}] = out.local[j].omega - moved;
    out.moved.emplace(std::make_pair(i, j), Connection(moved));
  }
  return out;
}

CharacteristicCocycle pontryagin_cocycle(const CoverSpec& cover, const BundleCocycle& bundle,
                                         const InducedConnections& conns) {
  CharacteristicCocycle out{{0, 4, {}}, {1, 3, {}}, {2, 2, {}}};
  for (int i = 0; i < cover.size(); ++i) {
    MatrixForm c = curvature(conns.local[i]);
    DiffForm v = mat_wedge_pair(c, c);
    if (!v.is_zero()) out.c40.values[{i}] = v;
  }
  for (const auto& e : cover.simplices(1)) {
    DiffForm v = cs_form(conns.moved.at({e[0], e[1]}), conns.local[e[1]]).scaled(Rational(-2));
    if (!v.is_zero()) out.c31.values[e] = v;
  }
  for (const auto& s : cover.simplices(2)) {
    int i = s[0], j = s[1], k = s[2];
    MatrixForm g = bundle.g(j, k);
    MatrixForm aij = conjugate(mat_inverse(g), cover.transport(lookup(conns.A, i, j), j, k), g);
    DiffForm v = -mat_wedge_pair(aij, lookup(conns.A, j, k));
    if (!v.is_zero()) out.c22.values[s] = v;
  }
  return out;
}

CharacteristicCocycle ch2_cocycle(const CoverSpec& cover, const BundleCocycle& bundle,
                                  const InducedConnections& conns) {
  CharacteristicCocycle p = pontryagin_cocycle(cover, bundle, conns);
  const Rational half(1, 2);
  return {p.c40.scaled(half), p.c31.scaled(half), p.c22.scaled(half)};
}

TotalCochain HatPAssembly::hat() const { return total_of({hat31.scaled(Rational(-1)), hat22}); }

TotalCochain HatPAssembly::plain() const { return total_of({P40, P31.scaled(Rational(-1)), hat22}); }

HatPAssembly hat_P_assembly(const CoverSpec& cover, const BundleCocycle& bundle, const InducedConnections& conns,
                            const std::vector<DiffForm>& H) {
  if (static_cast<int>(H.size()) != cover.size()) throw PrimitiveInvalid("one primitive per chart expected");
  CharacteristicCocycle ch = ch2_cocycle(cover, bundle, conns);
  CechCochain Hc{0, 3, {}};
  for (int i = 0; i < cover.size(); ++i) {
    if (!H[i].is_zero() && H[i].degree() != 3) throw PrimitiveInvalid("primitive on chart " + cover.chart(i) + " is not a 3-form");
    if ((H[i].is_zero() ? DiffForm() : ext_d(H[i])) != ch.c40.at({i}))
      throw PrimitiveInvalid("dH != 1/2 <c ^ c> on chart " + cover.chart(i));
    if (!H[i].is_zero()) Hc.values[{i}] = H[i];
  }
  HatPAssembly out;
  out.P40 = ch.c40;
  out.P31 = ch.c31.scaled(Rational(-1));
  out.hat31 = out.P31 - cech_d(cover, Hc);
  out.hat22 = ch.c22;

  auto need = [&](bool ok, const std::string& what) {
    if (!ok) out.failures.push_back(what);
  };
  need(total_is_zero(total_d(cover, out.plain())), "D(P) = 0");
  need(total_is_zero(total_d(cover, out.hat())), "D(hat P) = 0");
  need(form_d(out.hat31).is_zero(), "d hat P31 = 0");
  need(cech_d(cover, out.hat22).is_zero(), "cech hat P22 = 0");
  need(form_d(out.hat22) == cech_d(cover, out.hat31).scaled(Rational(-1)), "d hat P22 = -cech hat P31");
  TotalCochain diff = total_add(out.plain(), total_scaled(total_d(cover, total_of({Hc})), Rational(-1)));
  need(total_is_zero(total_add(diff, total_scaled(out.hat(), Rational(-1)))), "hat P = P - D(H)");
  return out;
}

namespace {

FrameEVA moved_frame(const CoverSpec& cover, const FrameEVA& V, int from, int to) {
  if (from == to || cover.transition(from, to).is_identity()) return V;
  std::vector<VectorField> f;
  for (const auto& t : V.frame()) f.push_back(cover.transport(t, from, to));
  return FrameEVA(cover.context(), std::move(f));
}

}  // namespace

EvaClassCocycle eva_class_cocycle(const CoverSpec& cover, const std::vector<FrameEVA>& frames) {
  if (static_cast<int>(frames.size()) != cover.size()) throw FrameInvalid("one frame per chart expected");
  const ContextPtr& ctx = cover.context();
  const int n = ctx->dim();
  EvaClassCocycle out{{1, 3, {}}, {2, 2, {}}};
  for (const auto& e : cover.simplices(1)) {
    int i = e[0], j = e[1];
    DiffForm h = eva_difference(moved_frame(cover, frames[i], i, j), frames[j]).H();
    if (!h.is_zero()) out.h31.values[e] = h;
  }
  for (const auto& s : cover.simplices(2)) {
    int i = s[0], j = s[1], k = s[2];
    FrameEVA Vi = moved_frame(cover, frames[i], i, k), Vj = moved_frame(cover, frames[j], j, k);
    EvaDifference Dij(Vi, Vj), Djk(Vj, frames[k]), Dik(Vi, frames[k]);
    std::vector<DiffForm> beta;
    DiffForm B(ctx);
    for (int l = 0; l < n; ++l) {
      VectorField dl = VectorField::coordinate(ctx, l);
      EvaPair sij = Dij.lift(dl), sjk = Djk.lift(dl), sik = Dik.lift(dl);
      DiffForm b = (sij.v2 - sik.v2).alpha + (sjk.v2 - sij.v1).alpha + (sik.v1 - sjk.v1).alpha;
      beta.push_back(b);
      B += wedge(DiffForm::dx(ctx, l), b);
    }
    B = B.scaled(Rational(1, 2));
    for (int l = 0; l < n; ++l)
      if (interior(VectorField::coordinate(ctx, l), B) != beta[l])
        throw StructureMismatch("composite trivialization on " + cover.label(s) + " is not a 2-form");
    if (!B.is_zero()) out.b22.values[s] = B;
  }
  return out;
}

BundleCocycle cotangent_bundle(const CoverSpec& cover, const std::vector<FrameEVA>& frames) {
  if (static_cast<int>(frames.size()) != cover.size()) throw FrameInvalid("one frame per chart expected");
  const ContextPtr& ctx = cover.context();
  const int n = ctx->dim();
  std::map<std::pair<int, int>, MatrixForm> g;
  for (const auto& e : cover.simplices(1)) {
    int i = e[0], j = e[1];
    std::vector<RatFunc> rows;
    for (int l = 0; l < n; ++l) {
      std::vector<RatFunc> c = frames[j].coefficients(cover.transport(frames[i].frame()[l], i, j));
      rows.insert(rows.end(), c.begin(), c.end());
    }
    g[{i, j}] = MatrixForm::functions(ctx, n, rows);
  }
  return BundleCocycle(cover, n, std::move(g));
}

namespace {

using RowKey = std::vector<int>;

struct Flattener {
  std::map<RowKey, int> ids;

  int id(RowKey k) { return ids.emplace(std::move(k), static_cast<int>(ids.size())).first->second; }

  // false when a coefficient is not a polynomial
  bool add(const TotalCochain& c, SparseVec& out, int n) {
    for (const auto& [pq, cc] : c)
      for (const auto& [s, v] : cc.values)
        for (const auto& [mask, f] : v.terms()) {
          if (!f.is_polynomial()) return false;
          for (const auto& [m, coef] : f.num().terms()) {
            RowKey k{pq.first, pq.second};
            k.insert(k.end(), s.begin(), s.end());
            k.push_back(-1);
            k.push_back(static_cast<int>(mask));
            for (int x = 0; x < n; ++x) k.push_back(m.e[x]);
            out[id(std::move(k))] += coef;
          }
        }
    return true;
  }
};

std::vector<IndexMask> masks_of_degree(int n, int q) {
  std::vector<IndexMask> out;
  for (IndexMask m = 0; m < (IndexMask(1) << n); ++m)
    if (popcount(m) == q) out.push_back(m);
  return out;
}

int total_degree(const TotalCochain& c) {
  int N = -1;
  for (const auto& [pq, cc] : c) {
    if (cc.is_zero()) continue;
    int d = pq.first + pq.second;
    if (N >= 0 && d != N) throw DegreeError("cochain has mixed total degree");
    N = d;
  }
  return N;
}

}  // namespace

TotalCochain coboundary_solve(const CoverSpec& cover, const TotalCochain& target, int bound, int min_form) {
  if (!total_is_zero(total_d(cover, target))) throw NotClosed("target is not D-closed");
  const int N = total_degree(target);
  if (N < 0) return {};
  const ContextPtr& ctx = cover.context();
  const int n = ctx->dim();
  std::vector<Monomial> monos = monomials_up_to(n, bound);

  struct Unknown {
    int p, q;
    Simplex s;
    IndexMask mask;
    Monomial m;
  };
  std::vector<Unknown> unknowns;
  std::vector<SparseVec> columns;
  Flattener flat;
  for (int p = 0; p <= std::min(cover.max_dim(), N - 1); ++p) {
    int q = N - 1 - p;
    if (q < min_form || q > n) continue;
    for (const auto& s : cover.simplices(p))
      for (IndexMask mask : masks_of_degree(n, q))
        for (const auto& m : monos) {
          CechCochain c{p, q, {}};
          c.values[s] = DiffForm::term(ctx, mask, RatFunc(MultiPoly::term(m, Rational(1))));
          SparseVec col;
          flat.add(total_d(cover, total_of({c})), col, n);
          unknowns.push_back({p, q, s, mask, m});
          columns.push_back(std::move(col));
        }
  }
  SparseVec rhs;
  if (!flat.add(target, rhs, n)) throw NoSolutionWithinBound("target has non-polynomial coefficients");
  auto x = solve_sparse(columns, rhs);
  if (!x) throw NoSolutionWithinBound("no primitive with coefficients of degree <= " + std::to_string(bound));

  std::vector<CechCochain> parts;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    if ((*x)[u] == 0) continue;
    const Unknown& k = unknowns[u];
    CechCochain c{k.p, k.q, {}};
    c.values[k.s] = DiffForm::term(ctx, k.mask, RatFunc(MultiPoly::term(k.m, (*x)[u])));
    parts.push_back(std::move(c));
  }
  TotalCochain X = total_of(parts);
  if (!total_is_zero(total_add(total_d(cover, X), total_scaled(target, Rational(-1)))))
    throw NoSolutionWithinBound("solution failed verification");
  return X;
}

DiffForm ansatz_primitive(const DiffForm& target, int bound) {
  const ContextPtr& ctx = target.context();
  if (target.is_zero()) return target;
  const int q = target.degree();
  if (!is_closed(target)) throw NotClosed("form is not closed");
  if (q == 0) throw NoSolutionWithinBound("a nonzero function has no primitive");
  CoverSpec one = CoverSpec::shared(ctx, {"U"}, {});
  CechCochain t{0, q, {{{0}, target}}};
  TotalCochain X = coboundary_solve(one, total_of({t}), bound, q - 1);
  auto it = X.find({0, q - 1});
  return it == X.end() ? DiffForm(ctx) : it->second.at({0});
}

}  // namespace algd
