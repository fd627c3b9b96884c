#include "algd/forms.hpp"

#include <bit>

#include "algd/errors.hpp"
#include "algd/expr_parser.hpp"

namespace algd {

int popcount(IndexMask m) { return std::popcount(static_cast<unsigned>(m)); }

bool MaskOrder::operator()(IndexMask a, IndexMask b) const {
  int pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  if (a == b) return false;
  unsigned diff = a ^ b;
  unsigned low = diff & (~diff + 1u);
  return (a & low) != 0;
}

int wedge_sign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (unsigned bb = b; bb; bb &= bb - 1) {
    int j = std::countr_zero(bb);
    inversions += std::popcount(static_cast<unsigned>(a) >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

std::vector<int> mask_indices(IndexMask m) {
  std::vector<int> out;
  for (unsigned mm = m; mm; mm &= mm - 1) out.push_back(std::countr_zero(mm));
  return out;
}

IndexMask mask_of(const std::vector<int>& idx) {
  IndexMask m = 0;
  for (int i : idx) m |= IndexMask(1u << i);
  return m;
}

// ---------------------------------------------------------------------------

DiffForm::DiffForm(ContextPtr ctx) : ctx_(std::move(ctx)) {}

DiffForm::DiffForm(ContextPtr ctx, const RatFunc& f) : ctx_(std::move(ctx)) {
  if (!f.is_zero()) terms_.emplace(0, f);
}

DiffForm DiffForm::dx(ContextPtr ctx, int i) {
  if (i < 0 || i >= ctx->dim()) throw UnknownVariable("dx index out of range");
  return term(std::move(ctx), IndexMask(1u << i), RatFunc(1L));
}

DiffForm DiffForm::term(ContextPtr ctx, IndexMask m, const RatFunc& f) {
  DiffForm a(std::move(ctx));
  a.add_term(m, f);
  return a;
}

RatFunc DiffForm::coeff(IndexMask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RatFunc() : it->second;
}

void DiffForm::add_term(IndexMask m, const RatFunc& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool DiffForm::is_homogeneous() const {
  if (terms_.empty()) return true;
  return popcount(terms_.begin()->first) == popcount(terms_.rbegin()->first);
}

int DiffForm::degree() const {
  if (terms_.empty()) return -1;
  if (!is_homogeneous()) throw DegreeError("form is not homogeneous");
  return popcount(terms_.begin()->first);
}

DiffForm DiffForm::component(int p) const {
  DiffForm out(ctx_);
  for (const auto& [m, f] : terms_)
    if (popcount(m) == p) out.terms_.emplace(m, f);
  return out;
}

DiffForm DiffForm::operator-() const {
  DiffForm r = *this;
  for (auto& [m, f] : r.terms_) f = -f;
  return r;
}

static const ContextPtr& pick_context(const ContextPtr& a, const ContextPtr& b) {
  if (!a) return b;
  if (b) require_same(a, b);
  return a;
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  ctx_ = pick_context(ctx_, o.ctx_);
  for (const auto& [m, f] : o.terms_) add_term(m, f);
  return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& o) {
  ctx_ = pick_context(ctx_, o.ctx_);
  for (const auto& [m, f] : o.terms_) add_term(m, -f);
  return *this;
}

DiffForm operator*(const RatFunc& f, const DiffForm& a) {
  DiffForm r(a.ctx_);
  if (f.is_zero()) return r;
  for (const auto& [m, g] : a.terms_) {
    RatFunc p = f * g;
    if (!p.is_zero()) r.terms_.emplace(m, std::move(p));
  }
  return r;
}

DiffForm DiffForm::scaled(const Rational& c) const {
  DiffForm r(ctx_);
  if (sgn(c) == 0) return r;
  for (const auto& [m, g] : terms_) r.terms_.emplace(m, g.scaled(c));
  return r;
}

bool DiffForm::operator==(const DiffForm& o) const {
  if (ctx_ && o.ctx_) require_same(ctx_, o.ctx_);
  return terms_ == o.terms_;
}

std::string DiffForm::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, f] : terms_) {
    std::string basis;
    for (int i : mask_indices(m)) {
      if (!basis.empty()) basis += "^";
      basis += "d(" + ctx_->name(i) + ")";
    }
    std::string t;
    if (basis.empty()) {
      t = f.to_string(*ctx_);
    } else if (f.is_one()) {
      t = basis;
    } else if ((-f).is_one()) {
      t = "-" + basis;
    } else {
      std::string c = f.to_string(*ctx_);
      if (f.is_polynomial() && f.num().size() > 1) c = "(" + c + ")";
      t = c + " * " + basis;
    }
    if (first) {
      out = t;
    } else if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

VectorField::VectorField(ContextPtr ctx) : ctx_(std::move(ctx)), c_(ctx_->dim()) {}

VectorField::VectorField(ContextPtr ctx, std::vector<RatFunc> comps) : ctx_(std::move(ctx)), c_(std::move(comps)) {
  if (static_cast<int>(c_.size()) != ctx_->dim()) throw ContextMismatch("vector field length differs from chart dimension");
}

VectorField VectorField::coordinate(ContextPtr ctx, int i) {
  VectorField v(std::move(ctx));
  v.c_.at(i) = RatFunc(1L);
  return v;
}

bool VectorField::is_zero() const {
  for (const auto& f : c_)
    if (!f.is_zero()) return false;
  return true;
}

RatFunc VectorField::apply(const RatFunc& f) const {
  RatFunc r;
  for (int i = 0; i < dim(); ++i)
    if (!c_[i].is_zero()) r += c_[i] * f.partial(i);
  return r;
}

VectorField VectorField::operator-() const {
  VectorField r = *this;
  for (auto& f : r.c_) f = -f;
  return r;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same(a.ctx_, b.ctx_);
  VectorField r = a;
  for (int i = 0; i < r.dim(); ++i) r.c_[i] += b.c_[i];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField operator*(const RatFunc& f, const VectorField& a) {
  VectorField r = a;
  for (auto& g : r.c_) g = f * g;
  return r;
}

std::string VectorField::to_string() const {
  std::string out = "[";
  for (int i = 0; i < dim(); ++i) {
    if (i) out += ", ";
    out += c_[i].to_string(*ctx_);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------

ChartMap ChartMap::identity(ContextPtr ctx) {
  ChartMap m{ctx, {}};
  for (int i = 0; i < ctx->dim(); ++i) m.images.push_back(RatFunc::var(i));
  return m;
}

bool ChartMap::is_identity() const {
  for (int i = 0; i < static_cast<int>(images.size()); ++i)
    if (images[i] != RatFunc::var(i)) return false;
  return true;
}

ChartMap ChartMap::compose(const ChartMap& inner) const {
  ChartMap out{inner.ctx, {}};
  for (const auto& f : images) out.images.push_back(f.substitute(inner.images));
  return out;
}

std::string ChartMap::to_string() const {
  std::string out = "(";
  for (size_t i = 0; i < images.size(); ++i) {
    if (i) out += ", ";
    out += images[i].to_string(*ctx);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  require_same(a.context(), b.context());
  DiffForm r(a.context());
  for (const auto& [ma, fa] : a.terms()) {
    for (const auto& [mb, fb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (!s) continue;
      RatFunc p = fa * fb;
      r.add_term(ma | mb, s > 0 ? p : -p);
    }
  }
  return r;
}

DiffForm ext_d(const DiffForm& a) {
  DiffForm r(a.context());
  int n = a.context()->dim();
  for (const auto& [m, f] : a.terms()) {
    for (int j = 0; j < n; ++j) {
      if (m & (1u << j)) continue;
      RatFunc df = f.partial(j);
      if (df.is_zero()) continue;
      int below = std::popcount(static_cast<unsigned>(m) & ((1u << j) - 1u));
      r.add_term(m | IndexMask(1u << j), (below & 1) ? -df : df);
    }
  }
  return r;
}

DiffForm interior(const VectorField& xi, const DiffForm& a) {
  require_same(xi.context(), a.context());
  DiffForm r(a.context());
  for (const auto& [m, f] : a.terms()) {
    int k = 0;
    for (int i : mask_indices(m)) {
      if (!xi[i].is_zero()) {
        RatFunc c = xi[i] * f;
        r.add_term(m & IndexMask(~(1u << i)), (k & 1) ? -c : c);
      }
      ++k;
    }
  }
  return r;
}

DiffForm lie_derivative(const VectorField& xi, const DiffForm& a) {
  return ext_d(interior(xi, a)) + interior(xi, ext_d(a));
}

VectorField vf_bracket(const VectorField& xi, const VectorField& eta) {
  require_same(xi.context(), eta.context());
  std::vector<RatFunc> c(xi.dim());
  for (int i = 0; i < xi.dim(); ++i) c[i] = xi.apply(eta[i]) - eta.apply(xi[i]);
  return VectorField(xi.context(), std::move(c));
}

DiffForm pullback(const ChartMap& map, const DiffForm& a) {
  if (map.is_identity()) return a;
  if (static_cast<int>(map.images.size()) != a.context()->dim())
    throw ContextMismatch("chart map does not cover the form's variables");
  std::vector<DiffForm> dphi;
  for (const auto& f : map.images) dphi.push_back(ext_d(DiffForm(map.ctx, f)));
  DiffForm r(map.ctx);
  for (const auto& [m, f] : a.terms()) {
    DiffForm t(map.ctx, map.pull(f));
    for (int i : mask_indices(m)) t = wedge(t, dphi[i]);
    r += t;
  }
  return r;
}

VectorField pull_field(const ChartMap& map, const ChartMap& inverse, const VectorField& xi) {
  if (map.is_identity()) return VectorField(map.ctx, xi.components());
  int n = xi.dim();
  std::vector<RatFunc> out(n);
  for (int b = 0; b < n; ++b) {
    RatFunc z;
    for (int a = 0; a < n; ++a)
      if (!xi[a].is_zero()) z += inverse.images[b].partial(a) * xi[a];
    out[b] = map.pull(z);
  }
  return VectorField(map.ctx, std::move(out));
}

bool is_closed(const DiffForm& a) { return ext_d(a).is_zero(); }

RatFunc evaluate(const DiffForm& a, const std::vector<VectorField>& fields) {
  DiffForm cur = a;
  for (const auto& f : fields) cur = interior(f, cur);
  return cur.function();
}

DiffForm one_form(ContextPtr ctx, const std::vector<RatFunc>& values) {
  DiffForm r(ctx);
  for (int k = 0; k < static_cast<int>(values.size()); ++k) r.add_term(IndexMask(1u << k), values[k]);
  return r;
}

DiffForm poincare_primitive(const DiffForm& a) {
  DiffForm r(a.context());
  for (const auto& [m, f] : a.terms()) {
    int p = popcount(m);
    if (p == 0) continue;
    if (!f.is_polynomial()) throw DegreeError("homotopy operator needs polynomial coefficients");
    std::vector<int> idx = mask_indices(m);
    for (const auto& [mono, c] : f.num().terms()) {
      Rational w = c / Rational(p + static_cast<int>(mono.deg));
      for (int k = 0; k < p; ++k) {
        Monomial mk = mono * Monomial::var(idx[k]);
        RatFunc coef(MultiPoly::term(mk, (k & 1) ? Rational(-w) : w));
        r.add_term(m & IndexMask(~(1u << idx[k])), coef);
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct FormTraits {
  using Value = DiffForm;
  ContextPtr ctx;

  RatFunc scalar(const Value& v, const char* what) {
    if (v.is_zero()) return RatFunc();
    if (v.degree() != 0) throw ParseError(std::string(what) + " must be a function");
    return v.function();
  }
  Value integer(const mpz_class& z) { return DiffForm(ctx, RatFunc(Rational(z))); }
  Value variable(const std::string& name) { return DiffForm(ctx, RatFunc::var(ctx->index_of(name))); }
  Value differential(const std::string& name) { return DiffForm::dx(ctx, ctx->index_of(name)); }
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value neg(const Value& a) { return -a; }
  Value mul(const Value& a, const Value& b) { return wedge(a, b); }
  Value div(const Value& a, const Value& b) {
    RatFunc f = scalar(b, "divisor");
    return (RatFunc(1L) / f) * a;
  }
  Value power(const Value& a, long k) { return DiffForm(ctx, scalar(a, "base of a power").pow(static_cast<int>(k))); }
  Value wedge(const Value& a, const Value& b) { return algd::wedge(a, b); }
};

}  // namespace

DiffForm parse_form(const std::string& text, ContextPtr ctx) {
  FormTraits t{ctx};
  detail::ExprParser<FormTraits> p(text, t);
  DiffForm r = p.parse();
  return DiffForm(ctx) + r;
}

}  // namespace algd
