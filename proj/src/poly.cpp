#include "algd/poly.hpp"

#include <algorithm>
#include <bit>

#include "algd/errors.hpp"

namespace algd {

Monomial Monomial::var(int i, int power) {
  Monomial m;
  m.e[i] = static_cast<uint16_t>(power);
  m.deg = power;
  return m;
}

int grlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a.e[i]) + b.e[i];
    if (s > 0xFFFFu) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<uint16_t>(s);
  }
  r.deg = a.deg + b.deg;
  return r;
}

bool divides(const Monomial& a, const Monomial& b) {
  if (a.deg > b.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Monomial operator/(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = b.e[i] - a.e[i];
  r.deg = b.deg - a.deg;
  return r;
}

Monomial mono_gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.deg = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::min(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

namespace {

bool term_greater(const MultiPoly::Term& a, const MultiPoly::Term& b) {
  return grlex_cmp(a.first, b.first) > 0;
}

// Merge two sorted term lists, combining like monomials: a + sign*b.
std::vector<MultiPoly::Term> merge(const std::vector<MultiPoly::Term>& a,
                                   const std::vector<MultiPoly::Term>& b, bool subtract) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = grlex_cmp(a[i].first, b[j].first);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.emplace_back(b[j].first, subtract ? Rational(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rational s = subtract ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
      if (sgn(s) != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly::MultiPoly(long c) {
  if (c != 0) terms_.emplace_back(Monomial{}, Rational(c));
}

MultiPoly::MultiPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace_back(Monomial{}, c);
}

MultiPoly MultiPoly::var(int i) { return term(Monomial::var(i), 1); }

MultiPoly MultiPoly::term(const Monomial& m, const Rational& c) {
  MultiPoly p;
  if (sgn(c) != 0) p.terms_.emplace_back(m, c);
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  MultiPoly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().second) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().second) == 0) p.terms_.pop_back();
  return p;
}

bool MultiPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_.back().first.is_one() ? terms_.back().second : Rational(0);
}

int MultiPoly::total_degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.deg);
}

int MultiPoly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.first.e[var]);
  return d;
}

bool MultiPoly::uses_var(int var) const {
  for (const auto& t : terms_)
    if (t.first.e[var]) return true;
  return false;
}

uint32_t MultiPoly::var_mask() const {
  uint32_t m = 0;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i)
      if (t.first.e[i]) m |= 1u << i;
  return m;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly();
  if (a.is_constant()) return b.scaled(a.terms_[0].second);
  if (b.is_constant()) return a.scaled(b.terms_[0].second);
  if (b.size() == 1) return a.times_monomial(b.terms_[0].first, b.terms_[0].second);
  if (a.size() == 1) return b.times_monomial(a.terms_[0].first, a.terms_[0].second);
  std::vector<MultiPoly::Term> prod;
  prod.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.emplace_back(s.first * t.first, s.second * t.second);
  return MultiPoly::from_terms(std::move(prod));
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return MultiPoly();
  MultiPoly r = *this;
  if (c == 1) return r;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

MultiPoly MultiPoly::times_monomial(const Monomial& m, const Rational& c) const {
  if (sgn(c) == 0) return MultiPoly();
  MultiPoly r;
  r.terms_.reserve(terms_.size());
  // multiplying by a monomial preserves the grlex order
  for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, t.second * c);
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].first == o.terms_[i].first) || terms_[i].second != o.terms_[i].second) return false;
  return true;
}

MultiPoly MultiPoly::partial(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (!t.first.e[var]) continue;
    Monomial m = t.first;
    Rational c = t.second * m.e[var];
    m.e[var] -= 1;
    m.deg -= 1;
    out.emplace_back(m, std::move(c));
  }
  return from_terms(std::move(out));
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result(1L), base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::optional<MultiPoly> MultiPoly::exact_div(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return MultiPoly();
  if (b.is_constant()) return a.scaled(1 / b.terms_[0].second);
  if (b.size() == 1) {
    const auto& [bm, bc] = b.terms_[0];
    MultiPoly q;
    q.terms_.reserve(a.size());
    for (const auto& t : a.terms_) {
      if (!divides(bm, t.first)) return std::nullopt;
      q.terms_.emplace_back(t.first / bm, t.second / bc);
    }
    return q;
  }
  MultiPoly q, r = a;
  const auto& [bm, bc] = b.terms_[0];
  std::vector<Term> qt;
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.terms_[0];
    if (!divides(bm, rm)) return std::nullopt;
    Monomial m = rm / bm;
    Rational c = rc / bc;
    r -= b.times_monomial(m, c);
    qt.emplace_back(m, std::move(c));
  }
  // quotient terms were produced in decreasing order
  q.terms_ = std::move(qt);
  return q;
}

MultiPoly MultiPoly::monic() const {
  if (is_zero() || terms_[0].second == 1) return *this;
  return scaled(1 / terms_[0].second);
}

MultiPoly MultiPoly::integer_primitive() const {
  if (is_zero()) return *this;
  mpz_class l = 1, g = 0;
  for (const auto& t : terms_) {
    mpz_class den = t.second.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  for (const auto& t : terms_) {
    mpz_class num = t.second.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  Rational f(l, g);
  f.canonicalize();
  if (sgn(terms_[0].second) < 0) f = -f;
  return scaled(f);
}

std::string MultiPoly::to_string(const Context& ctx) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool neg = sgn(c) < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int i = 0; i < ctx.dim() && i < kMaxVars; ++i) {
      if (!m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ctx.name(i);
      if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
    }
    if (mono.empty()) out += a.get_str();
    else if (a == 1) out += mono;
    else out += a.get_str() + "*" + mono;
  }
  return out;
}

// ---------------------------------------------------------------------------
// gcd: recursive primitive PRS over Q[x_others][x_v]

namespace {

std::vector<MultiPoly> coefficients_in(const MultiPoly& p, int v) {
  int d = p.degree_in(v);
  std::vector<std::vector<MultiPoly::Term>> buckets(std::max(d, 0) + 1);
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    int k = r.e[v];
    r.e[v] = 0;
    r.deg -= k;
    buckets[k].emplace_back(r, c);
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(MultiPoly::from_terms(std::move(b)));
  return out;
}

MultiPoly lead_coeff_in(const MultiPoly& p, int v) {
  int d = p.degree_in(v);
  std::vector<MultiPoly::Term> out;
  for (const auto& [m, c] : p.terms()) {
    if (m.e[v] != d) continue;
    Monomial r = m;
    r.e[v] = 0;
    r.deg -= d;
    out.emplace_back(r, c);
  }
  return MultiPoly::from_terms(std::move(out));
}

MultiPoly content_in(const MultiPoly& p, int v) {
  MultiPoly g;
  for (const auto& c : coefficients_in(p, v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return MultiPoly(1L);
  }
  return g;
}

MultiPoly divide_exactly(const MultiPoly& a, const MultiPoly& b) {
  auto q = MultiPoly::exact_div(a, b);
  if (!q) throw std::logic_error("gcd: inexact division");
  return *q;
}

MultiPoly primitive_in(const MultiPoly& p, int v) {
  return divide_exactly(p, content_in(p, v)).integer_primitive();
}

MultiPoly pseudo_rem(MultiPoly a, const MultiPoly& b, int v) {
  int db = b.degree_in(v);
  MultiPoly lcb = lead_coeff_in(b, v);
  while (!a.is_zero()) {
    int da = a.degree_in(v);
    if (da < db) break;
    MultiPoly lca = lead_coeff_in(a, v);
    MultiPoly shifted = (lca * b).times_monomial(Monomial::var(v, da - db), 1);
    a = lcb * a - shifted;
    a = a.integer_primitive();
  }
  return a;
}

MultiPoly gcd_with_monomial(const MultiPoly& mono, const MultiPoly& p) {
  Monomial g = mono.lead().first;
  for (const auto& t : p.terms()) {
    g = mono_gcd(g, t.first);
    if (g.is_one()) break;
  }
  return MultiPoly::term(g, 1);
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly(1L);
  if (a.is_monomial()) return gcd_with_monomial(a, b);
  if (b.is_monomial()) return gcd_with_monomial(b, a);
  if (a == b) return a.monic();
  uint32_t ma = a.var_mask(), mb = b.var_mask();
  if (ma & ~mb) return gcd(content_in(a, std::countr_zero(ma & ~mb)), b);
  if (mb & ~ma) return gcd(a, content_in(b, std::countr_zero(mb & ~ma)));
  int v = std::countr_zero(ma);
  MultiPoly ca = content_in(a, v), cb = content_in(b, v);
  MultiPoly c = gcd(ca, cb);
  MultiPoly pa = divide_exactly(a, ca).integer_primitive();
  MultiPoly pb = divide_exactly(b, cb).integer_primitive();
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  for (;;) {
    MultiPoly r = pseudo_rem(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = MultiPoly(1L);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, v);
  }
  if (!pb.is_constant()) pb = primitive_in(pb, v);
  return (c * pb).monic();
}

}  // namespace algd
