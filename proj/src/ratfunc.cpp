#include "algd/ratfunc.hpp"

#include <map>

#include "algd/errors.hpp"

namespace algd {

RatFunc RatFunc::fraction(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw DivisionByZero("division by the zero function");
  RatFunc r;
  if (num.is_zero()) return r;
  if (den.is_constant()) {
    r.num_ = num.scaled(1 / den.constant_value());
    return r;
  }
  MultiPoly g = gcd(num, den);
  if (g.is_one()) {
    r.num_ = num;
    r.den_ = den;
  } else {
    r.num_ = *MultiPoly::exact_div(num, g);
    r.den_ = *MultiPoly::exact_div(den, g);
  }
  Rational lc = r.den_.lead().second;
  if (lc != 1) {
    r.num_ = r.num_.scaled(1 / lc);
    r.den_ = r.den_.scaled(1 / lc);
  }
  return r;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_one()) return RatFunc(a.num_ + b.num_);
    return RatFunc::fraction(a.num_ + b.num_, a.den_);
  }
  if (a.den_.is_one()) return RatFunc::fraction(a.num_ * b.den_ + b.num_, b.den_);
  if (b.den_.is_one()) return RatFunc::fraction(a.num_ + b.num_ * a.den_, a.den_);
  MultiPoly g = gcd(a.den_, b.den_);
  MultiPoly ad = *MultiPoly::exact_div(a.den_, g);
  MultiPoly bd = *MultiPoly::exact_div(b.den_, g);
  return RatFunc::fraction(a.num_ * bd + b.num_ * ad, ad * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_);
  // cross-cancel so that the product is already reduced
  MultiPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  MultiPoly an = *MultiPoly::exact_div(a.num_, g1), bd = *MultiPoly::exact_div(b.den_, g1);
  MultiPoly bn = *MultiPoly::exact_div(b.num_, g2), ad = *MultiPoly::exact_div(a.den_, g2);
  RatFunc r;
  r.num_ = an * bn;
  r.den_ = ad * bd;
  Rational lc = r.den_.lead().second;
  if (lc != 1) {
    r.num_ = r.num_.scaled(1 / lc);
    r.den_ = r.den_.scaled(1 / lc);
  }
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero function");
  RatFunc inv;
  inv.num_ = b.den_;
  inv.den_ = b.num_;
  Rational lc = inv.den_.lead().second;
  if (lc != 1) {
    inv.num_ = inv.num_.scaled(1 / lc);
    inv.den_ = inv.den_.scaled(1 / lc);
  }
  return a * inv;
}

RatFunc RatFunc::scaled(const Rational& c) const {
  RatFunc r = *this;
  r.num_ = r.num_.scaled(c);
  if (r.num_.is_zero()) r.den_ = MultiPoly(1L);
  return r;
}

RatFunc RatFunc::pow(int k) const {
  if (k < 0) return RatFunc(1L) / pow(-k);
  RatFunc r;
  r.num_ = num_.pow(k);
  r.den_ = den_.pow(k);
  return r;
}

RatFunc RatFunc::partial(int var) const {
  if (den_.is_one()) return RatFunc(num_.partial(var));
  MultiPoly dn = num_.partial(var), dd = den_.partial(var);
  if (dd.is_zero()) return RatFunc::fraction(dn, den_);
  return RatFunc::fraction(dn * den_ - num_ * dd, den_ * den_);
}

RatFunc substitute_poly(const MultiPoly& p, const std::vector<RatFunc>& images) {
  // cache powers per variable
  std::vector<std::map<int, RatFunc>> powers(images.size());
  auto power = [&](int v, int k) -> const RatFunc& {
    auto it = powers[v].find(k);
    if (it != powers[v].end()) return it->second;
    return powers[v].emplace(k, images[v].pow(k)).first->second;
  };
  RatFunc acc;
  for (const auto& [m, c] : p.terms()) {
    RatFunc t(c);
    for (int i = 0; i < kMaxVars; ++i) {
      if (!m.e[i]) continue;
      if (i >= static_cast<int>(images.size()))
        throw UnknownVariable("substitution map is not total on the chart variables");
      t = t * power(i, m.e[i]);
    }
    acc += t;
  }
  return acc;
}

RatFunc RatFunc::substitute(const std::vector<RatFunc>& images) const {
  RatFunc n = substitute_poly(num_, images);
  if (den_.is_one()) return n;
  RatFunc d = substitute_poly(den_, images);
  if (d.is_zero()) throw DenominatorVanishes("denominator vanishes identically after substitution");
  return n / d;
}

std::string RatFunc::to_string(const Context& ctx) const {
  std::string n = num_.to_string(ctx);
  if (den_.is_one()) return n;
  std::string d = den_.to_string(ctx);
  if (num_.size() > 1) n = "(" + n + ")";
  int factors = 0;
  for (int i = 0; i < kMaxVars; ++i) factors += den_.lead().first.e[i] ? 1 : 0;
  if (den_.size() > 1 || factors > 1) d = "(" + d + ")";
  return n + "/" + d;
}

RatFunc ring_arith(const RatFunc& a, const RatFunc& b, char op) {
  switch (op) {
    case '+': return a + b;
    case '-': return a - b;
    case '*': return a * b;
    case '/': return a / b;
  }
  throw std::invalid_argument("ring_arith: unknown operator");
}

RatFunc partial(const RatFunc& f, const Context& ctx, const std::string& var) {
  return f.partial(ctx.index_of(var));
}

}  // namespace algd
