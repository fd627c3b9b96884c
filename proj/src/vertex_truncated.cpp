#include <map>

#include "algd/errors.hpp"
#include "algd/vertex.hpp"

namespace algd {

bool TVal::is_zero() const {
  switch (kind) {
    case Fn: return f.is_zero();
    case Vec: return v.is_zero();
    default: return true;
  }
}

TVal TruncatedView::d(const TVal& a) const {
  if (a.kind == TVal::Zero) return a;
  if (a.kind != TVal::Fn) throw DegreeError("d is only defined in degree 0");
  return TVal::vec(V_.derivation(a.f));
}

TVal TruncatedView::op(int n, const TVal& x, const TVal& y) const {
  if (n < -1 || n > 1) throw DegreeError("only the operations _(-1), _(0), _(1) exist");
  if (x.kind == TVal::Zero || y.kind == TVal::Zero) return TVal::zero();
  int deg = x.degree() + y.degree() - n - 1;
  if (deg > 1) throw DegreeError("x_(" + std::to_string(n) + ")y would have degree " + std::to_string(deg));
  if (deg < 0) return TVal::zero();
  const bool xf = x.kind == TVal::Fn, yf = y.kind == TVal::Fn;
  switch (n) {
    case -1:
      if (xf && yf) return TVal::fn(x.f * y.f);
      if (xf) return TVal::vec(V_.star(x.f, y.v));
      return TVal::vec(V_.star(y.f, x.v) + V_.derivation(RatFunc(static_cast<long>(skew_)) * V_.anchor(x.v).apply(y.f)));
    case 0:
      if (xf) return TVal::fn(-V_.anchor(y.v).apply(x.f));
      if (yf) return TVal::fn(V_.anchor(x.v).apply(y.f));
      return TVal::vec(V_.bracket(x.v, y.v));
    default:
      return TVal::fn(V_.pairing(x.v, y.v));
  }
}

TVal TruncatedView::add(const TVal& x, const TVal& y) const {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.kind != y.kind) throw DegreeError("adding values of different degree");
  return x.kind == TVal::Fn ? TVal::fn(x.f + y.f) : TVal::vec(x.v + y.v);
}

TVal TruncatedView::sub(const TVal& x, const TVal& y) const {
  TVal ny = y;
  ny.f = -y.f;
  if (y.kind == TVal::Vec) ny.v = -y.v;
  return add(x, ny);
}

bool TruncatedView::equal(const TVal& x, const TVal& y) const { return sub(x, y).is_zero(); }

std::string TruncatedView::show(const TVal& x) const {
  switch (x.kind) {
    case TVal::Fn: return x.f.to_string(*V_.context());
    case TVal::Vec: return x.v.to_string(*V_.context());
    default: return "0";
  }
}

AxiomReport check_truncated_axioms(const TruncatedView& T, const std::vector<TruncatedSample>& samples,
                                   bool parallel) {
  std::vector<std::string> names(std::begin(kTruncatedAxioms), std::end(kTruncatedAxioms));
  auto run = [&](std::size_t t) {
    const auto& s = samples[t];
    const TVal a = TVal::fn(s.a), b = TVal::fn(s.b), c = TVal::fn(s.c);
    const TVal x = TVal::vec(s.x), y = TVal::vec(s.y), z = TVal::vec(s.z);
    const TVal one = T.vacuum();
    auto o = [&](int n, const TVal& p, const TVal& q) { return T.op(n, p, q); };
    auto plus = [&](const TVal& p, const TVal& q) { return T.add(p, q); };
    auto minus = [&](const TVal& p, const TVal& q) { return T.sub(p, q); };
    std::string tag = "sample " + std::to_string(t) + ": ";

    // every named axiom collects the first failing clause of this sample
    std::map<std::string, std::string> fail;
    auto expect = [&](const char* name, const char* clause, const TVal& lhs, const TVal& rhs) {
      if (fail.count(name) || T.equal(lhs, rhs)) return;
      fail[name] = tag + clause + ": defect " + T.show(T.sub(lhs, rhs));
    };

    expect("vacuum", "a_(-1)1 = a", o(-1, a, one), a);
    expect("vacuum", "x_(-1)1 = x", o(-1, x, one), x);
    expect("vacuum", "x_(0)1 = 0", o(0, x, one), TVal::zero());

    const TVal da = T.d(a), db = T.d(b);
    expect("deriv1", "(da)_(0)b = 0", o(0, da, b), TVal::zero());
    expect("deriv1", "(da)_(0)x = 0", o(0, da, x), TVal::zero());
    expect("deriv1", "(da)_(1)x = -a_(0)x", o(1, da, x), minus(TVal::zero(), o(0, a, x)));
    expect("deriv2", "d(ab) = (da)b + a(db)", T.d(o(-1, a, b)), plus(o(-1, da, b), o(-1, a, db)));
    expect("deriv2", "d(x_(0)a) = x_(0)da", T.d(o(0, x, a)), o(0, x, da));

    expect("comm-1", "a_(-1)b = b_(-1)a", o(-1, a, b), o(-1, b, a));
    expect("comm-1", "a_(-1)x = x_(-1)a - d(x_(0)a)", o(-1, a, x), minus(o(-1, x, a), T.d(o(0, x, a))));
    expect("comm0", "x_(0)a = -a_(0)x", o(0, x, a), minus(TVal::zero(), o(0, a, x)));
    expect("comm0", "x_(0)y = -y_(0)x + d(y_(1)x)", o(0, x, y),
           plus(minus(TVal::zero(), o(0, y, x)), T.d(o(1, y, x))));
    expect("comm1", "x_(1)y = y_(1)x", o(1, x, y), o(1, y, x));

    expect("assoc-1", "(ab)c = a(bc)", o(-1, o(-1, a, b), c), o(-1, a, o(-1, b, c)));
    // _(0) is a derivation of every operation, whenever both sides exist
    for (const TVal* al : {&a, &x})
      for (const TVal* be : {&b, &y})
        for (const TVal* ga : {&c, &z})
          for (int i = -1; i <= 1; ++i) {
            TVal lhs, rhs;
            try {
              lhs = o(0, *al, o(i, *be, *ga));
              rhs = plus(o(i, o(0, *al, *be), *ga), o(i, *be, o(0, *al, *ga)));
            } catch (const DegreeError&) {
              continue;
            }
            std::string clause = std::string(al == &a ? "a" : "x") + "_(0) over " + (be == &b ? "b" : "y") + "_(" +
                                 std::to_string(i) + ")" + (ga == &c ? "c" : "z");
            expect("assoc0", clause.c_str(), lhs, rhs);
          }
    expect("assoc1", "(a_(-1)x)_(0)b = a_(-1)x_(0)b", o(0, o(-1, a, x), b), o(-1, a, o(0, x, b)));
    expect("assoc2", "(ab)_(-1)x = a_(-1)b_(-1)x + (da)_(-1)b_(0)x + (db)_(-1)a_(0)x", o(-1, o(-1, a, b), x),
           plus(plus(o(-1, a, o(-1, b, x)), o(-1, da, o(0, b, x))), o(-1, db, o(0, a, x))));
    expect("assoc3", "(a_(-1)x)_(1)y = a_(-1)x_(1)y - x_(0)y_(0)a", o(1, o(-1, a, x), y),
           minus(o(-1, a, o(1, x, y)), o(0, x, o(0, y, a))));

    SampleOutcome out;
    for (const auto& nm : names) {
      auto it = fail.find(nm);
      out.emplace_back(nm, it == fail.end() ? "" : it->second);
    }
    return out;
  };
  return merge_outcomes(names, parallel_map(samples.size(), parallel, run));
}

}  // namespace algd
