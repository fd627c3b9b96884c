#include "algd/parse.hpp"

#include "algd/expr_parser.hpp"

namespace algd {

namespace {

struct FunctionTraits {
  using Value = RatFunc;
  const Context& ctx;

  Value integer(const mpz_class& z) { return RatFunc(Rational(z)); }
  Value variable(const std::string& name) { return RatFunc::var(ctx.index_of(name)); }
  Value differential(const std::string&) { throw ParseError("d(...) is not allowed in a function literal"); }
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value neg(const Value& a) { return -a; }
  Value mul(const Value& a, const Value& b) { return a * b; }
  Value div(const Value& a, const Value& b) { return a / b; }
  Value power(const Value& a, long k) { return a.pow(static_cast<int>(k)); }
  Value wedge(const Value&, const Value&) { throw ParseError("'^' needs an integer exponent in a function literal"); }
};

}  // namespace

RatFunc parse_ratfunc(const std::string& text, const Context& ctx) {
  FunctionTraits t{ctx};
  detail::ExprParser<FunctionTraits> p(text, t);
  return p.parse();
}

}  // namespace algd
