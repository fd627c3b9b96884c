#pragma once

#include <string>
#include <vector>

#include "algd/poly.hpp"

namespace algd {

// Reduced fraction num/den with monic denominator. The canonical form is
// unique, so == is equality of functions.
class RatFunc {
 public:
  RatFunc() : den_(1L) {}
  RatFunc(long c) : num_(c), den_(1L) {}  // NOLINT
  RatFunc(const Rational& c) : num_(c), den_(1L) {}  // NOLINT
  RatFunc(MultiPoly p) : num_(std::move(p)), den_(1L) {}  // NOLINT
  // throws DivisionByZero when den == 0
  static RatFunc fraction(const MultiPoly& num, const MultiPoly& den);
  static RatFunc var(int i) { return RatFunc(MultiPoly::var(i)); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  Rational constant_value() const { return num_.constant_value(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  // throws DivisionByZero
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc scaled(const Rational& c) const;
  RatFunc pow(int k) const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc partial(int var) const;
  // Compose with images[i] substituted for variable i.
  // throws DenominatorVanishes when the image of the denominator is zero
  RatFunc substitute(const std::vector<RatFunc>& images) const;

  std::string to_string(const Context& ctx) const;

 private:
  MultiPoly num_, den_;
};

RatFunc ring_arith(const RatFunc& a, const RatFunc& b, char op);

// Partial derivative by variable name; throws UnknownVariable.
RatFunc partial(const RatFunc& f, const Context& ctx, const std::string& var);

// Evaluate a polynomial at rational-function images of the variables.
RatFunc substitute_poly(const MultiPoly& p, const std::vector<RatFunc>& images);

}  // namespace algd
