#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algd/context.hpp"

namespace algd {

using Rational = mpq_class;

struct Monomial {
  std::array<uint16_t, kMaxVars> e{};
  uint32_t deg = 0;

  static Monomial var(int i, int power = 1);
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool is_one() const { return deg == 0; }
};

// Graded lex comparison: >0 when a is the larger monomial.
int grlex_cmp(const Monomial& a, const Monomial& b);
Monomial operator*(const Monomial& a, const Monomial& b);
bool divides(const Monomial& a, const Monomial& b);  // a | b
Monomial operator/(const Monomial& b, const Monomial& a);
Monomial mono_gcd(const Monomial& a, const Monomial& b);

// Sparse polynomial over Q. Terms are kept sorted by decreasing grlex order,
// without zero coefficients, so equality is structural.
class MultiPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  MultiPoly() = default;
  MultiPoly(long c);  // NOLINT: integers convert implicitly
  MultiPoly(const Rational& c);  // NOLINT
  static MultiPoly var(int i);
  static MultiPoly term(const Monomial& m, const Rational& c);
  static MultiPoly from_terms(std::vector<Term> terms);  // sorts and merges

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;  // requires is_constant()
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  const Term& lead() const { return terms_.front(); }
  int total_degree() const;
  int degree_in(int var) const;
  bool uses_var(int var) const;
  uint32_t var_mask() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(const Rational& c) const;
  MultiPoly times_monomial(const Monomial& m, const Rational& c) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly partial(int var) const;
  MultiPoly pow(unsigned k) const;

  // Exact quotient a / b when b divides a, otherwise nullopt.
  static std::optional<MultiPoly> exact_div(const MultiPoly& a, const MultiPoly& b);
  // Leading coefficient 1 (zero stays zero).
  MultiPoly monic() const;
  // Rational multiple with coprime integer coefficients and positive lead.
  MultiPoly integer_primitive() const;

  std::string to_string(const Context& ctx) const;

 private:
  std::vector<Term> terms_;
};

// Monic greatest common divisor; gcd(0,0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

}  // namespace algd
