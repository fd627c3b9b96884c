#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "algd/ratfunc.hpp"

namespace algd {

// Bit i set <=> dx_{i+1} present. Index tuples are always increasing.
using IndexMask = uint16_t;

// Degree first, then lexicographic on the increasing index tuple.
struct MaskOrder {
  bool operator()(IndexMask a, IndexMask b) const;
};

int popcount(IndexMask m);
// Sign of dx_A ^ dx_B reordered into increasing order (0 if they overlap).
int wedge_sign(IndexMask a, IndexMask b);
std::vector<int> mask_indices(IndexMask m);
IndexMask mask_of(const std::vector<int>& idx);

class VectorField;

// Differential form sum_I f_I dx_I on a chart; mixed degrees allowed.
class DiffForm {
 public:
  using Terms = std::map<IndexMask, RatFunc, MaskOrder>;

  DiffForm() = default;
  explicit DiffForm(ContextPtr ctx);
  DiffForm(ContextPtr ctx, const RatFunc& f);
  static DiffForm dx(ContextPtr ctx, int i);
  static DiffForm term(ContextPtr ctx, IndexMask m, const RatFunc& f);

  const ContextPtr& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  RatFunc coeff(IndexMask m) const;
  void add_term(IndexMask m, const RatFunc& f);

  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous() const;
  // Degree of a homogeneous form; -1 for zero; throws DegreeError if mixed.
  int degree() const;
  DiffForm component(int p) const;
  // The 0-form part as a function.
  RatFunc function() const { return coeff(0); }

  DiffForm operator-() const;
  DiffForm& operator+=(const DiffForm& o);
  DiffForm& operator-=(const DiffForm& o);
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend DiffForm operator*(const RatFunc& f, const DiffForm& a);
  DiffForm scaled(const Rational& c) const;
  bool operator==(const DiffForm& o) const;
  bool operator!=(const DiffForm& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  Terms terms_;
};

// Sum f_i d/dx_i.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(ContextPtr ctx);
  VectorField(ContextPtr ctx, std::vector<RatFunc> comps);
  static VectorField coordinate(ContextPtr ctx, int i);

  const ContextPtr& context() const { return ctx_; }
  int dim() const { return static_cast<int>(c_.size()); }
  const RatFunc& operator[](int i) const { return c_[i]; }
  RatFunc& operator[](int i) { return c_[i]; }
  const std::vector<RatFunc>& components() const { return c_; }
  bool is_zero() const;

  // Derivative of f along this field.
  RatFunc apply(const RatFunc& f) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const RatFunc& f, const VectorField& a);
  bool operator==(const VectorField& o) const { return c_ == o.c_; }
  bool operator!=(const VectorField& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  std::vector<RatFunc> c_;
};

// Coordinate map: images[i] is the pullback of the i-th target coordinate.
struct ChartMap {
  ContextPtr ctx;
  std::vector<RatFunc> images;

  static ChartMap identity(ContextPtr ctx);
  bool is_identity() const;
  // (this o inner): x -> this(inner(x))
  ChartMap compose(const ChartMap& inner) const;
  RatFunc pull(const RatFunc& f) const { return f.substitute(images); }
  std::string to_string() const;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm ext_d(const DiffForm& a);
DiffForm interior(const VectorField& xi, const DiffForm& a);
DiffForm lie_derivative(const VectorField& xi, const DiffForm& a);
VectorField vf_bracket(const VectorField& xi, const VectorField& eta);
DiffForm pullback(const ChartMap& map, const DiffForm& a);
// Pushforward of a field along an invertible map, expressed in source
// coordinates: the field eta with (map^*)(xi-derivative) = eta(map^* f).
VectorField pull_field(const ChartMap& map, const ChartMap& inverse, const VectorField& xi);
bool is_closed(const DiffForm& a);

// p-form on p fields, determinant convention: (dx1^dx2)(d1,d2) = 1.
RatFunc evaluate(const DiffForm& a, const std::vector<VectorField>& fields);

// 1-form whose value on d_k is values[k].
DiffForm one_form(ContextPtr ctx, const std::vector<RatFunc>& values);

// Poincare homotopy operator centred at the origin; d(h(a)) = a for closed
// polynomial a of positive degree.
DiffForm poincare_primitive(const DiffForm& a);

// Form literal: `f * d(x1)^d(x3) + ...`; throws ParseError.
DiffForm parse_form(const std::string& text, ContextPtr ctx);

}  // namespace algd
