#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "algd/axioms.hpp"
#include "algd/courant.hpp"

namespace algd {

// alpha + sum_m g_m (x) t_m over a frame t.
struct VertexElement {
  DiffForm alpha;
  std::vector<RatFunc> g;

  bool is_zero() const;
  VertexElement operator-() const;
  friend VertexElement operator+(const VertexElement& x, const VertexElement& y);
  friend VertexElement operator-(const VertexElement& x, const VertexElement& y);
  bool operator==(const VertexElement& o) const { return alpha == o.alpha && g == o.g; }
  bool operator!=(const VertexElement& o) const { return !(*this == o); }
  std::string to_string(const Context& ctx) const;
};

// The exact vertex algebroid Omega^1 (+) O (x) tau of a commuting frame tau.
class FrameEVA {
 public:
  // throws FrameInvalid unless the fields form a commuting module basis
  FrameEVA(ContextPtr ctx, std::vector<VectorField> frame);
  static FrameEVA coordinate(ContextPtr ctx);
  // Frame pushed along a polynomial automorphism (map, inverse).
  static FrameEVA sheared(const ChartMap& map, const ChartMap& inverse);

  const ContextPtr& context() const { return ctx_; }
  int dim() const { return ctx_->dim(); }
  const std::vector<VectorField>& frame() const { return frame_; }

  VertexElement zero() const;
  VertexElement form(const DiffForm& alpha) const;
  // 1 (x) t_m
  VertexElement generator(int m) const;
  // The element sum_m c_m (x) t_m with anchor xi.
  VertexElement lift(const VectorField& xi) const;
  // frame coefficients of xi
  std::vector<RatFunc> coefficients(const VectorField& xi) const;

  VectorField anchor(const VertexElement& v) const;
  VertexElement derivation(const RatFunc& f) const;
  VertexElement star(const RatFunc& f, const VertexElement& v) const;
  VertexElement bracket(const VertexElement& v1, const VertexElement& v2) const;
  RatFunc pairing(const VertexElement& v1, const VertexElement& v2) const;

  void check(const VertexElement& v) const;  // throws StructureMismatch

 private:
  struct Term {
    RatFunc c;
    int gen;  // 0..n-1: t_m; n..2n-1: dx_k
  };
  std::vector<Term> terms(const VertexElement& v) const;
  VectorField gen_anchor(int gen) const;
  RatFunc gen_pairing(int a, int b) const;
  VertexElement gen_bracket(int a, int b) const;
  VertexElement gen_element(int gen) const;

  ContextPtr ctx_;
  std::vector<VectorField> frame_;
  MatrixForm inverse_;  // frame coefficients: c = xi . inverse_
};

VertexElement star(const FrameEVA& V, const RatFunc& f, const VertexElement& v);
VertexElement eva_bracket(const FrameEVA& V, const VertexElement& v1, const VertexElement& v2);
RatFunc eva_pairing(const FrameEVA& V, const VertexElement& v1, const VertexElement& v2);

// scale is the star action
StructureOps<VertexElement> vertex_ops(const FrameEVA& V);

struct VertexSample {
  VertexElement v, v1, v2;
  RatFunc f, g;
};

inline constexpr const char* kVertexAxioms[] = {"assoc",     "leib",         "symm-bracket", "anchor-lin",
                                                "pairing",   "pairing-inv",  "deriv",        "bracket-o",
                                                "pairing-o", "pairing-symm", "complex",      "jacobi",
                                                "anchor-morphism"};

AxiomReport check_vertex_axioms(const FrameEVA& V, const std::vector<VertexSample>& samples, bool parallel = false);
AxiomReport check_vertex_axioms(const StructureOps<VertexElement>& ops, const std::vector<VertexSample>& samples,
                                bool parallel = false);

// 1-truncated vertex algebra view: degree 0 = functions, degree 1 = elements.
struct TVal {
  enum Kind { Zero, Fn, Vec } kind = Zero;
  RatFunc f;
  VertexElement v;

  static TVal zero() { return {}; }
  static TVal fn(const RatFunc& x) { return {Fn, x, {}}; }
  static TVal vec(const VertexElement& x) { return {Vec, {}, x}; }
  int degree() const { return kind == Fn ? 0 : kind == Vec ? 1 : -1; }
  bool is_zero() const;
};

class TruncatedView {
 public:
  // skew = +1: x_(-1)a = a*x + d(pi(x)(a)), the sign forced by Comm_-1.
  // skew = -1 keeps the opposite sign and is only useful as a control.
  explicit TruncatedView(const FrameEVA& V, int skew = 1) : V_(V), skew_(skew) {}
  const FrameEVA& algebroid() const { return V_; }
  TVal vacuum() const { return TVal::fn(RatFunc(1L)); }
  TVal d(const TVal& a) const;  // degree 0 -> 1
  // x_(n) y for n in {-1, 0, 1}; throws DegreeError when the result would
  // have degree above 1.
  TVal op(int n, const TVal& x, const TVal& y) const;
  TVal add(const TVal& x, const TVal& y) const;
  TVal sub(const TVal& x, const TVal& y) const;
  bool equal(const TVal& x, const TVal& y) const;
  std::string show(const TVal& x) const;

 private:
  FrameEVA V_;
  int skew_;
};

inline constexpr const char* kTruncatedAxioms[] = {"vacuum", "deriv1",  "deriv2",  "comm-1",  "comm0",  "comm1",
                                                   "assoc-1", "assoc0", "assoc1", "assoc2", "assoc3"};

struct TruncatedSample {
  RatFunc a, b, c;
  VertexElement x, y, z;
};

AxiomReport check_truncated_axioms(const TruncatedView& T, const std::vector<TruncatedSample>& samples,
                                   bool parallel = false);

// V2 - V1 as pairs (v2, v1) with equal anchors modulo the diagonal Omega^1.
struct EvaPair {
  VertexElement v2, v1;
};

class EvaDifference {
 public:
  EvaDifference(FrameEVA V2, FrameEVA V1);

  const FrameEVA& first() const { return V2_; }
  const FrameEVA& second() const { return V1_; }
  const ContextPtr& context() const { return V2_.context(); }

  StructureOps<EvaPair> ops() const;
  EvaPair form(const DiffForm& alpha) const;
  // class(sigma2(t), 1 (x) t) on the frame t of V1, extended O-linearly; not isotropic
  EvaPair frame_splitting(const VectorField& xi) const;
  // isotropic splitting used as connection
  EvaPair lift(const VectorField& xi) const;
  // Omega^1 value of a class with zero anchor
  DiffForm omega_part(const EvaPair& p) const;
  bool is_zero(const EvaPair& p) const;

  // Curvature of the isotropic splitting.
  const DiffForm& H() const { return H_; }
  const CourantStructure& structure() const { return q_; }
  // The isomorphism onto Q_H: p = alpha + lift(xi) -> (alpha, xi).
  CourantElement to_structure(const EvaPair& p) const;

 private:
  FrameEVA V2_, V1_;
  std::vector<EvaPair> raw_;  // frame splitting on the frame of V1
  DiffForm H_;
  CourantStructure q_;
};

EvaDifference eva_difference(const FrameEVA& V2, const FrameEVA& V1);

}  // namespace algd
