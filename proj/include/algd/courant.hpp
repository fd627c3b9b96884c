#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algd/algebroid.hpp"
#include "algd/axioms.hpp"

namespace algd {

// Omega^1 (+) A with bracket twisted by H, split by the connection. Rank 0
// is the exact algebroid Q_H (no connection).
class CourantStructure {
 public:
  static CourantStructure exact(ContextPtr ctx, const DiffForm& H);
  static CourantStructure extension(const Connection& conn, const DiffForm& H);

  const AtiyahChart& chart() const { return chart_; }
  int rank() const { return chart_.rank; }
  const ContextPtr& context() const { return chart_.ctx; }
  const std::optional<Connection>& connection() const { return conn_; }
  // omega, or the rank-0 zero matrix
  const MatrixForm& omega() const;
  const DiffForm& H() const { return H_; }
  const MatrixForm& curvature() const { return curv_; }
  // <c ^ c>; zero for exact structures
  const DiffForm& pontryagin() const { return pont_; }
  // dH = 1/2 <c ^ c>
  bool admissible() const { return admissible_; }

  // Generators: dx_k (k < n), E_ij (n + i r + j), d_k (n + r^2 + k).
  int generator_count() const { return 2 * dim() + rank() * rank(); }
  int dim() const { return chart_.ctx->dim(); }

  struct Table;
  const Table& table() const { return *table_; }

  std::string describe() const;

 private:
  CourantStructure() = default;
  void finish();

  AtiyahChart chart_;
  std::optional<Connection> conn_;
  MatrixForm zero_omega_;
  DiffForm H_;
  MatrixForm curv_;
  DiffForm pont_;
  bool admissible_ = false;
  std::shared_ptr<const Table> table_;
};

// alpha + a + nabla(xi)
struct CourantElement {
  DiffForm alpha;
  MatrixForm a;
  VectorField xi;

  static CourantElement zero(const CourantStructure& s);
  static CourantElement form(const CourantStructure& s, const DiffForm& alpha);
  static CourantElement matrix(const CourantStructure& s, const MatrixForm& a);
  static CourantElement field(const CourantStructure& s, const VectorField& xi);

  bool is_zero() const { return alpha.is_zero() && a.is_zero() && xi.is_zero(); }
  CourantElement operator-() const;
  friend CourantElement operator+(const CourantElement& x, const CourantElement& y);
  friend CourantElement operator-(const CourantElement& x, const CourantElement& y);
  friend CourantElement operator*(const RatFunc& f, const CourantElement& x);
  bool operator==(const CourantElement& o) const { return alpha == o.alpha && a == o.a && xi == o.xi; }
  bool operator!=(const CourantElement& o) const { return !(*this == o); }
  std::string to_string() const;
};

struct TwoFormMorphism {
  DiffForm B;
  bool closed() const { return is_closed(B); }
};

// throws StructureMismatch when the element does not belong to s
void check_element(const CourantStructure& s, const CourantElement& e);

CourantElement dorfman_bracket(const CourantStructure& s, const CourantElement& e1, const CourantElement& e2);
RatFunc courant_pairing(const CourantStructure& s, const CourantElement& e1, const CourantElement& e2);
CourantElement courant_derivation(const CourantStructure& s, const RatFunc& f);
StructureOps<CourantElement> courant_ops(const CourantStructure& s);

AxiomReport check_courant_axioms(const CourantStructure& s, const std::vector<std::array<CourantElement, 3>>& triples,
                                 const std::vector<RatFunc>& functions, bool parallel = false);

CourantElement jacobiator(const CourantStructure& s, const CourantElement& e0, const CourantElement& e1,
                          const CourantElement& e2);
// iota_2 iota_1 iota_0 (-1/2 <c ^ c> + dH)
DiffForm jacobiator_predicted(const CourantStructure& s, const VectorField& xi0, const VectorField& xi1,
                              const VectorField& xi2);

CourantStructure twist_by_H(const CourantStructure& s, const DiffForm& extra);
CourantStructure with_H(const CourantStructure& s, const DiffForm& H);

// (alpha + iota_xi B, a, xi); a morphism from the H + dB structure to the H one.
CourantElement exp_B(const TwoFormMorphism& B, const CourantElement& e);

// <c ^ A> + 1/2 <[nabla, A] ^ A> + 1/6 <[A,A] ^ A>, A = omega' - omega
DiffForm cs_form(const Connection& conn, const Connection& conn2);

// phi(nabla, nabla'): elements of the (nabla', H + P(nabla,nabla')) structure
// to elements of s, which carries nabla.
CourantElement phi_change(const CourantStructure& s, const Connection& conn2, const CourantElement& e);
CourantElement phi_change(const Connection& conn, const Connection& conn2, const CourantElement& e);

// phi(n,n') o phi(n',n'') o phi(n'',n) read off as exp(B).
TwoFormMorphism triple_composition(const Connection& c0, const Connection& c1, const Connection& c2);

using CourantLift = std::function<CourantElement(const VectorField&)>;

struct CourantCurvature {
  MatrixForm g_part;  // curvature of the induced connection on A
  DiffForm c_rel;
  bool totally_skew = true;
};

// throws NotLinear / NotIsotropic
CourantCurvature curvature_courant(const CourantStructure& s, const CourantLift& lift);
CourantLift canonical_lift(const CourantStructure& s);
// Subtracts 1/2 sum_j <s(xi), s(d_j)> dx_j.
CourantLift isotropize(const CourantStructure& s, const CourantLift& section);

// Q + s: the structure with H + H_Q, and the pushout map on pairs.
CourantStructure baer_sum(const CourantStructure& q, const CourantStructure& s);
CourantElement baer_sum_map(const CourantStructure& q, const CourantStructure& s, const CourantElement& eq,
                            const CourantElement& es);

// Q with s2 = Q + s1, normalized at s2's connection.
CourantStructure courant_difference(const CourantStructure& s2, const CourantStructure& s1);

// Fiber-product model of s2 - s1: pairs with equal image in A modulo the
// diagonal g-hat. The map sends a class to its representative in
// courant_difference(s2, s1).
struct DifferencePair {
  CourantElement e2, e1;
};
CourantElement difference_class(const CourantStructure& s2, const CourantStructure& s1, const DifferencePair& p);
// Pairs whose s1 entry is e1 and whose s2 entry has the same image in A.
DifferencePair difference_lift(const CourantStructure& s2, const CourantStructure& s1, const CourantElement& e1,
                               const DiffForm& alpha2);

struct MorphismCheck {
  bool brackets = true;
  bool pairings = true;
  bool anchors = true;
  std::vector<std::string> witnesses;
  bool passed() const { return brackets && pairings && anchors; }
};

// Checks that phi : src -> dst intertwines bracket, pairing and anchor.
MorphismCheck check_morphism(const CourantStructure& src, const CourantStructure& dst,
                             const std::function<CourantElement(const CourantElement&)>& phi,
                             const std::vector<std::pair<CourantElement, CourantElement>>& samples);

// Exact algebroid presented by connections s_i = s_0 + offset_i with
// curvatures c(s_i). Elements are (label, q) with q in split coordinates
// relative to s_label.
struct TorsorLabel {
  std::string label;
  DiffForm offset;     // 2-form, relative to a common reference
  DiffForm curvature;  // 3-form
};

class TorsorModel {
 public:
  struct Elem {
    int label = 0;
    CourantElement q;
  };

  // throws InconsistentPresentation unless c_j = c_i + d(offset_j - offset_i)
  TorsorModel(ContextPtr ctx, std::vector<TorsorLabel> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  const TorsorLabel& label(int i) const { return labels_.at(i); }
  Elem relabel(const Elem& e, int target) const;
  Elem bracket(const Elem& x, const Elem& y) const;
  RatFunc pairing(const Elem& x, const Elem& y) const;
  // Q_{c(s_base)}
  CourantStructure structure(int base) const;
  CourantElement to_structure(const Elem& e, int base) const;

 private:
  ContextPtr ctx_;
  std::vector<TorsorLabel> labels_;
  CourantStructure q0_;
};

TorsorModel torsor_twist(ContextPtr ctx, std::vector<TorsorLabel> labels);

}  // namespace algd
