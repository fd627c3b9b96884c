#pragma once

#include <string>
#include <vector>

#include "algd/matrix_form.hpp"

namespace algd {

// Trivialized Atiyah algebra gl_r (+) T on a chart.
struct AtiyahChart {
  ContextPtr ctx;
  int rank = 1;

  bool operator==(const AtiyahChart& o) const { return rank == o.rank && *ctx == *o.ctx; }
};

struct AlgElement {
  MatrixForm m;  // degree 0
  VectorField xi;
};

// nabla(xi) = (iota_xi omega, xi)
struct Connection {
  MatrixForm omega;  // degree 1

  explicit Connection(MatrixForm w);
  static Connection flat(ContextPtr ctx, int rank);
  int rank() const { return omega.rank(); }
  const ContextPtr& context() const { return omega.context(); }
  AlgElement lift(const VectorField& xi) const;
  // iota_xi omega as a matrix of functions
  MatrixForm at(const VectorField& xi) const;
};

// Element of g-hat: a functional on A given as (trace vector, 1-form) plus b.
struct GhatElement {
  MatrixForm dual_matrix;  // pairs with the g-part by Tr(dual_matrix * m)
  DiffForm dual_form;      // pairs with the T-part by contraction
  MatrixForm b;
};

AlgElement atiyah_bracket(const AlgElement& e1, const AlgElement& e2);
// dw + w ^ w
MatrixForm curvature(const Connection& conn);
// Value of the functional on an element of A.
RatFunc ghat_apply(const GhatElement& g, const AlgElement& a);
// throws ChartMismatch when the functional does not restrict to Tr(b .)
void check_ghat(const GhatElement& g);
GhatElement ghat_element(const DiffForm& form_part, const MatrixForm& b);
GhatElement ghat_bracket(const GhatElement& g1, const GhatElement& g2);
RatFunc ghat_pairing(const GhatElement& g1, const GhatElement& g2);
// iota_xi c(a,b) = <[nabla xi, a], b>
DiffForm leibniz_cocycle(const Connection& conn, const MatrixForm& a, const MatrixForm& b);

struct InvarianceSample {
  AlgElement a;
  MatrixForm b, c;
};

struct InvarianceReport {
  bool passed = true;
  std::vector<std::string> witnesses;
};

// Checks pi(a)<b,c> = <[a,b],c> + <b,[a,c]> for the trace pairing.
InvarianceReport pairing_invariance_check(const AtiyahChart& chart, const std::vector<InvarianceSample>& samples);

}  // namespace algd
