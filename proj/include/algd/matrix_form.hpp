#pragma once

#include <string>
#include <vector>

#include "algd/forms.hpp"

namespace algd {

// r x r matrix of homogeneous p-forms; p = 0 gives gl_r-valued functions.
class MatrixForm {
 public:
  MatrixForm() = default;
  MatrixForm(ContextPtr ctx, int rank, int degree);
  static MatrixForm identity(ContextPtr ctx, int rank);
  // Elementary matrix E_ij (0-based), degree 0.
  static MatrixForm elementary(ContextPtr ctx, int rank, int i, int j);
  static MatrixForm functions(ContextPtr ctx, int rank, const std::vector<RatFunc>& row_major);
  // alpha (x) m for a degree-0 matrix m.
  static MatrixForm tensor(const DiffForm& alpha, const MatrixForm& m);

  const ContextPtr& context() const { return ctx_; }
  int rank() const { return rank_; }
  int degree() const { return degree_; }
  const DiffForm& at(int i, int j) const { return e_[i * rank_ + j]; }
  // throws DegreeError unless f is homogeneous of this matrix's degree
  void set(int i, int j, const DiffForm& f);
  void set(int i, int j, const RatFunc& f);
  // entry of a degree-0 matrix as a function
  RatFunc fn(int i, int j) const { return at(i, j).function(); }
  bool is_zero() const;

  MatrixForm operator-() const;
  friend MatrixForm operator+(const MatrixForm& a, const MatrixForm& b);
  friend MatrixForm operator-(const MatrixForm& a, const MatrixForm& b);
  friend MatrixForm operator*(const RatFunc& f, const MatrixForm& a);
  MatrixForm scaled(const Rational& c) const;
  bool operator==(const MatrixForm& o) const;
  bool operator!=(const MatrixForm& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  int rank_ = 0;
  int degree_ = 0;
  std::vector<DiffForm> e_;
};

void require_compatible(const MatrixForm& a, const MatrixForm& b);

// Matrix product with entries multiplied by wedge.
MatrixForm mat_wedge(const MatrixForm& a, const MatrixForm& b);
// <A ^ B> = sum alpha ^ beta Tr(ab).
DiffForm mat_wedge_pair(const MatrixForm& a, const MatrixForm& b);
DiffForm trace(const MatrixForm& a);
// [A,B] = A^B - (-1)^{pq} B^A.
MatrixForm mat_bracket(const MatrixForm& a, const MatrixForm& b);
MatrixForm mat_ext_d(const MatrixForm& a);
// d A + [omega, A]
MatrixForm covariant_d(const MatrixForm& omega, const MatrixForm& a);
MatrixForm mat_interior(const VectorField& xi, const MatrixForm& a);
MatrixForm mat_pullback(const ChartMap& map, const MatrixForm& a);
MatrixForm mat_apply(const VectorField& xi, const MatrixForm& a);  // entrywise xi(a), degree 0
// Matrix 1-form sum_k dx_k (x) blocks[k].
MatrixForm mat_one_form(ContextPtr ctx, const std::vector<MatrixForm>& blocks);
// Entrywise evaluation of a matrix p-form on p fields.
MatrixForm mat_evaluate(const MatrixForm& a, const std::vector<VectorField>& fields);

// Degree-0 helpers.
RatFunc mat_trace_product(const MatrixForm& a, const MatrixForm& b);  // Tr(ab)
MatrixForm mat_inverse(const MatrixForm& a);  // throws DivisionByZero if singular
RatFunc mat_det(const MatrixForm& a);

}  // namespace algd
