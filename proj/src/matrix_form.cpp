#include "algd/matrix_form.hpp"

#include "algd/errors.hpp"

namespace algd {

MatrixForm::MatrixForm(ContextPtr ctx, int rank, int degree)
    : ctx_(std::move(ctx)), rank_(rank), degree_(degree), e_(rank * rank, DiffForm(ctx_)) {
  if (rank < 0) throw RankMismatch("negative rank");
}

MatrixForm MatrixForm::identity(ContextPtr ctx, int rank) {
  MatrixForm m(ctx, rank, 0);
  for (int i = 0; i < rank; ++i) m.set(i, i, RatFunc(1L));
  return m;
}

MatrixForm MatrixForm::elementary(ContextPtr ctx, int rank, int i, int j) {
  MatrixForm m(std::move(ctx), rank, 0);
  m.set(i, j, RatFunc(1L));
  return m;
}

MatrixForm MatrixForm::functions(ContextPtr ctx, int rank, const std::vector<RatFunc>& row_major) {
  if (static_cast<int>(row_major.size()) != rank * rank) throw RankMismatch("matrix entry count differs from rank^2");
  MatrixForm m(std::move(ctx), rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) m.set(i, j, row_major[i * rank + j]);
  return m;
}

MatrixForm MatrixForm::tensor(const DiffForm& alpha, const MatrixForm& m) {
  if (m.degree_ != 0) throw DegreeError("tensor needs a degree-0 matrix");
  int p = alpha.is_zero() ? 0 : alpha.degree();
  MatrixForm r(m.ctx_, m.rank_, p);
  for (int k = 0; k < m.rank_ * m.rank_; ++k) r.e_[k] = m.e_[k].function() * alpha;
  return r;
}

void MatrixForm::set(int i, int j, const DiffForm& f) {
  if (!f.is_zero() && f.degree() != degree_) throw DegreeError("matrix entry has the wrong form degree");
  e_.at(i * rank_ + j) = DiffForm(ctx_) + f;
}

void MatrixForm::set(int i, int j, const RatFunc& f) { set(i, j, DiffForm(ctx_, f)); }

bool MatrixForm::is_zero() const {
  for (const auto& f : e_)
    if (!f.is_zero()) return false;
  return true;
}

MatrixForm MatrixForm::operator-() const {
  MatrixForm r = *this;
  for (auto& f : r.e_) f = -f;
  return r;
}

void require_compatible(const MatrixForm& a, const MatrixForm& b) {
  if (a.rank() != b.rank()) throw RankMismatch("matrix forms of different rank");
  require_same(a.context(), b.context());
}

MatrixForm operator+(const MatrixForm& a, const MatrixForm& b) {
  require_compatible(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree_ != b.degree_) throw DegreeError("adding matrix forms of different degree");
  MatrixForm r = a;
  for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] += b.e_[k];
  return r;
}

MatrixForm operator-(const MatrixForm& a, const MatrixForm& b) { return a + (-b); }

MatrixForm operator*(const RatFunc& f, const MatrixForm& a) {
  MatrixForm r = a;
  for (auto& e : r.e_) e = f * e;
  return r;
}

MatrixForm MatrixForm::scaled(const Rational& c) const {
  MatrixForm r = *this;
  for (auto& e : r.e_) e = e.scaled(c);
  return r;
}

bool MatrixForm::operator==(const MatrixForm& o) const {
  if (rank_ != o.rank_) return false;
  for (size_t k = 0; k < e_.size(); ++k)
    if (e_[k] != o.e_[k]) return false;
  return true;
}

std::string MatrixForm::to_string() const {
  std::string out = "[";
  for (int i = 0; i < rank_; ++i) {
    if (i) out += ", ";
    out += "[";
    for (int j = 0; j < rank_; ++j) {
      if (j) out += ", ";
      out += at(i, j).to_string();
    }
    out += "]";
  }
  return out + "]";
}

MatrixForm mat_wedge(const MatrixForm& a, const MatrixForm& b) {
  require_compatible(a, b);
  int r = a.rank();
  MatrixForm out(a.context(), r, a.degree() + b.degree());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      DiffForm s(a.context());
      for (int k = 0; k < r; ++k)
        if (!a.at(i, k).is_zero() && !b.at(k, j).is_zero()) s += wedge(a.at(i, k), b.at(k, j));
      out.set(i, j, s);
    }
  return out;
}

DiffForm mat_wedge_pair(const MatrixForm& a, const MatrixForm& b) {
  require_compatible(a, b);
  DiffForm s(a.context());
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j)
      if (!a.at(i, j).is_zero() && !b.at(j, i).is_zero()) s += wedge(a.at(i, j), b.at(j, i));
  return s;
}

DiffForm trace(const MatrixForm& a) {
  DiffForm s(a.context());
  for (int i = 0; i < a.rank(); ++i) s += a.at(i, i);
  return s;
}

MatrixForm mat_bracket(const MatrixForm& a, const MatrixForm& b) {
  MatrixForm ab = mat_wedge(a, b), ba = mat_wedge(b, a);
  return ((a.degree() * b.degree()) % 2) ? ab + ba : ab - ba;
}

MatrixForm mat_ext_d(const MatrixForm& a) {
  MatrixForm r(a.context(), a.rank(), a.degree() + 1);
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) r.set(i, j, ext_d(a.at(i, j)));
  return r;
}

MatrixForm covariant_d(const MatrixForm& omega, const MatrixForm& a) {
  if (omega.degree() != 1 && !omega.is_zero()) throw DegreeError("connection matrix must be a 1-form");
  require_compatible(omega, a);
  MatrixForm w = omega;
  if (w.is_zero()) return mat_ext_d(a);
  return mat_ext_d(a) + mat_bracket(w, a);
}

MatrixForm mat_interior(const VectorField& xi, const MatrixForm& a) {
  if (a.degree() == 0) throw DegreeError("interior product of a 0-form");
  MatrixForm r(a.context(), a.rank(), a.degree() - 1);
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) r.set(i, j, interior(xi, a.at(i, j)));
  return r;
}

MatrixForm mat_pullback(const ChartMap& map, const MatrixForm& a) {
  MatrixForm r(map.ctx, a.rank(), a.degree());
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) r.set(i, j, pullback(map, a.at(i, j)));
  return r;
}

MatrixForm mat_apply(const VectorField& xi, const MatrixForm& a) {
  if (a.degree() != 0) throw DegreeError("derivative of a matrix needs degree 0");
  MatrixForm r(a.context(), a.rank(), 0);
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) r.set(i, j, xi.apply(a.fn(i, j)));
  return r;
}

MatrixForm mat_one_form(ContextPtr ctx, const std::vector<MatrixForm>& blocks) {
  int r = blocks.empty() ? 0 : blocks[0].rank();
  MatrixForm out(ctx, r, 1);
  for (int k = 0; k < static_cast<int>(blocks.size()); ++k)
    if (!blocks[k].is_zero()) out = out + MatrixForm::tensor(DiffForm::dx(ctx, k), blocks[k]);
  return out;
}

MatrixForm mat_evaluate(const MatrixForm& a, const std::vector<VectorField>& fields) {
  MatrixForm r(a.context(), a.rank(), 0);
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) r.set(i, j, evaluate(a.at(i, j), fields));
  return r;
}

RatFunc mat_trace_product(const MatrixForm& a, const MatrixForm& b) {
  require_compatible(a, b);
  RatFunc s;
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) {
      const DiffForm &x = a.at(i, j), &y = b.at(j, i);
      if (!x.is_zero() && !y.is_zero()) s += x.function() * y.function();
    }
  return s;
}

MatrixForm mat_inverse(const MatrixForm& a) {
  int r = a.rank();
  std::vector<std::vector<RatFunc>> m(r, std::vector<RatFunc>(2 * r));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) m[i][j] = a.fn(i, j);
    m[i][r + i] = RatFunc(1L);
  }
  for (int c = 0; c < r; ++c) {
    int piv = -1;
    for (int i = c; i < r; ++i)
      if (!m[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) throw DivisionByZero("matrix is singular");
    std::swap(m[c], m[piv]);
    RatFunc inv = RatFunc(1L) / m[c][c];
    for (auto& x : m[c]) x = x * inv;
    for (int i = 0; i < r; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      RatFunc f = m[i][c];
      for (int j = 0; j < 2 * r; ++j)
        if (!m[c][j].is_zero()) m[i][j] -= f * m[c][j];
    }
  }
  MatrixForm out(a.context(), r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out.set(i, j, m[i][r + j]);
  return out;
}

RatFunc mat_det(const MatrixForm& a) {
  int r = a.rank();
  std::vector<std::vector<RatFunc>> m(r, std::vector<RatFunc>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m[i][j] = a.fn(i, j);
  RatFunc det(1L);
  for (int c = 0; c < r; ++c) {
    int piv = -1;
    for (int i = c; i < r; ++i)
      if (!m[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return RatFunc();
    if (piv != c) {
      std::swap(m[c], m[piv]);
      det = -det;
    }
    det = det * m[c][c];
    for (int i = c + 1; i < r; ++i) {
      if (m[i][c].is_zero()) continue;
      RatFunc f = m[i][c] / m[c][c];
      for (int j = c; j < r; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace algd
