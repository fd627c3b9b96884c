#include "algd/linsolve.hpp"

#include <algorithm>

namespace algd {

namespace {

struct Row {
  std::map<int, Rational> a;  // column -> coefficient
  Rational b;
};

// row -= f * other
void axpy(Row& row, const Rational& f, const Row& other) {
  for (const auto& [c, v] : other.a) {
    Rational& x = row.a[c];
    x -= f * v;
    if (x == 0) row.a.erase(c);
  }
  row.b -= f * other.b;
}

}  // namespace

std::optional<std::vector<Rational>> solve_sparse(const std::vector<SparseVec>& columns, const SparseVec& rhs) {
  std::map<int, Row> rows;
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [r, v] : columns[c])
      if (v != 0) rows[r].a[static_cast<int>(c)] = v;
  for (const auto& [r, v] : rhs)
    if (v != 0) rows[r].b = v;

  // echelon form keyed by leading column
  std::map<int, Row> pivots;
  for (auto& [id, row] : rows) {
    (void)id;
    while (!row.a.empty()) {
      auto lead = row.a.begin();
      auto p = pivots.find(lead->first);
      if (p == pivots.end()) break;
      axpy(row, lead->second / p->second.a.begin()->second, p->second);
    }
    if (row.a.empty()) {
      if (row.b != 0) return std::nullopt;
      continue;
    }
    int lead = row.a.begin()->first;
    pivots.emplace(lead, std::move(row));
  }

  std::vector<Rational> x(columns.size());
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const Row& row = it->second;
    Rational acc = row.b;
    auto e = row.a.begin();
    for (auto j = std::next(e); j != row.a.end(); ++j) acc -= j->second * x[j->first];
    x[e->first] = acc / e->second;
  }
  return x;
}

std::vector<Monomial> monomials_up_to(int n, int bound) {
  std::vector<Monomial> out;
  std::vector<int> e(n, 0);
  // enumerate by degree, then lexicographically
  for (int deg = 0; deg <= bound; ++deg) {
    std::vector<Monomial> layer;
    auto rec = [&](auto&& self, int var, int left) -> void {
      if (var == n - 1) {
        e[var] = left;
        Monomial m;
        for (int i = 0; i < n; ++i) m.e[i] = static_cast<uint16_t>(e[i]);
        m.deg = static_cast<uint32_t>(deg);
        layer.push_back(m);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[var] = k;
        self(self, var + 1, left - k);
      }
    };
    if (n == 0) {
      if (deg == 0) out.push_back(Monomial{});
      continue;
    }
    rec(rec, 0, deg);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace algd
