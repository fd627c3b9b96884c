#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algd/courant.hpp"
#include "algd/vertex.hpp"

namespace algd {

// Increasing chart indices (i0 < ... < ip).
using Simplex = std::vector<int>;

std::string simplex_name(const Simplex& s);

// A formal cover: charts share one variable context; transition(i, j) is the
// chart map expressing chart-i coordinates through chart-j coordinates, so a
// chart-i form moves to chart j by pullback along it.
class CoverSpec {
 public:
  struct Transition {
    int i, j;              // i < j
    ChartMap forward;      // chart-i coordinates in terms of chart-j ones
    ChartMap backward;     // its inverse
  };

  // Throws ChartMismatch for malformed maps and CocycleViolation when
  // transitions do not compose on a declared triple.
  CoverSpec(ContextPtr ctx, std::vector<std::string> charts, std::vector<Transition> transitions,
            std::vector<Simplex> nerve);
  // Identity transitions on every declared overlap.
  static CoverSpec shared(ContextPtr ctx, std::vector<std::string> charts, std::vector<Simplex> nerve);
  // All pairs and triples of n charts with identity transitions.
  static CoverSpec complete(ContextPtr ctx, std::vector<std::string> charts);

  const ContextPtr& context() const { return ctx_; }
  int size() const { return static_cast<int>(charts_.size()); }
  const std::string& chart(int i) const { return charts_.at(i); }
  int index_of(const std::string& name) const;  // -1 if unknown
  std::string label(const Simplex& s) const;     // chart names, e.g. (U0,U1)
  // Declared simplices of dimension p, sorted.
  const std::vector<Simplex>& simplices(int p) const;
  int max_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  bool has(const Simplex& s) const;

  // Map from chart-`to` coordinates to chart-`from` coordinates.
  const ChartMap& transition(int from, int to) const;
  RatFunc transport(const RatFunc& f, int from, int to) const;
  DiffForm transport(const DiffForm& a, int from, int to) const;
  MatrixForm transport(const MatrixForm& a, int from, int to) const;
  VectorField transport(const VectorField& xi, int from, int to) const;

 private:
  ContextPtr ctx_;
  std::vector<std::string> charts_;
  std::map<std::pair<int, int>, ChartMap> maps_;
  std::vector<std::vector<Simplex>> by_dim_;
  ChartMap identity_;
};

// Transition matrices of a rank-r bundle: frame_j = frame_i g_ij, with g_ij
// written in chart-j coordinates.
class BundleCocycle {
 public:
  // Throws CocycleViolation naming the failing simplex.
  BundleCocycle(const CoverSpec& cover, int rank, std::map<std::pair<int, int>, MatrixForm> g);
  int rank() const { return rank_; }
  // g_ij for i < j, identity for i == j, the transported inverse for i > j
  MatrixForm g(int i, int j) const;

 private:
  CoverSpec cover_;
  int rank_;
  std::map<std::pair<int, int>, MatrixForm> g_, ginv_;
};

// Values on declared p-simplices, each a q-form in the chart of the last index.
struct CechCochain {
  int p = 0, q = 0;
  std::map<Simplex, DiffForm> values;

  static CechCochain zero(const CoverSpec& cover, int p, int q);
  DiffForm at(const Simplex& s) const;  // zero form if absent
  bool is_zero() const;
  CechCochain scaled(const Rational& c) const;
  friend CechCochain operator+(const CechCochain& a, const CechCochain& b);
  friend CechCochain operator-(const CechCochain& a, const CechCochain& b);
  bool operator==(const CechCochain& o) const;
};

// Sum of components keyed by (p, q).
using TotalCochain = std::map<std::pair<int, int>, CechCochain>;

TotalCochain total_of(std::vector<CechCochain> parts);
TotalCochain total_add(const TotalCochain& a, const TotalCochain& b);
TotalCochain total_scaled(const TotalCochain& a, const Rational& c);
bool total_is_zero(const TotalCochain& a);

// (dc)_{i0..i(p+1)} = sum_m (-1)^m c(face_m), faces moved to the last chart.
CechCochain cech_d(const CoverSpec& cover, const CechCochain& c);  // throws MissingSimplex
CechCochain form_d(const CechCochain& c);
// D = d + (-1)^q cech_d on each (p, q) component
TotalCochain total_d(const CoverSpec& cover, const TotalCochain& c);

// Connections per chart in its own trivialization and A_ij = nabla_j - nabla_i
// in the trivialization and coordinates of chart j.
struct InducedConnections {
  std::vector<Connection> local;
  std::map<std::pair<int, int>, MatrixForm> A;
  // nabla_i written in trivialization j: g^-1 w g + g^-1 dg
  std::map<std::pair<int, int>, Connection> moved;
};

// nullopt seeds are flat (omega_i = 0).
InducedConnections induced_connections(const CoverSpec& cover, const BundleCocycle& bundle,
                                       const std::vector<std::optional<Connection>>& seeds);

struct CharacteristicCocycle {
  CechCochain c40, c31, c22;
  TotalCochain total() const { return total_of({c40, c31, c22}); }
};

// Pi^{4,0}_i = <c_i ^ c_i>, Pi^{3,1}_ij = -2 P(nabla_i, nabla_j), Pi^{2,2}_ijk = -<A_ij ^ A_jk>.
CharacteristicCocycle pontryagin_cocycle(const CoverSpec& cover, const BundleCocycle& bundle,
                                         const InducedConnections& conns);
CharacteristicCocycle ch2_cocycle(const CoverSpec& cover, const BundleCocycle& bundle,
                                  const InducedConnections& conns);

struct HatPAssembly {
  CechCochain P40, P31, hat31, hat22;
  // -hat31 + hat22
  TotalCochain hat() const;
  // P40 - P31 + hat22
  TotalCochain plain() const;
  std::vector<std::string> failures;  // empty when every identity holds
  bool ok() const { return failures.empty(); }
};

// Throws PrimitiveInvalid unless dH_i = 1/2 <c_i ^ c_i> on every chart.
HatPAssembly hat_P_assembly(const CoverSpec& cover, const BundleCocycle& bundle, const InducedConnections& conns,
                            const std::vector<DiffForm>& H);

// Frames per chart, each in its own chart's coordinates.
struct EvaClassCocycle {
  CechCochain h31;  // curvature of V_i - V_j
  CechCochain b22;  // 2-form of the composite trivialization
  TotalCochain total() const { return total_of({h31, b22}); }
};

EvaClassCocycle eva_class_cocycle(const CoverSpec& cover, const std::vector<FrameEVA>& frames);
// The cotangent bundle in the coframes dual to the given frames.
BundleCocycle cotangent_bundle(const CoverSpec& cover, const std::vector<FrameEVA>& frames);

// Finds X of total degree N - 1 (N the degree of target), with components of
// form degree >= min_form and polynomial coefficients of degree <= bound,
// such that D X = target.
// Throws NotClosed when D target != 0 and NoSolutionWithinBound otherwise.
TotalCochain coboundary_solve(const CoverSpec& cover, const TotalCochain& target, int bound = 6, int min_form = 2);

// Polynomial primitive of a closed form by the same monomial ansatz.
DiffForm ansatz_primitive(const DiffForm& target, int bound);

}  // namespace algd
