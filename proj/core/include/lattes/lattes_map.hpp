#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lattes/curve.hpp"
#include "lattes/ffield.hpp"
#include "lattes/numbers.hpp"

namespace lattes {

/// Index of a point of P^1(F_q): field elements by rank, infinity at q.
using P1Index = std::int64_t;

/// The degree-d^2 rational self-map of P^1 that shadows multiplication by d
/// on the curve: it sends x(P) to x(dP). Evaluation lifts the input to a
/// point over GF(q^2) (every base x-coordinate lifts there), multiplies by
/// d, and projects back; the result is independent of the chosen lift.
/// Immutable after construction and safe to share across threads.
class LattesMap {
 public:
  /// d must be nonzero and coprime to the characteristic. A prebuilt solver
  /// for the quadratic extension may be shared across maps over one field.
  LattesMap(WeierstrassCurve curve, std::int64_t d,
            std::shared_ptr<const QuadraticSolver> ext_solver = nullptr);

  std::int64_t q() const { return curve_.q(); }
  std::int64_t d() const { return d_; }
  const WeierstrassCurve& curve() const { return curve_; }
  const WeierstrassCurve& extended_curve() const { return ext_curve_; }
  const FieldPtr& ext_field() const { return ext_; }
  const std::shared_ptr<const QuadraticSolver>& ext_solver() const { return solver_; }

  /// Image of the P^1 point with the given index.
  P1Index eval(P1Index a) const;

  /// Some lift of the (finite) point with index a to the extension curve.
  CurvePoint lift(P1Index a) const;

  /// P^1 index of the x-coordinate of a point of the extension curve;
  /// throws logic_error if the coordinate is not on the base line.
  P1Index project(const CurvePoint& P) const;

 private:
  WeierstrassCurve curve_;
  std::int64_t d_;
  FieldPtr ext_;
  WeierstrassCurve ext_curve_;
  std::shared_ptr<const QuadraticSolver> solver_;
};

/// The successor table of a self-map of P^1(F_q) (q + 1 nodes, infinity
/// last) with per-node periodicity flags.
struct FunctionalGraph {
  std::int64_t q = 0;
  std::vector<P1Index> succ;
  std::vector<char> periodic;
};

/// Build a graph from a successor table, marking cycle nodes by iterated
/// removal of in-degree-0 nodes.
FunctionalGraph graph_from_successors(std::int64_t q, std::vector<P1Index> succ);

/// Tabulate the map on all of P^1(F_q).
FunctionalGraph lattes_table(const LattesMap& map);

/// Tables for several d over one curve, sharing each point's lift and the
/// incremental multiples P, 2P, 3P, ... (worth it for dense d ranges).
std::vector<FunctionalGraph> lattes_tables(const WeierstrassCurve& curve,
                                           const std::vector<std::int64_t>& ds,
                                           std::shared_ptr<const QuadraticSolver> ext_solver = nullptr);

/// Indices of the cycle nodes.
std::vector<P1Index> periodic_set(const FunctionalGraph& g);

/// True iff the successor table is a bijection (equivalently, every node
/// is periodic).
bool is_permutation(const FunctionalGraph& g);

/// #periodic / (q + 1) as a reduced fraction.
Rational oracle_density(const FunctionalGraph& g);
Rational oracle_density(const LattesMap& map);

/// Second brute-force oracle, independent of iteration: indices a whose
/// lifts to E(F_{q^2}) include a point of order coprime to d. Checks that
/// every lift satisfies F(P) = +-P along the way.
std::vector<P1Index> periodic_via_order(const LattesMap& map);

}  // namespace lattes
