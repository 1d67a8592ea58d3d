#include "lattes/lattes_map.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lattes {

LattesMap::LattesMap(WeierstrassCurve curve, std::int64_t d,
                     std::shared_ptr<const QuadraticSolver> ext_solver)
    : curve_(std::move(curve)),
      d_(d),
      ext_(ext_solver ? ext_solver->field() : quadratic_ext(curve_.field())),
      ext_curve_(base_change(curve_, ext_)),
      solver_(std::move(ext_solver)) {
  if (d_ == 0) throw std::invalid_argument("multiplier d must be nonzero");
  const std::int64_t p = curve_.field()->characteristic();
  if (d_ % p == 0)
    throw std::invalid_argument("multiplier d must be coprime to the characteristic");
  if (!solver_) solver_ = std::make_shared<QuadraticSolver>(ext_);
  if (!solver_->field()->equal_to(*ext_))
    throw std::invalid_argument("solver field does not match the quadratic extension");
}

CurvePoint LattesMap::lift(P1Index a) const {
  if (a == q()) return CurvePoint::infinity();
  FieldElement x = embed(curve_.field()->element_from_rank(a), ext_);
  std::vector<CurvePoint> lifts = lift_x(ext_curve_, x, *solver_);
  if (lifts.empty())
    throw std::logic_error("x-coordinate failed to lift over the quadratic extension");
  return lifts.front();
}

P1Index LattesMap::project(const CurvePoint& P) const {
  if (P.is_infinity()) return q();
  if (!in_base(P.x()))
    throw std::logic_error("Lattes image has an x-coordinate outside the base line");
  return restrict_to_base(P.x()).rank();
}

P1Index LattesMap::eval(P1Index a) const {
  if (a < 0 || a > q()) throw std::invalid_argument("P^1 index out of range");
  if (a == q()) return a;  // infinity is fixed
  return project(ext_curve_.scalar_mul(d_, lift(a)));
}

FunctionalGraph graph_from_successors(std::int64_t q, std::vector<P1Index> succ) {
  const std::size_t n = static_cast<std::size_t>(q) + 1;
  if (succ.size() != n) throw std::invalid_argument("successor table has wrong length");
  FunctionalGraph g;
  g.q = q;
  g.succ = std::move(succ);
  // Peel nodes of in-degree 0; survivors are exactly the cycle nodes.
  std::vector<std::int64_t> indeg(n, 0);
  for (P1Index v : g.succ) {
    if (v < 0 || v >= static_cast<P1Index>(n))
      throw std::invalid_argument("successor index out of range");
    ++indeg[static_cast<std::size_t>(v)];
  }
  std::vector<P1Index> stack;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) stack.push_back(static_cast<P1Index>(i));
  std::vector<char> alive(n, 1);
  while (!stack.empty()) {
    P1Index u = stack.back();
    stack.pop_back();
    alive[static_cast<std::size_t>(u)] = 0;
    P1Index v = g.succ[static_cast<std::size_t>(u)];
    if (--indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
  }
  g.periodic = std::move(alive);
  return g;
}

FunctionalGraph lattes_table(const LattesMap& map) {
  const std::int64_t q = map.q();
  if (q > max_enumerable_order())
    throw std::invalid_argument("field too large to tabulate the map");
  std::vector<P1Index> succ(static_cast<std::size_t>(q) + 1);
  for (P1Index a = 0; a <= q; ++a) succ[static_cast<std::size_t>(a)] = map.eval(a);
  return graph_from_successors(q, std::move(succ));
}

std::vector<FunctionalGraph> lattes_tables(const WeierstrassCurve& curve,
                                           const std::vector<std::int64_t>& ds,
                                           std::shared_ptr<const QuadraticSolver> ext_solver) {
  if (ds.empty()) return {};
  const std::int64_t q = curve.q();
  if (q > max_enumerable_order())
    throw std::invalid_argument("field too large to tabulate the map");
  LattesMap probe(curve, ds.front(), std::move(ext_solver));  // validates ds.front()
  const std::int64_t p = curve.field()->characteristic();
  std::int64_t dmax = 0;
  for (std::int64_t d : ds) {
    if (d == 0 || d % p == 0)
      throw std::invalid_argument("multiplier d must be nonzero and coprime to the characteristic");
    dmax = std::max(dmax, d < 0 ? -d : d);
  }
  const WeierstrassCurve& E2 = probe.extended_curve();
  if (dmax > 64) {
    // Sparse multipliers: tabulate each map directly.
    std::vector<FunctionalGraph> out;
    for (std::int64_t d : ds)
      out.push_back(lattes_table(LattesMap(curve, d, probe.ext_solver())));
    return out;
  }
  // Dense multipliers: per point, walk P, 2P, ..., dmax*P once.
  std::vector<std::vector<P1Index>> succ(ds.size(),
                                         std::vector<P1Index>(static_cast<std::size_t>(q) + 1));
  std::vector<P1Index> x_of_multiple(static_cast<std::size_t>(dmax) + 1);
  for (P1Index a = 0; a <= q; ++a) {
    CurvePoint P = probe.lift(a);
    CurvePoint R = P;
    x_of_multiple[1] = probe.project(P);
    for (std::int64_t j = 2; j <= dmax; ++j) {
      R = E2.add(R, P);
      x_of_multiple[static_cast<std::size_t>(j)] = probe.project(R);
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
      std::int64_t d = ds[i] < 0 ? -ds[i] : ds[i];  // x(dP) = x(-dP)
      succ[i][static_cast<std::size_t>(a)] = x_of_multiple[static_cast<std::size_t>(d)];
    }
  }
  std::vector<FunctionalGraph> out;
  out.reserve(ds.size());
  for (auto& s : succ) out.push_back(graph_from_successors(q, std::move(s)));
  return out;
}

std::vector<P1Index> periodic_set(const FunctionalGraph& g) {
  std::vector<P1Index> out;
  for (std::size_t i = 0; i < g.periodic.size(); ++i)
    if (g.periodic[i]) out.push_back(static_cast<P1Index>(i));
  return out;
}

bool is_permutation(const FunctionalGraph& g) {
  std::vector<char> seen(g.succ.size(), 0);
  for (P1Index v : g.succ) {
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

Rational oracle_density(const FunctionalGraph& g) {
  std::int64_t per = std::count(g.periodic.begin(), g.periodic.end(), char(1));
  return Rational(per, g.q + 1);
}

Rational oracle_density(const LattesMap& map) { return oracle_density(lattes_table(map)); }

std::vector<P1Index> periodic_via_order(const LattesMap& map) {
  const std::int64_t q = map.q();
  if (q > max_enumerable_order())
    throw std::invalid_argument("field too large for the order oracle");
  const std::int64_t d_abs = map.d() < 0 ? -map.d() : map.d();
  TraceData td = trace(map.curve());
  // #E(F_{q^2}) via the trace recurrence.
  const std::int64_t tau2 = td.tau * td.tau - 2 * q;
  const std::int64_t group_order = q * q + 1 - tau2;
  const WeierstrassCurve& E2 = map.extended_curve();
  std::vector<P1Index> out;
  for (P1Index a = 0; a <= q; ++a) {
    if (a == q) {
      out.push_back(a);  // infinity lifts to the identity, order 1
      continue;
    }
    FieldElement x = embed(map.curve().field()->element_from_rank(a), map.ext_field());
    bool periodic = false;
    for (const CurvePoint& P : lift_x(E2, x, *map.ext_solver())) {
      CurvePoint FP(frobenius(P.x(), q), frobenius(P.y(), q));
      if (FP != P && FP != E2.negate(P))
        throw std::logic_error("lift of a base-line point is not a Frobenius eigenvector");
      if (std::gcd(point_order(E2, P, group_order), d_abs) == 1) {
        periodic = true;
        break;
      }
    }
    if (periodic) out.push_back(a);
  }
  return out;
}

}  // namespace lattes
