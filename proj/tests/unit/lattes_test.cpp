#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "lattes/lattes_map.hpp"
#include "lattes/text.hpp"

using namespace lattes;

namespace {

WeierstrassCurve e5() { return parse_curve("5:0,0,0,1,1"); }
WeierstrassCurve e7() { return parse_curve("7:0,0,0,1,-1"); }

FieldPtr field_of_order(std::int64_t q) {
  const std::int64_t p = distinct_prime_factors(q)[0];
  int k = 0;
  for (std::int64_t v = q; v > 1; v /= p) ++k;
  return make_field(p, k);
}

// Independent periodicity oracle: walk q + 2 steps from i, then check
// whether iterating from that point ever returns to it (it is on a cycle by
// then), and whether i itself reappears.
std::vector<P1Index> periodic_by_iteration(const FunctionalGraph& g) {
  std::vector<P1Index> out;
  const std::size_t n = g.succ.size();
  for (std::size_t i = 0; i < n; ++i) {
    P1Index cur = static_cast<P1Index>(i);
    bool back = false;
    for (std::size_t step = 0; step <= n && !back; ++step) {
      cur = g.succ[static_cast<std::size_t>(cur)];
      back = cur == static_cast<P1Index>(i);
    }
    if (back) out.push_back(static_cast<P1Index>(i));
  }
  return out;
}

}  // namespace

TEST_CASE("map construction validates the multiplier") {
  CHECK_THROWS_AS(LattesMap(e5(), 0), std::invalid_argument);
  CHECK_THROWS_AS(LattesMap(e5(), 5), std::invalid_argument);
  CHECK_THROWS_AS(LattesMap(e5(), -10), std::invalid_argument);
  CHECK_NOTHROW(LattesMap(e5(), -3));
  CHECK_THROWS_AS(LattesMap(e7(), 49), std::invalid_argument);
}

TEST_CASE("pointwise evaluation examples") {
  LattesMap L2(e5(), 2);
  CHECK(L2.eval(5) == 5);  // infinity is fixed
  CHECK(L2.eval(0) == 4);  // lift (0,1), double to (4,2), project

  LattesMap L1(e5(), 1);
  LattesMap Lm1(e5(), -1);
  for (P1Index a = 0; a <= 5; ++a) {
    CHECK(L1.eval(a) == a);
    CHECK(Lm1.eval(a) == a);  // x(-P) = x(P)
  }
}

TEST_CASE("tables, periodicity and permutation flags on the worked examples") {
  LattesMap L3(e5(), 3);
  FunctionalGraph g3 = lattes_table(L3);
  CHECK(periodic_set(g3) == std::vector<P1Index>{5});  // only infinity
  CHECK(oracle_density(g3) == Rational(1, 6));
  CHECK(!is_permutation(g3));

  LattesMap L2(e5(), 2);
  FunctionalGraph g2 = lattes_table(L2);
  CHECK(periodic_set(g2).size() == 6);
  CHECK(is_permutation(g2));
  CHECK(oracle_density(g2) == Rational(1));

  LattesMap L55(e7(), 55);
  CHECK(oracle_density(L55) == Rational(1, 8));
  CHECK(is_permutation(lattes_table(LattesMap(e7(), 2))));
  CHECK(!is_permutation(lattes_table(LattesMap(e7(), 5))));
}

TEST_CASE("cycle detection on hand-built graphs") {
  FunctionalGraph id6 = graph_from_successors(5, {0, 1, 2, 3, 4, 5});
  CHECK(periodic_set(id6).size() == 6);
  CHECK(is_permutation(id6));

  FunctionalGraph const0 = graph_from_successors(5, {0, 0, 0, 0, 0, 0});
  CHECK(periodic_set(const0) == std::vector<P1Index>{0});
  CHECK(!is_permutation(const0));

  // rho shape: 0 -> 1 -> 2 -> 3 -> 2, plus 4 -> 0, inf -> inf
  FunctionalGraph rho = graph_from_successors(5, {1, 2, 3, 2, 0, 5});
  CHECK(periodic_set(rho) == std::vector<P1Index>{2, 3, 5});
}

TEST_CASE("peeling agrees with the iteration oracle and is succ-invariant") {
  std::vector<FunctionalGraph> graphs;
  graphs.push_back(lattes_table(LattesMap(e5(), 3)));
  graphs.push_back(lattes_table(LattesMap(e5(), 2)));
  for (std::int64_t d : {2, 5, 11, 55}) graphs.push_back(lattes_table(LattesMap(e7(), d)));
  graphs.push_back(graph_from_successors(5, {1, 2, 3, 2, 0, 5}));
  for (const FunctionalGraph& g : graphs) {
    auto per = periodic_set(g);
    CHECK(per == periodic_by_iteration(g));
    // succ restricted to the periodic set permutes it
    std::set<P1Index> per_set(per.begin(), per.end());
    std::set<P1Index> image;
    for (P1Index i : per) {
      CHECK(per_set.count(g.succ[static_cast<std::size_t>(i)]) == 1);
      image.insert(g.succ[static_cast<std::size_t>(i)]);
    }
    CHECK(image == per_set);
  }
}

TEST_CASE("the two brute-force oracles agree") {
  {
    LattesMap L3(e5(), 3);
    auto by_order = periodic_via_order(L3);
    CHECK(by_order == std::vector<P1Index>{5});
    CHECK(by_order == periodic_set(lattes_table(L3)));
  }
  for (std::int64_t d : {2, 5, 11, 55}) {
    LattesMap L(e7(), d);
    CHECK(periodic_via_order(L) == periodic_set(lattes_table(L)));
  }
  for (std::int64_t q : {2, 3, 4, 9}) {
    auto field = field_of_order(q);
    const std::int64_t p = field->characteristic();
    for (const WeierstrassCurve& C : first_smooth_curves(field, 3)) {
      for (std::int64_t d : {2, 3, 5}) {
        if (d % p == 0) continue;
        LattesMap L(C, d);
        auto by_order = periodic_via_order(L);
        CHECK(by_order == periodic_set(lattes_table(L)));
        CHECK(std::find(by_order.begin(), by_order.end(), q) != by_order.end());  // infinity
      }
    }
  }
}

TEST_CASE("evaluation is independent of the lift and semiconjugates the group law") {
  // L_d(x(P)) = x(dP) for every rational point of the extension curve.
  auto E = e5();
  auto ext = quadratic_ext(E.field());
  auto E2 = base_change(E, ext);
  LattesMap L2ext(E2, 2);
  for (const CurvePoint& P : enumerate_points(E2)) {
    if (P.is_infinity()) continue;
    P1Index a = P.x().rank();
    CurvePoint dP = E2.scalar_mul(2, P);
    P1Index expect = dP.is_infinity() ? E2.q() : dP.x().rank();
    CHECK(L2ext.eval(a) == expect);
  }
}

TEST_CASE("composition: the de-table is the d-table after the e-table") {
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
    auto field = field_of_order(q);
    const std::int64_t p = field->characteristic();
    std::vector<WeierstrassCurve> curves = first_smooth_curves(field, 25);
    if (q == 5) curves.push_back(e5());
    if (q == 7) curves.push_back(e7());
    auto solver = std::make_shared<QuadraticSolver>(quadratic_ext(field));
    for (const WeierstrassCurve& C : curves) {
      for (std::int64_t d : {2, 3}) {
        for (std::int64_t e : {2, 3}) {
          if ((d * e) % p == 0) continue;
          auto tables = lattes_tables(C, {d, e, d * e}, solver);
          const auto& gd = tables[0].succ;
          const auto& ge = tables[1].succ;
          const auto& gde = tables[2].succ;
          for (P1Index a = 0; a <= q; ++a)
            CHECK(gde[static_cast<std::size_t>(a)] ==
                  gd[static_cast<std::size_t>(ge[static_cast<std::size_t>(a)])]);
        }
      }
    }
  }
}

TEST_CASE("multi-d tabulation matches per-map tabulation") {
  auto solver = std::make_shared<QuadraticSolver>(quadratic_ext(e7().field()));
  auto tables = lattes_tables(e7(), {2, 3, 4, 5, 6, 11}, solver);
  std::vector<std::int64_t> ds{2, 3, 4, 5, 6, 11};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    FunctionalGraph direct = lattes_table(LattesMap(e7(), ds[i], solver));
    CHECK(tables[i].succ == direct.succ);
    CHECK(tables[i].periodic == direct.periodic);
  }
}
