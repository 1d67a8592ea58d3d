#include <doctest.h>

#include <map>
#include <set>

#include "lattes/curve.hpp"
#include "lattes/text.hpp"

using namespace lattes;

namespace {

WeierstrassCurve e5() { return parse_curve("5:0,0,0,1,1"); }   // y^2 = x^3 + x + 1
WeierstrassCurve e7() { return parse_curve("7:0,0,0,1,-1"); }  // y^2 = x^3 + x - 1

FieldPtr field_of_order(std::int64_t q) {
  const std::int64_t p = distinct_prime_factors(q)[0];
  int k = 0;
  for (std::int64_t v = q; v > 1; v /= p) ++k;
  return make_field(p, k);
}

}  // namespace

TEST_CASE("construction accepts the worked examples and rejects cusps") {
  CHECK_NOTHROW(e5());
  CHECK_NOTHROW(e7());
  auto f5 = make_field(5);
  CHECK_THROWS_AS(
      WeierstrassCurve(f5, f5->zero(), f5->zero(), f5->zero(), f5->zero(), f5->zero()),
      SingularCurveError);
}

TEST_CASE("negation") {
  auto E = e5();
  auto f5 = E.field();
  CHECK(E.negate(CurvePoint::infinity()).is_infinity());
  CurvePoint P(f5->from_int(0), f5->from_int(1));
  CHECK(E.negate(P) == CurvePoint(f5->from_int(0), f5->from_int(4)));

  // On a curve with a1 = a3 = 1 over GF(2), -(a, b) = (a, b + a + 1).
  auto E2 = parse_curve("2:1,0,1,0,1");
  auto f2 = E2.field();
  for (const CurvePoint& P2 : enumerate_points(E2)) {
    if (P2.is_infinity()) continue;
    CurvePoint expect(P2.x(), P2.y() + P2.x() + f2->one());
    CHECK(E2.negate(P2) == expect);
    CHECK(E2.contains(expect));
  }
}

TEST_CASE("addition matches the worked doubling and the group axioms") {
  auto E = e5();
  auto f5 = E.field();
  CurvePoint P(f5->from_int(0), f5->from_int(1));
  CurvePoint twoP = E.add(P, P);
  CHECK(twoP == CurvePoint(f5->from_int(4), f5->from_int(2)));
  CHECK(E.contains(twoP));

  // Exhaustive group axioms on small curves.
  std::vector<WeierstrassCurve> curves;
  for (std::int64_t q : {2, 3, 4, 5, 7, 9, 11, 13})
    for (auto& c : first_smooth_curves(field_of_order(q), 1)) curves.push_back(c);
  curves.push_back(e5());
  curves.push_back(e7());
  for (const WeierstrassCurve& C : curves) {
    auto pts = enumerate_points(C);
    for (const CurvePoint& A : pts) {
      CHECK(C.add(A, CurvePoint::infinity()) == A);
      CHECK(C.add(A, C.negate(A)).is_infinity());
      for (const CurvePoint& B : pts) {
        CurvePoint AB = C.add(A, B);
        CHECK(C.contains(AB));
        CHECK(AB == C.add(B, A));
      }
    }
    // associativity on a subsample to keep the cube small
    for (std::size_t i = 0; i < pts.size(); i += 2)
      for (std::size_t j = 0; j < pts.size(); j += 2)
        for (std::size_t k = 0; k < pts.size(); k += 2)
          CHECK(C.add(C.add(pts[i], pts[j]), pts[k]) == C.add(pts[i], C.add(pts[j], pts[k])));
  }
}

TEST_CASE("scalar multiplication") {
  auto E = e5();
  auto f5 = E.field();
  CurvePoint P(f5->from_int(0), f5->from_int(1));
  CHECK(E.scalar_mul(1, P) == P);
  CHECK(E.scalar_mul(2, P) == CurvePoint(f5->from_int(4), f5->from_int(2)));
  CHECK(E.scalar_mul(0, P).is_infinity());
  for (const CurvePoint& Q : enumerate_points(E)) {
    CHECK(E.scalar_mul(9, Q).is_infinity());  // #E = 9
    for (std::int64_t n : {2, 3, 5})
      CHECK(E.scalar_mul(-n, Q) == E.negate(E.scalar_mul(n, Q)));
  }
}

TEST_CASE("lift_x finds the stated points and always lifts over GF(q^2)") {
  auto E = e5();
  auto f5 = E.field();
  auto f25 = quadratic_ext(f5);
  auto E25 = base_change(E, f25);
  QuadraticSolver solver(f25);

  auto lifts0 = lift_x(E25, embed(f5->from_int(0), f25), solver);
  REQUIRE(lifts0.size() == 2);
  CHECK(restrict_to_base(lifts0[0].y()) == f5->from_int(1));
  CHECK(restrict_to_base(lifts0[1].y()) == f5->from_int(4));

  auto lifts2 = lift_x(E25, embed(f5->from_int(2), f25), solver);
  REQUIRE(lifts2.size() == 2);
  CHECK(restrict_to_base(lifts2[0].y()) == f5->from_int(1));
  CHECK(restrict_to_base(lifts2[1].y()) == f5->from_int(4));

  for (std::int64_t q : {2, 3, 4, 5, 7, 9, 13}) {
    auto field = field_of_order(q);
    auto ext = quadratic_ext(field);
    QuadraticSolver s(ext);
    for (const WeierstrassCurve& C : first_smooth_curves(field, 2)) {
      auto Cext = base_change(C, ext);
      for (std::int64_t r = 0; r < q; ++r) {
        auto lifts = lift_x(Cext, embed(field->element_from_rank(r), ext), s);
        CHECK(!lifts.empty());
        for (const CurvePoint& P : lifts) CHECK(Cext.contains(P));
      }
    }
  }
}

TEST_CASE("point counts and traces of the worked examples") {
  CHECK(count_points(e5()) == 9);
  CHECK(trace(e5()).tau == -3);
  CHECK(count_points(e7()) == 11);
  CHECK(trace(e7()).tau == -3);
  auto E = parse_curve("5:0,0,0,0,1");  // y^2 = x^3 + 1: x^3 bijective mod 5
  CHECK(count_points(E) == 6);
  CHECK(trace(E).tau == 0);
}

TEST_CASE("trace sequence recurrence against direct counting") {
  TraceData td5{5, -3};
  CHECK(trace_sequence(td5, 0) == 2);
  CHECK(trace_sequence(td5, 2) == -1);
  auto E25 = base_change(e5(), make_field(5, 2));
  CHECK(count_points(E25) == 27);  // 25 + 1 - (-1)

  // A trace-zero curve over GF(7): y^2 = x^3 + x.
  auto E7 = parse_curve("7:0,0,0,1,0");
  CHECK(trace(E7).tau == 0);
  TraceData td7{7, 0};
  CHECK(trace_sequence(td7, 2) == -14);
  CHECK(count_points(base_change(E7, make_field(7, 2))) == 64);  // 49 + 1 + 14
}

TEST_CASE("trace powers respect the Hasse bound out to n = 50") {
  for (TraceData td : {TraceData{5, -3}, TraceData{7, -3}, TraceData{4, -4}, TraceData{2, 2}}) {
    BigInt q_n = 1;
    auto taus = trace_sequence_prefix(td, 50);
    for (int n = 1; n <= 50; ++n) {
      q_n *= td.q;
      CHECK(taus[n] * taus[n] <= 4 * q_n);
    }
  }
}

TEST_CASE("quadratic twists") {
  auto E = e5();
  auto tw = quadratic_twist(E);
  CHECK(count_points(tw) == 3);
  CHECK(count_points(quadratic_twist(tw)) == count_points(E));

  auto Ess = parse_curve("5:0,0,0,0,1");
  CHECK(trace(quadratic_twist(Ess)).tau == 0);

  // Twist identity across every smooth curve over small fields, all
  // characteristics (2, 3 and >= 5) and both a1 = 0 and a1 != 0 models.
  for (std::int64_t q : {2, 3, 4, 5}) {
    auto field = field_of_order(q);
    const std::int64_t total = q * q * q * q * q;
    for (std::int64_t idx = 0; idx < total; ++idx) {
      auto c = curve_from_tuple_index(field, idx);
      if (!c) continue;
      auto t = quadratic_twist(*c);  // construction certifies the count
      CHECK(trace(t).tau == -trace(*c).tau);
    }
  }
}

TEST_CASE("point orders") {
  auto E = e5();
  auto f5 = E.field();
  CHECK(point_order(E, CurvePoint::infinity()) == 1);
  CurvePoint P(f5->from_int(0), f5->from_int(1));
  CHECK(point_order(E, P) == 9);
  for (const CurvePoint& Q : enumerate_points(E)) {
    std::int64_t ord = point_order(E, Q);
    CHECK(9 % ord == 0);
    CHECK(point_order(E, Q, 9) == ord);
    CHECK(E.scalar_mul(ord, Q).is_infinity());
  }
}

TEST_CASE("Frobenius eigenspaces split as q + 1 -+ tau and cover P^1 two-to-one") {
  std::vector<WeierstrassCurve> curves{e5(), e7()};
  for (std::int64_t q : {2, 3, 4, 9})
    for (auto& c : first_smooth_curves(field_of_order(q), 2)) curves.push_back(c);
  for (const WeierstrassCurve& C : curves) {
    const std::int64_t q = C.q();
    TraceData td = trace(C);
    auto split = eigenspace_split(C, quadratic_ext(C.field()));
    CHECK(static_cast<std::int64_t>(split.fixed.size()) == q + 1 - td.tau);
    CHECK(static_cast<std::int64_t>(split.negated.size()) == q + 1 + td.tau);
    CHECK(static_cast<std::int64_t>(split.fixed.size() + split.negated.size()) == 2 * (q + 1));
    // x over the disjoint union covers each P^1 point exactly twice.
    std::map<std::int64_t, int> cover;
    auto x_index = [&](const CurvePoint& P) {
      return P.is_infinity() ? q : restrict_to_base(P.x()).rank();
    };
    for (const CurvePoint& P : split.fixed) ++cover[x_index(P)];
    for (const CurvePoint& P : split.negated) ++cover[x_index(P)];
    CHECK(static_cast<std::int64_t>(cover.size()) == q + 1);
    for (const auto& [idx, count] : cover) CHECK(count == 2);
  }
}
