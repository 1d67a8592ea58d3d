#include "lattes/curve.hpp"

#include <algorithm>

namespace lattes {

namespace {

FieldElement anchor(const FieldPtr& field, const FieldElement& e) {
  if (!e.valid()) throw std::invalid_argument("curve coefficient is invalid");
  if (!field->equal_to(*e.spec()))
    throw std::invalid_argument("curve coefficient lies in a different field");
  return field->element(std::vector<std::int64_t>(e.coeffs().begin(), e.coeffs().end()));
}

}  // namespace

WeierstrassCurve::WeierstrassCurve(FieldPtr field, FieldElement a1, FieldElement a2,
                                   FieldElement a3, FieldElement a4, FieldElement a6)
    : field_(std::move(field)),
      a1_(anchor(field_, a1)),
      a2_(anchor(field_, a2)),
      a3_(anchor(field_, a3)),
      a4_(anchor(field_, a4)),
      a6_(anchor(field_, a6)) {
  const FieldElement two = field_->from_int(2);
  const FieldElement four = field_->from_int(4);
  FieldElement b2 = a1_ * a1_ + four * a2_;
  FieldElement b4 = two * a4_ + a1_ * a3_;
  FieldElement b6 = a3_ * a3_ + four * a6_;
  FieldElement b8 =
      a1_ * a1_ * a6_ + four * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
  disc_ = -(b2 * b2 * b8) - field_->from_int(8) * b4 * b4 * b4 -
          field_->from_int(27) * b6 * b6 + field_->from_int(9) * b2 * b4 * b6;
  if (disc_.is_zero())
    throw SingularCurveError("singular Weierstrass equation (discriminant = 0)");
}

FieldElement WeierstrassCurve::rhs(const FieldElement& x) const {
  return ((x + a2_) * x + a4_) * x + a6_;
}

bool WeierstrassCurve::contains(const CurvePoint& P) const {
  if (P.is_infinity()) return true;
  const FieldElement& x = P.x();
  const FieldElement& y = P.y();
  return y * y + a1_ * x * y + a3_ * y == rhs(x);
}

CurvePoint WeierstrassCurve::negate(const CurvePoint& P) const {
  if (P.is_infinity()) return P;
  return CurvePoint(P.x(), -P.y() - a1_ * P.x() - a3_);
}

CurvePoint WeierstrassCurve::add(const CurvePoint& P, const CurvePoint& Q) const {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const FieldElement &x1 = P.x(), &y1 = P.y(), &x2 = Q.x(), &y2 = Q.y();
  FieldElement lambda, nu;
  if (x1 == x2) {
    if (y2 == -y1 - a1_ * x1 - a3_) return CurvePoint::infinity();  // Q = -P
    // x1 = x2 and Q != -P forces P = Q; tangent line.
    FieldElement denom = field_->from_int(2) * y1 + a1_ * x1 + a3_;
    lambda = (field_->from_int(3) * x1 * x1 + field_->from_int(2) * a2_ * x1 + a4_ - a1_ * y1) /
             denom;
    nu = (-(x1 * x1 * x1) + a4_ * x1 + field_->from_int(2) * a6_ - a3_ * y1) / denom;
  } else {
    FieldElement denom = x2 - x1;
    lambda = (y2 - y1) / denom;
    nu = (y1 * x2 - y2 * x1) / denom;
  }
  FieldElement x3 = lambda * lambda + a1_ * lambda - a2_ - x1 - x2;
  FieldElement y3 = -(lambda + a1_) * x3 - nu - a3_;
  return CurvePoint(std::move(x3), std::move(y3));
}

CurvePoint WeierstrassCurve::scalar_mul(std::int64_t n, const CurvePoint& P) const {
  if (n == 0 || P.is_infinity()) return CurvePoint::infinity();
  bool neg = n < 0;
  std::uint64_t e = neg ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  CurvePoint acc = CurvePoint::infinity();
  CurvePoint sq = P;
  while (e > 0) {
    if (e & 1) acc = add(acc, sq);
    e >>= 1;
    if (e > 0) sq = add(sq, sq);
  }
  return neg ? negate(acc) : acc;
}

WeierstrassCurve base_change(const WeierstrassCurve& curve, const FieldPtr& ext) {
  return WeierstrassCurve(ext, embed(curve.a1(), ext), embed(curve.a2(), ext),
                          embed(curve.a3(), ext), embed(curve.a4(), ext),
                          embed(curve.a6(), ext));
}

std::vector<CurvePoint> lift_x(const WeierstrassCurve& curve, const FieldElement& x,
                               const QuadraticSolver& solver) {
  FieldElement c1 = curve.a1() * x + curve.a3();
  FieldElement c0 = -curve.rhs(x);
  std::vector<CurvePoint> out;
  for (FieldElement& y : solver.solve(curve.field()->one(), c1, c0))
    out.emplace_back(x, std::move(y));
  return out;
}

std::vector<CurvePoint> enumerate_points(const WeierstrassCurve& curve) {
  const std::int64_t q = curve.q();
  if (q > max_enumerable_order())
    throw std::invalid_argument("field too large to enumerate points");
  QuadraticSolver solver(curve.field());
  std::vector<CurvePoint> out;
  for (std::int64_t r = 0; r < q; ++r)
    for (CurvePoint& P : lift_x(curve, curve.field()->element_from_rank(r), solver))
      out.push_back(std::move(P));
  out.push_back(CurvePoint::infinity());
  return out;
}

std::int64_t count_points(const WeierstrassCurve& curve) {
  const std::int64_t q = curve.q();
  if (q > max_enumerable_order())
    throw std::invalid_argument("field too large for naive point counting");
  QuadraticSolver solver(curve.field());
  std::int64_t n = 1;  // infinity
  for (std::int64_t r = 0; r < q; ++r) {
    FieldElement x = curve.field()->element_from_rank(r);
    FieldElement c1 = curve.a1() * x + curve.a3();
    FieldElement c0 = -curve.rhs(x);
    n += static_cast<std::int64_t>(solver.solve(curve.field()->one(), c1, c0).size());
  }
  return n;
}

TraceData trace(const WeierstrassCurve& curve) {
  const std::int64_t q = curve.q();
  const std::int64_t tau = q + 1 - count_points(curve);
  if (tau * tau > 4 * q)
    throw std::logic_error("Hasse bound violated: tau = " + std::to_string(tau) +
                           ", q = " + std::to_string(q));
  return TraceData{q, tau};
}

BigInt trace_sequence(const TraceData& td, int n) {
  if (n < 0) throw std::invalid_argument("trace sequence index must be nonnegative");
  BigInt prev2 = 2, prev1 = td.tau;
  if (n == 0) return prev2;
  for (int i = 2; i <= n; ++i) {
    BigInt cur = td.tau * prev1 - td.q * prev2;
    prev2 = std::move(prev1);
    prev1 = std::move(cur);
  }
  return prev1;
}

std::vector<BigInt> trace_sequence_prefix(const TraceData& td, int n_max) {
  std::vector<BigInt> out;
  out.reserve(n_max + 1);
  out.emplace_back(2);
  if (n_max >= 1) out.emplace_back(td.tau);
  for (int i = 2; i <= n_max; ++i) out.push_back(td.tau * out[i - 1] - td.q * out[i - 2]);
  return out;
}

namespace {

FieldElement first_nonsquare(const FieldPtr& field) {
  QuadraticSolver solver(field);
  for (std::int64_t r = 1; r < field->order(); ++r) {
    FieldElement e = field->element_from_rank(r);
    if (solver.sqrt(e).empty()) return e;
  }
  throw std::logic_error("no non-square found in odd-characteristic field");
}

FieldElement first_trace_one(const FieldPtr& field) {
  for (std::int64_t r = 0; r < field->order(); ++r) {
    FieldElement e = field->element_from_rank(r);
    if (absolute_trace(e) == 1) return e;
  }
  throw std::logic_error("no trace-1 element found in characteristic-2 field");
}

}  // namespace

WeierstrassCurve quadratic_twist(const WeierstrassCurve& curve) {
  const FieldPtr& F = curve.field();
  const std::int64_t q = curve.q();
  const std::int64_t target = 2 * (q + 1) - count_points(curve);
  std::optional<WeierstrassCurve> twist;
  if (F->characteristic() != 2) {
    // Complete the square: y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4, then
    // scale the cubic by a non-square g: (A2, A4, A6) -> (gA2, g^2A4, g^3A6).
    FieldElement four_inv = inv(F->from_int(4));
    FieldElement two_inv = inv(F->from_int(2));
    FieldElement b2 = curve.a1() * curve.a1() + F->from_int(4) * curve.a2();
    FieldElement b4 = F->from_int(2) * curve.a4() + curve.a1() * curve.a3();
    FieldElement b6 = curve.a3() * curve.a3() + F->from_int(4) * curve.a6();
    FieldElement A2 = b2 * four_inv;
    FieldElement A4 = b4 * two_inv;
    FieldElement A6 = b6 * four_inv;
    FieldElement g = first_nonsquare(F);
    twist.emplace(F, F->zero(), g * A2, F->zero(), g * g * A4, g * g * g * A6);
  } else if (!curve.a1().is_zero()) {
    // Normalize to y^2 + xy = x^3 + a2 x^2 + a6, then shift a2 by a trace-1
    // element. Normalization: scale by u = a1, then (x, y) -> (x + r, y + t)
    // with r = a3', t = a4' + r^2.
    FieldElement u = curve.a1();
    FieldElement u2 = u * u;
    FieldElement a2p = curve.a2() / u2;
    FieldElement a3p = curve.a3() / (u2 * u);
    FieldElement a4p = curve.a4() / (u2 * u2);
    FieldElement a6p = curve.a6() / (u2 * u2 * u2);
    FieldElement r = a3p;
    FieldElement t = a4p + r * r;
    FieldElement a2n = a2p + r;
    FieldElement a6n = a6p + r * a4p + r * r * a2p + r * r * r + t * a3p + t * t + r * t;
    FieldElement D = first_trace_one(F);
    twist.emplace(F, F->one(), a2n + D, F->zero(), F->zero(), a6n);
  } else {
    // Supersingular model y^2 + a3 y = x^3 + ...: shifting the constant term
    // by a3^2 * (trace-1 element) flips the solvability at every x.
    FieldElement D = first_trace_one(F);
    twist.emplace(F, curve.a1(), curve.a2(), curve.a3(), curve.a4(),
                  curve.a6() + curve.a3() * curve.a3() * D);
  }
  if (count_points(*twist) != target)
    throw std::logic_error("twist construction failed its point-count certificate");
  return *twist;
}

std::int64_t point_order(const WeierstrassCurve& curve, const CurvePoint& P,
                         std::int64_t group_order) {
  if (!curve.contains(P)) throw std::invalid_argument("point is not on the curve");
  std::int64_t N = group_order > 0 ? group_order : count_points(curve);
  std::int64_t m = N;
  for (std::int64_t f : distinct_prime_factors(N)) {
    while (m % f == 0 && curve.scalar_mul(m / f, P).is_infinity()) m /= f;
  }
  return m;
}

EigenspaceSplit eigenspace_split(const WeierstrassCurve& curve, const FieldPtr& ext) {
  const std::int64_t q = curve.q();
  WeierstrassCurve E2 = base_change(curve, ext);
  QuadraticSolver solver(ext);
  EigenspaceSplit split;
  split.fixed.push_back(CurvePoint::infinity());
  split.negated.push_back(CurvePoint::infinity());
  for (std::int64_t r = 0; r < q; ++r) {
    FieldElement x = embed(curve.field()->element_from_rank(r), ext);
    for (const CurvePoint& P : lift_x(E2, x, solver)) {
      CurvePoint FP(frobenius(P.x(), q), frobenius(P.y(), q));
      bool any = false;
      if (FP == P) {
        split.fixed.push_back(P);
        any = true;
      }
      if (FP == E2.negate(P)) {
        split.negated.push_back(P);
        any = true;
      }
      if (!any)
        throw std::logic_error("Frobenius of a base-line lift is neither P nor -P");
    }
  }
  return split;
}

std::optional<WeierstrassCurve> curve_from_tuple_index(const FieldPtr& field,
                                                       std::int64_t index) {
  const std::int64_t q = field->order();
  std::vector<FieldElement> cs;
  cs.reserve(5);
  for (int i = 0; i < 5; ++i) {
    cs.push_back(field->element_from_rank(index % q));
    index /= q;
  }
  try {
    return WeierstrassCurve(field, cs[0], cs[1], cs[2], cs[3], cs[4]);
  } catch (const SingularCurveError&) {
    return std::nullopt;
  }
}

std::vector<WeierstrassCurve> first_smooth_curves(const FieldPtr& field, int count) {
  std::vector<WeierstrassCurve> out;
  const std::int64_t q = field->order();
  const std::int64_t total = q * q * q * q * q;
  for (std::int64_t idx = 0; idx < total && static_cast<int>(out.size()) < count; ++idx)
    if (auto c = curve_from_tuple_index(field, idx)) out.push_back(std::move(*c));
  return out;
}

std::optional<WeierstrassCurve> find_trace_zero_curve(const FieldPtr& field) {
  const std::int64_t q = field->order();
  const std::int64_t total = q * q * q * q * q;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    auto c = curve_from_tuple_index(field, idx);
    if (!c) continue;
    if (count_points(*c) == q + 1) return c;
  }
  return std::nullopt;
}

}  // namespace lattes
