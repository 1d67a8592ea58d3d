#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lattes/ffield.hpp"
#include "lattes/numbers.hpp"

namespace lattes {

/// Raised when the five Weierstrass coefficients describe a singular cubic.
class SingularCurveError : public std::invalid_argument {
 public:
  explicit SingularCurveError(const std::string& what) : std::invalid_argument(what) {}
};

/// A point of a Weierstrass curve: affine (x, y) or the point at infinity.
class CurvePoint {
 public:
  static CurvePoint infinity() { return CurvePoint(); }
  CurvePoint(FieldElement x, FieldElement y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}

  bool is_infinity() const { return inf_; }
  const FieldElement& x() const { return x_; }
  const FieldElement& y() const { return y_; }

  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }

 private:
  CurvePoint() : inf_(true) {}
  bool inf_;
  FieldElement x_, y_;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a finite field, with
/// the unique point at infinity as group identity. Construction rejects
/// singular equations (discriminant zero).
class WeierstrassCurve {
 public:
  WeierstrassCurve(FieldPtr field, FieldElement a1, FieldElement a2, FieldElement a3,
                   FieldElement a4, FieldElement a6);

  const FieldPtr& field() const { return field_; }
  std::int64_t q() const { return field_->order(); }
  const FieldElement& a1() const { return a1_; }
  const FieldElement& a2() const { return a2_; }
  const FieldElement& a3() const { return a3_; }
  const FieldElement& a4() const { return a4_; }
  const FieldElement& a6() const { return a6_; }
  const FieldElement& discriminant() const { return disc_; }

  bool contains(const CurvePoint& P) const;
  /// Right-hand side x^3 + a2 x^2 + a4 x + a6.
  FieldElement rhs(const FieldElement& x) const;

  CurvePoint negate(const CurvePoint& P) const;
  CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const;
  CurvePoint scalar_mul(std::int64_t n, const CurvePoint& P) const;

  friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) {
    return a.field_->equal_to(*b.field_) && a.a1_ == b.a1_ && a.a2_ == b.a2_ && a.a3_ == b.a3_ &&
           a.a4_ == b.a4_ && a.a6_ == b.a6_;
  }

 private:
  FieldPtr field_;
  FieldElement a1_, a2_, a3_, a4_, a6_;
  FieldElement disc_;
};

/// The same equation viewed over an extension of the coefficient field.
WeierstrassCurve base_change(const WeierstrassCurve& curve, const FieldPtr& ext);

/// The points of the curve with x-coordinate x (0, 1 or 2, ordered by
/// y-rank). Solves y^2 + (a1 x + a3) y - rhs(x) = 0 in the curve's field.
std::vector<CurvePoint> lift_x(const WeierstrassCurve& curve, const FieldElement& x,
                               const QuadraticSolver& solver);

/// All rational points, ordered by (x-rank, y-rank) with infinity last.
std::vector<CurvePoint> enumerate_points(const WeierstrassCurve& curve);

/// Exact number of rational points (naive quadratic solving per x).
std::int64_t count_points(const WeierstrassCurve& curve);

/// q and the integer tau with #E(F_q) = q + 1 - tau. |tau| <= 2 sqrt(q).
struct TraceData {
  std::int64_t q = 0;
  std::int64_t tau = 0;
};

/// tau from a point count; throws logic_error on a Hasse-bound violation.
TraceData trace(const WeierstrassCurve& curve);

/// tau_n with #E(F_{q^n}) = q^n + 1 - tau_n, from the recurrence
/// tau_0 = 2, tau_1 = tau, tau_n = tau*tau_{n-1} - q*tau_{n-2}.
BigInt trace_sequence(const TraceData& td, int n);

/// tau_0 .. tau_{n_max}.
std::vector<BigInt> trace_sequence_prefix(const TraceData& td, int n_max);

/// A curve with the negated trace, built per characteristic and certified
/// by counting: #E' = 2(q+1) - #E.
WeierstrassCurve quadratic_twist(const WeierstrassCurve& curve);

/// Order of P in the rational point group. The group order is obtained by
/// counting unless supplied; factored by trial division.
std::int64_t point_order(const WeierstrassCurve& curve, const CurvePoint& P,
                         std::int64_t group_order = 0);

/// Points of E(F_{q^2}) fixed (F(P) = P) or negated (F(P) = -P) by the
/// q-power Frobenius. Every point with x-coordinate on the base projective
/// line lands in at least one part; two-torsion and infinity land in both.
struct EigenspaceSplit {
  std::vector<CurvePoint> fixed;    // = E(F_q), size q + 1 - tau
  std::vector<CurvePoint> negated;  // twist-isomorphic, size q + 1 + tau
};

EigenspaceSplit eigenspace_split(const WeierstrassCurve& curve, const FieldPtr& ext);

/// Decode a coefficient tuple index (a1 varies fastest) into a curve;
/// nullopt when the tuple is singular.
std::optional<WeierstrassCurve> curve_from_tuple_index(const FieldPtr& field, std::int64_t index);

/// The first `count` smooth curves over the field in tuple order.
std::vector<WeierstrassCurve> first_smooth_curves(const FieldPtr& field, int count);

/// First curve in tuple order with trace zero, if any.
std::optional<WeierstrassCurve> find_trace_zero_curve(const FieldPtr& field);

}  // namespace lattes
