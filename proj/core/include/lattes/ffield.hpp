#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace lattes {

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

// Flat coefficient vector over GF(p), low degree first. Sized so that the
// lift fields used by the Lattes oracles (degree up to 12 over the prime
// field) stay on the stack.
using CoeffVec = boost::container::small_vector<std::int64_t, 12>;

/// An element of a finite field, stored as its coefficient vector over the
/// prime field. Immutable; freely copyable and shareable across threads.
/// The owning FieldSpec must outlive the element.
class FieldElement {
 public:
  FieldElement() = default;  // invalid placeholder (moved-from slots, infinity coords)

  const FieldSpec* spec() const { return spec_; }
  const CoeffVec& coeffs() const { return c_; }
  bool valid() const { return spec_ != nullptr; }
  bool is_zero() const;

  /// Position of this element in the canonical enumeration of its field:
  /// the integer with p-ary digits given by the coefficient vector.
  std::int64_t rank() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  friend class FieldSpec;
  FieldElement(const FieldSpec* spec, CoeffVec c) : spec_(spec), c_(std::move(c)) {}

  const FieldSpec* spec_ = nullptr;
  CoeffVec c_;
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator/(const FieldElement& a, const FieldElement& b);

FieldElement inv(const FieldElement& a);
FieldElement pow(const FieldElement& a, std::int64_t n);

/// a^{q0} where q0 is a power of the characteristic (q0 = q gives the
/// relative Frobenius of GF(q^2)/GF(q)).
FieldElement frobenius(const FieldElement& a, std::int64_t q0);

/// Trace down to the prime field: sum of a^{p^i} over i < degree.
/// Returns the residue in [0, p).
std::int64_t absolute_trace(const FieldElement& a);

namespace detail {
FieldPtr make_prime_field(std::int64_t p);
FieldPtr build_extension(const FieldPtr& base, std::vector<FieldElement> modulus, bool custom);
}  // namespace detail

/// A finite field GF(p^k). Either the prime field GF(p) itself or an
/// extension of degree >= 2 over a base FieldSpec via a monic irreducible
/// modulus with coefficients in the base. Construction is deterministic:
/// searched moduli are the first irreducible polynomials in the canonical
/// order (coefficient vectors read as base-q integers, ascending).
class FieldSpec {
 public:
  std::int64_t characteristic() const { return p_; }
  /// Degree over the prime field (flat coefficient length).
  int degree() const { return flat_degree_; }
  /// Degree over base(); 1 for the prime field.
  int tower_degree() const { return tower_degree_; }
  /// Base field of the extension; null for GF(p).
  const FieldPtr& base() const { return base_; }
  std::int64_t order() const { return order_; }
  /// Modulus coefficients over base(), monic, size tower_degree()+1.
  /// Empty for the prime field (whose modulus is x).
  const std::vector<FieldElement>& modulus() const { return modulus_; }
  /// True when the modulus was supplied explicitly rather than searched.
  bool custom_modulus() const { return custom_modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  /// v mod p as a constant of this field.
  FieldElement from_int(std::int64_t v) const;
  FieldElement element_from_rank(std::int64_t r) const;
  /// Element from explicit coefficients (any integers, reduced mod p;
  /// shorter vectors are zero-padded).
  FieldElement element(const std::vector<std::int64_t>& flat_coeffs) const;

  /// Wrap an already-reduced coefficient vector of full length. Internal.
  FieldElement wrap(CoeffVec c) const;

  /// Structural equality: same characteristic, same tower of moduli.
  bool equal_to(const FieldSpec& other) const;

  // Internal arithmetic kernels (flat slices of length degree()).
  CoeffVec mul_flat(const std::int64_t* a, const std::int64_t* b) const;

 private:
  friend FieldPtr detail::make_prime_field(std::int64_t);
  friend FieldPtr detail::build_extension(const FieldPtr&, std::vector<FieldElement>, bool);

  FieldSpec() = default;

  std::int64_t p_ = 0;
  int tower_degree_ = 1;
  int flat_degree_ = 1;
  std::int64_t order_ = 0;
  FieldPtr base_;
  std::vector<FieldElement> modulus_;
  bool custom_modulus_ = false;
};

/// GF(p^k) with the first monic irreducible modulus of degree k over GF(p)
/// in canonical order. k = 1 gives the prime field.
FieldPtr make_field(std::int64_t p, int k = 1);

/// GF(p^k) with an explicit monic modulus (length k+1, low degree first).
/// The modulus is verified irreducible.
FieldPtr make_field_with_modulus(std::int64_t p, const std::vector<std::int64_t>& modulus);

/// Degree-m extension of an arbitrary base field, first irreducible monic
/// modulus in canonical order.
FieldPtr extension(const FieldPtr& base, int m);

/// GF(q^2) as a degree-2 tower over GF(q).
FieldPtr quadratic_ext(const FieldPtr& base);

/// Ring-homomorphic inclusion of a into an iterated extension of its field.
FieldElement embed(const FieldElement& a, const FieldPtr& ext);

/// True iff a lies in the base field of its (tower) spec.
bool in_base(const FieldElement& a);

/// Inverse of embed for one tower level; requires in_base(a).
FieldElement restrict_to_base(const FieldElement& a);

/// All field elements in canonical order. Guarded by the enumeration bound.
std::vector<FieldElement> enumerate_field(const FieldPtr& field);

/// Irreducibility over poly[0].spec() (Rabin's test). poly is little-endian
/// with nonzero leading coefficient.
bool is_irreducible(const std::vector<FieldElement>& poly);

/// Largest field order enumeration-style operations will touch.
/// Default 65536; override with the LATTES_MAX_Q environment variable.
std::int64_t max_enumerable_order();

/// Roots of c2*y^2 + c1*y + c0 in the coefficients' field (0, 1 or 2 of
/// them, in canonical order). c2 must be nonzero. Convenience wrapper that
/// builds a throwaway QuadraticSolver; hot paths should hold their own.
std::vector<FieldElement> solve_quadratic(const FieldElement& c2, const FieldElement& c1,
                                          const FieldElement& c0);

/// Quadratic-equation solver with per-field precomputation. For odd
/// characteristic towers with modulus x^2 + g the square root reduces to
/// two square roots in the base field; otherwise an exhaustive square
/// (resp. z^2+z in characteristic 2) table over the field is built once.
/// Immutable after construction; safe to share across threads.
class QuadraticSolver {
 public:
  explicit QuadraticSolver(FieldPtr field);

  const FieldPtr& field() const { return field_; }

  /// Square roots of a, canonical order (empty, one, or two).
  std::vector<FieldElement> sqrt(const FieldElement& a) const;

  /// Roots of c2*y^2 + c1*y + c0; c2 must be nonzero.
  std::vector<FieldElement> solve(const FieldElement& c2, const FieldElement& c1,
                                  const FieldElement& c0) const;

 private:
  FieldPtr field_;
  std::unique_ptr<QuadraticSolver> base_;  // odd tower fast path
  FieldElement tower_g_;                   // t^2 = g, g a base non-square
  bool tower_fast_ = false;
  bool char2_ = false;
  std::vector<std::int64_t> table_;  // rank(y^2) -> rank(y), or rank(z^2+z) -> rank(z); -1 absent
};

}  // namespace lattes
