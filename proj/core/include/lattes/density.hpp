#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lattes/curve.hpp"
#include "lattes/numbers.hpp"

namespace lattes {

/// Multiplicity of the prime ell in k. k must be nonzero.
int valuation(std::int64_t ell, const BigInt& k);

/// pi_+ and pi_-: for each prime ell | d, the full ell-power part of
/// q_n + 1 + tau_n resp. q_n + 1 - tau_n. d must be nonzero.
std::pair<BigInt, BigInt> pi_pm(const BigInt& q_n, const BigInt& tau_n, std::int64_t d);

/// Exact density of periodic points of the d-th Lattes map on P^1(F_{q_n})
/// for a curve with trace tau_n:
///   1/2 (1/pi_+ + 1/pi_-) + tau_n / (2 (q_n + 1)) (1/pi_+ - 1/pi_-).
/// Requires gcd(d, q_n) = 1 and tau_n^2 <= 4 q_n.
Rational delta_formula(const BigInt& q_n, const BigInt& tau_n, std::int64_t d);

/// Squared form of |delta - 1/2(1/pi_+ + 1/pi_-)| < 1/(sqrt(q) + 1/sqrt(q)):
/// gap^2 (q_n + 1)^2 < q_n, in exact rational arithmetic. Always true on
/// valid inputs; exposed as a self-test.
bool gap_bound_holds(const BigInt& q_n, const BigInt& tau_n, std::int64_t d);

/// The map is a bijection of P^1 iff (q_n + 1)^2 - tau_n^2 is coprime to d.
bool is_permutation_formula(const BigInt& q_n, const BigInt& tau_n, std::int64_t d);

/// Everything the closed form yields for one (curve, d, n).
struct DensityReport {
  std::int64_t q = 0;
  int n = 1;
  BigInt tau_n;
  std::int64_t d = 0;
  BigInt pi_plus;
  BigInt pi_minus;
  Rational delta;
  BigInt per_count;  // delta * (q^n + 1), integral
  bool permutation = false;
  bool gap_ok = false;
};

/// Closed-form report over F_{q^n}, with tau_n from the trace recurrence.
DensityReport delta_tower(const TraceData& td, std::int64_t d, int n);

struct TowerSample {
  int m = 0;
  Rational delta;
  bool gap_ok = false;      // squared gap bound against the limit value
  bool vals_match = false;  // v_ell(q^m + 1 +- tau_m) = v_ell(q^n + 1 +- tau_n) for all ell | d
};

/// Empirical stabilization of delta(L_d, q^m) along m = n (mod c d^N).
struct TowerReport {
  int n = 1;
  std::int64_t c = 1;        // lcm(ell^2 - 1 : ell | d)
  int n_emp = 0;             // least N whose progression matched; -1 if none <= cap
  std::int64_t modulus = 1;  // c * d^N for the reported N
  bool stabilized = false;
  Rational limit;  // 1/2 (1/pi_{n,+} + 1/pi_{n,-})
  std::vector<TowerSample> samples;
};

/// Search N <= n_cap such that every m = n (mod c d^N), m <= m_max, has the
/// same ell-adic valuations of q^m + 1 +- tau_m as n itself, for all
/// ell | d. Samples for the reported progression are returned either way.
TowerReport tower_limit(const TraceData& td, std::int64_t d, int n, int m_max = 400,
                        int n_cap = 8);

/// Least e >= 1 with q^e = 1 (mod ell). Requires gcd(q, ell) = 1.
std::int64_t mult_order_mod(std::int64_t q, std::int64_t ell);

/// Check v_ell(q^n - 1) = v_ell(q - 1) + v_ell(n) for 1 <= n <= n_max.
/// Requires ell an odd prime with q = 1 (mod ell).
bool check_valuation_lemma(std::int64_t q, std::int64_t ell, int n_max);

enum class SupersingularBranch {
  EllPower,    // n odd, e | 2n, e does not divide n: delta = ell^{-w_n}
  EvenSigned,  // n even, e | n: signed two-term formula
  Full,        // otherwise: delta = 1 (the map permutes P^1)
};

const char* to_string(SupersingularBranch b);

/// Closed-form density for a trace-zero curve and a prime multiplier ell,
/// evaluated from e = ord_ell(q) and w_n = v_ell(q^e - 1) + v_ell(n).
/// The sign in the even branch is epsilon = +1 iff e | n/2; the report also
/// carries the commonly printed variant of the sign rule (which differs for
/// n = 2 mod 4 and fails integrality there) for diagnostics.
struct SupersingularReport {
  std::int64_t q = 0;
  std::int64_t ell = 0;
  int n = 1;
  std::int64_t e = 0;
  int w_n = 0;
  int epsilon = 0;  // +1 / -1 in the even branch, 0 otherwise
  SupersingularBranch branch = SupersingularBranch::Full;
  Rational delta;
  BigInt q_n;
  BigInt tau_n;
  int printed_epsilon = 0;  // the variant sign for the same branch
  Rational printed_delta;
  bool printed_differs = false;
  bool printed_integral = true;  // printed_delta * (q^n + 1) integral?
};

/// Requires ell > 2 prime, ell not dividing q; the caller asserts that a
/// trace-zero curve over F_q exists. Internally cross-checked against
/// delta_formula with tau_n = 0 (n odd) or 2(-1)^{n/2} q^{n/2} (n even).
SupersingularReport delta_supersingular(std::int64_t q, std::int64_t ell, int n);

}  // namespace lattes
