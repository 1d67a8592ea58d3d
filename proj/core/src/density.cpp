#include "lattes/density.hpp"

#include <numeric>
#include <stdexcept>

namespace lattes {

namespace {

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

void require_valid_d(const BigInt& q_n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("multiplier d must be nonzero");
  if (boost::multiprecision::gcd(BigInt(d < 0 ? -d : d), q_n) != 1)
    throw std::domain_error("multiplier d must be coprime to the field order");
}

void require_hasse(const BigInt& q_n, const BigInt& tau_n) {
  if (tau_n * tau_n > 4 * q_n)
    throw std::domain_error("trace violates the Hasse bound");
}

Rational mid_value(const BigInt& pi_plus, const BigInt& pi_minus) {
  return (Rational(1, pi_plus) + Rational(1, pi_minus)) / 2;
}

}  // namespace

int valuation(std::int64_t ell, const BigInt& k) {
  if (!is_prime(ell)) throw std::invalid_argument("valuation base must be prime");
  if (k == 0) throw std::invalid_argument("valuation of zero");
  BigInt v = abs_big(k);
  int m = 0;
  while (v % ell == 0) {
    v /= ell;
    ++m;
  }
  return m;
}

std::pair<BigInt, BigInt> pi_pm(const BigInt& q_n, const BigInt& tau_n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("multiplier d must be nonzero");
  BigInt plus = 1, minus = 1;
  for (std::int64_t ell : distinct_prime_factors(d)) {
    plus *= big_pow(BigInt(ell), static_cast<unsigned>(valuation(ell, q_n + 1 + tau_n)));
    minus *= big_pow(BigInt(ell), static_cast<unsigned>(valuation(ell, q_n + 1 - tau_n)));
  }
  return {plus, minus};
}

Rational delta_formula(const BigInt& q_n, const BigInt& tau_n, std::int64_t d) {
  require_valid_d(q_n, d);
  require_hasse(q_n, tau_n);
  auto [plus, minus] = pi_pm(q_n, tau_n, d);
  Rational delta = mid_value(plus, minus) +
                   Rational(tau_n, 2 * (q_n + 1)) * (Rational(1, plus) - Rational(1, minus));
  if (delta <= 0 || delta > 1)
    throw std::logic_error("density outside (0, 1]");
  if (!is_integral(delta * Rational(q_n + 1)))
    throw std::logic_error("density times #P^1 is not an integer");
  return delta;
}

bool gap_bound_holds(const BigInt& q_n, const BigInt& tau_n, std::int64_t d) {
  require_valid_d(q_n, d);
  require_hasse(q_n, tau_n);
  auto [plus, minus] = pi_pm(q_n, tau_n, d);
  Rational gap = Rational(tau_n, 2 * (q_n + 1)) * (Rational(1, plus) - Rational(1, minus));
  return gap * gap * Rational((q_n + 1) * (q_n + 1)) < Rational(q_n);
}

bool is_permutation_formula(const BigInt& q_n, const BigInt& tau_n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("multiplier d must be nonzero");
  BigInt value = (q_n + 1) * (q_n + 1) - tau_n * tau_n;
  return boost::multiprecision::gcd(value, BigInt(d < 0 ? -d : d)) == 1;
}

DensityReport delta_tower(const TraceData& td, std::int64_t d, int n) {
  if (n < 1) throw std::invalid_argument("extension degree n must be positive");
  DensityReport rep;
  rep.q = td.q;
  rep.n = n;
  rep.d = d;
  rep.tau_n = trace_sequence(td, n);
  BigInt q_n = big_pow(BigInt(td.q), static_cast<unsigned>(n));
  auto [plus, minus] = pi_pm(q_n, rep.tau_n, d);
  rep.pi_plus = plus;
  rep.pi_minus = minus;
  rep.delta = delta_formula(q_n, rep.tau_n, d);
  Rational per = rep.delta * Rational(q_n + 1);
  rep.per_count = boost::multiprecision::numerator(per);
  rep.permutation = is_permutation_formula(q_n, rep.tau_n, d);
  rep.gap_ok = gap_bound_holds(q_n, rep.tau_n, d);
  return rep;
}

TowerReport tower_limit(const TraceData& td, std::int64_t d, int n, int m_max, int n_cap) {
  if (n < 1) throw std::invalid_argument("extension degree n must be positive");
  if (m_max < n) m_max = n;
  const std::int64_t d_abs = d < 0 ? -d : d;
  BigInt q_n = big_pow(BigInt(td.q), static_cast<unsigned>(n));
  require_valid_d(q_n, d);

  TowerReport rep;
  rep.n = n;
  const std::vector<std::int64_t> ells = distinct_prime_factors(d);
  rep.c = 1;
  for (std::int64_t ell : ells) rep.c = std::lcm(rep.c, ell * ell - 1);

  const std::vector<BigInt> taus = trace_sequence_prefix(td, m_max);
  std::vector<int> target_plus, target_minus;
  const BigInt tau_n = taus[static_cast<std::size_t>(n)];
  for (std::int64_t ell : ells) {
    target_plus.push_back(valuation(ell, q_n + 1 + tau_n));
    target_minus.push_back(valuation(ell, q_n + 1 - tau_n));
  }
  auto [pi_plus_n, pi_minus_n] = pi_pm(q_n, tau_n, d);
  rep.limit = mid_value(pi_plus_n, pi_minus_n);

  auto valuations_match = [&](int m) {
    BigInt q_m = big_pow(BigInt(td.q), static_cast<unsigned>(m));
    const BigInt& tau_m = taus[static_cast<std::size_t>(m)];
    for (std::size_t i = 0; i < ells.size(); ++i) {
      if (valuation(ells[i], q_m + 1 + tau_m) != target_plus[i]) return false;
      if (valuation(ells[i], q_m + 1 - tau_m) != target_minus[i]) return false;
    }
    return true;
  };

  rep.n_emp = -1;
  std::int64_t modulus = rep.c;
  for (int N = 0; N <= n_cap; ++N) {
    bool all_ok = true;
    for (std::int64_t m = n; m <= m_max; m += modulus)
      if (!valuations_match(static_cast<int>(m))) {
        all_ok = false;
        break;
      }
    if (all_ok) {
      rep.n_emp = N;
      rep.modulus = modulus;
      rep.stabilized = true;
      break;
    }
    if (N < n_cap) modulus *= d_abs;
  }
  if (!rep.stabilized) rep.modulus = modulus;  // c * d^n_cap, the last progression tried

  for (std::int64_t m = n; m <= m_max; m += rep.modulus) {
    TowerSample s;
    s.m = static_cast<int>(m);
    BigInt q_m = big_pow(BigInt(td.q), static_cast<unsigned>(m));
    const BigInt& tau_m = taus[static_cast<std::size_t>(m)];
    s.delta = delta_formula(q_m, tau_m, d);
    Rational gap = s.delta - rep.limit;
    s.gap_ok = gap * gap * Rational((q_m + 1) * (q_m + 1)) < Rational(q_m);
    s.vals_match = valuations_match(s.m);
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

std::int64_t mult_order_mod(std::int64_t q, std::int64_t ell) {
  if (ell < 2) throw std::invalid_argument("modulus must be at least 2");
  if (q % ell == 0) throw std::invalid_argument("q and ell must be coprime");
  std::int64_t r = q % ell;
  if (r < 0) r += ell;
  std::int64_t acc = r, e = 1;
  while (acc != 1) {
    acc = (acc * r) % ell;
    if (++e > ell) throw std::logic_error("multiplicative order search overran the modulus");
  }
  return e;
}

bool check_valuation_lemma(std::int64_t q, std::int64_t ell, int n_max) {
  if (!is_prime(ell) || ell == 2) throw std::invalid_argument("ell must be an odd prime");
  if (q % ell != 1) throw std::invalid_argument("q must be 1 modulo ell");
  const int base_val = valuation(ell, BigInt(q - 1));
  BigInt q_pow = 1;
  for (int n = 1; n <= n_max; ++n) {
    q_pow *= q;
    if (valuation(ell, q_pow - 1) != base_val + valuation(ell, BigInt(n))) return false;
  }
  return true;
}

const char* to_string(SupersingularBranch b) {
  switch (b) {
    case SupersingularBranch::EllPower: return "ell_power";
    case SupersingularBranch::EvenSigned: return "even_signed";
    case SupersingularBranch::Full: return "full";
  }
  return "?";
}

SupersingularReport delta_supersingular(std::int64_t q, std::int64_t ell, int n) {
  if (!is_prime(ell) || ell == 2) throw std::invalid_argument("ell must be an odd prime");
  if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
  if (q % ell == 0) throw std::invalid_argument("ell must not divide q");
  if (n < 1) throw std::invalid_argument("extension degree n must be positive");

  SupersingularReport rep;
  rep.q = q;
  rep.ell = ell;
  rep.n = n;
  rep.e = mult_order_mod(q, ell);
  rep.w_n = valuation(ell, big_pow(BigInt(q), static_cast<unsigned>(rep.e)) - 1) +
            valuation(ell, BigInt(n));
  rep.q_n = big_pow(BigInt(q), static_cast<unsigned>(n));
  if (n % 2 == 0) {
    BigInt half_pow = big_pow(BigInt(q), static_cast<unsigned>(n / 2));
    rep.tau_n = ((n / 2) % 2 == 0 ? 2 : -2) * half_pow;
  } else {
    rep.tau_n = 0;
  }

  const bool e_div_n = n % rep.e == 0;
  const bool e_div_2n = (2 * n) % rep.e == 0;
  if (n % 2 == 1 && e_div_2n && !e_div_n) {
    rep.branch = SupersingularBranch::EllPower;
    rep.delta = Rational(1, big_pow(BigInt(ell), static_cast<unsigned>(rep.w_n)));
  } else if (n % 2 == 0 && e_div_n) {
    rep.branch = SupersingularBranch::EvenSigned;
    if (rep.w_n < 1) throw std::logic_error("w_n must be positive in the even branch");
    const bool e_div_half = (n / 2) % rep.e == 0;
    rep.epsilon = e_div_half ? 1 : -1;
    // The variant rule swaps the sign when n = 2 (mod 4).
    rep.printed_epsilon = (n % 4 == 2) ? -rep.epsilon : rep.epsilon;
    BigInt ell2w = big_pow(BigInt(ell), static_cast<unsigned>(2 * rep.w_n));
    Rational base = (Rational(1) + Rational(1, ell2w)) / 2;
    // 1 / (q^{n/2} + q^{-n/2}) = q^{n/2} / (q^n + 1)
    BigInt half_pow = big_pow(BigInt(q), static_cast<unsigned>(n / 2));
    Rational term = Rational(half_pow, rep.q_n + 1) * (Rational(1) - Rational(1, ell2w));
    rep.delta = base + rep.epsilon * term;
    rep.printed_delta = base + rep.printed_epsilon * term;
    rep.printed_differs = rep.printed_epsilon != rep.epsilon;
    rep.printed_integral = is_integral(rep.printed_delta * Rational(rep.q_n + 1));
  } else {
    rep.branch = SupersingularBranch::Full;
    rep.delta = 1;
  }
  if (rep.branch != SupersingularBranch::EvenSigned) {
    rep.printed_epsilon = rep.epsilon;
    rep.printed_delta = rep.delta;
    rep.printed_differs = false;
    rep.printed_integral = true;
  }

  if (rep.delta != delta_formula(rep.q_n, rep.tau_n, ell))
    throw std::logic_error("supersingular closed form disagrees with the general formula");
  return rep;
}

}  // namespace lattes
