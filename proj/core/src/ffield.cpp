#include "lattes/ffield.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "lattes/numbers.hpp"

namespace lattes {

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

std::string spec_label(const FieldSpec& s) {
  return "GF(" + std::to_string(s.characteristic()) + "^" + std::to_string(s.degree()) + ")";
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!a.valid() || !b.valid()) throw std::invalid_argument("operation on invalid field element");
  if (a.spec() == b.spec()) return;
  if (!a.spec()->equal_to(*b.spec()))
    throw std::invalid_argument("field mismatch: " + spec_label(*a.spec()) + " vs " +
                                spec_label(*b.spec()));
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

std::vector<std::int64_t> distinct_prime_factors(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("prime factors of zero");
  if (n < 0) n = -n;
  std::vector<std::int64_t> out;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

BigInt big_pow(const BigInt& base, unsigned e) { return boost::multiprecision::pow(base, e); }

bool is_integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

std::int64_t max_enumerable_order() {
  static const std::int64_t bound = [] {
    std::int64_t b = 1 << 16;
    if (const char* env = std::getenv("LATTES_MAX_Q")) {
      char* end = nullptr;
      long long v = std::strtoll(env, &end, 10);
      if (end && *end == '\0' && v >= 2) b = std::min<long long>(v, 1 << 24);
    }
    return b;
  }();
  return bound;
}

// ---------------------------------------------------------------------------
// FieldElement basics

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t FieldElement::rank() const {
  if (!valid()) throw std::invalid_argument("rank of invalid element");
  std::int64_t r = 0;
  const std::int64_t p = spec_->characteristic();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * p + *it;
  return r;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  if (a.spec() != b.spec() && !a.spec()->equal_to(*b.spec())) return false;
  return a.c_ == b.c_;
}

// ---------------------------------------------------------------------------
// FieldSpec element construction

FieldElement FieldSpec::zero() const { return FieldElement(this, CoeffVec(flat_degree_, 0)); }

FieldElement FieldSpec::one() const { return from_int(1); }

FieldElement FieldSpec::from_int(std::int64_t v) const {
  CoeffVec c(flat_degree_, 0);
  c[0] = mod_reduce(v, p_);
  return FieldElement(this, std::move(c));
}

FieldElement FieldSpec::element_from_rank(std::int64_t r) const {
  if (r < 0 || r >= order_) throw std::invalid_argument("element rank out of range");
  CoeffVec c(flat_degree_, 0);
  for (int i = 0; i < flat_degree_; ++i) {
    c[i] = r % p_;
    r /= p_;
  }
  return FieldElement(this, std::move(c));
}

FieldElement FieldSpec::element(const std::vector<std::int64_t>& flat_coeffs) const {
  if (static_cast<int>(flat_coeffs.size()) > flat_degree_)
    throw std::invalid_argument("too many coefficients for " + spec_label(*this));
  CoeffVec c(flat_degree_, 0);
  for (std::size_t i = 0; i < flat_coeffs.size(); ++i) c[i] = mod_reduce(flat_coeffs[i], p_);
  return FieldElement(this, std::move(c));
}

FieldElement FieldSpec::wrap(CoeffVec c) const {
  if (static_cast<int>(c.size()) != flat_degree_)
    throw std::logic_error("wrap: coefficient length mismatch");
  return FieldElement(this, std::move(c));
}

bool FieldSpec::equal_to(const FieldSpec& other) const {
  if (this == &other) return true;
  if (p_ != other.p_ || flat_degree_ != other.flat_degree_ || tower_degree_ != other.tower_degree_)
    return false;
  if (!base_ != !other.base_) return false;
  if (base_ && !base_->equal_to(*other.base_)) return false;
  for (std::size_t i = 0; i < modulus_.size(); ++i)
    if (modulus_[i].coeffs() != other.modulus_[i].coeffs()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Arithmetic kernels

namespace {

void add_flat(std::int64_t* dst, const std::int64_t* src, int n, std::int64_t p) {
  for (int i = 0; i < n; ++i) {
    dst[i] += src[i];
    if (dst[i] >= p) dst[i] -= p;
  }
}

void sub_flat(std::int64_t* dst, const std::int64_t* src, int n, std::int64_t p) {
  for (int i = 0; i < n; ++i) {
    dst[i] -= src[i];
    if (dst[i] < 0) dst[i] += p;
  }
}

bool all_zero(const std::int64_t* a, int n) {
  for (int i = 0; i < n; ++i)
    if (a[i] != 0) return false;
  return true;
}

}  // namespace

CoeffVec FieldSpec::mul_flat(const std::int64_t* a, const std::int64_t* b) const {
  if (!base_) return CoeffVec{(a[0] * b[0]) % p_};
  const FieldSpec& B = *base_;
  const int kb = B.degree();
  const int m = tower_degree_;
  // Convolution of the two block vectors over the base field, then reduction
  // by the monic modulus.
  boost::container::small_vector<std::int64_t, 24> conv(
      static_cast<std::size_t>(2 * m - 1) * kb, 0);
  for (int i = 0; i < m; ++i) {
    if (all_zero(a + static_cast<std::size_t>(i) * kb, kb)) continue;
    for (int j = 0; j < m; ++j) {
      if (all_zero(b + static_cast<std::size_t>(j) * kb, kb)) continue;
      CoeffVec prod = B.mul_flat(a + static_cast<std::size_t>(i) * kb,
                                 b + static_cast<std::size_t>(j) * kb);
      add_flat(conv.data() + static_cast<std::size_t>(i + j) * kb, prod.data(), kb, p_);
    }
  }
  for (int t = 2 * m - 2; t >= m; --t) {
    std::int64_t* lead = conv.data() + static_cast<std::size_t>(t) * kb;
    if (all_zero(lead, kb)) continue;
    for (int i = 0; i < m; ++i) {
      const FieldElement& mi = modulus_[i];
      if (mi.is_zero()) continue;
      CoeffVec prod = B.mul_flat(lead, mi.coeffs().data());
      sub_flat(conv.data() + static_cast<std::size_t>(t - m + i) * kb, prod.data(), kb, p_);
    }
    std::fill(lead, lead + kb, 0);
  }
  return CoeffVec(conv.begin(), conv.begin() + static_cast<std::size_t>(m) * kb);
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  CoeffVec c = a.coeffs();
  add_flat(c.data(), b.coeffs().data(), static_cast<int>(c.size()), a.spec()->characteristic());
  return a.spec()->wrap(std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  CoeffVec c = a.coeffs();
  sub_flat(c.data(), b.coeffs().data(), static_cast<int>(c.size()), a.spec()->characteristic());
  return a.spec()->wrap(std::move(c));
}

FieldElement operator-(const FieldElement& a) {
  if (!a.valid()) throw std::invalid_argument("negating invalid element");
  return a.spec()->zero() - a;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return a.spec()->wrap(a.spec()->mul_flat(a.coeffs().data(), b.coeffs().data()));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * inv(b); }

FieldElement pow(const FieldElement& a, std::int64_t n) {
  if (!a.valid()) throw std::invalid_argument("pow on invalid element");
  if (n < 0) return pow(inv(a), -n);
  FieldElement acc = a.spec()->one();
  FieldElement sq = a;
  while (n > 0) {
    if (n & 1) acc = acc * sq;
    n >>= 1;
    if (n > 0) sq = sq * sq;
  }
  return acc;
}

FieldElement inv(const FieldElement& a) {
  if (!a.valid()) throw std::invalid_argument("inv on invalid element");
  if (a.is_zero()) throw std::domain_error("inversion of zero in " + spec_label(*a.spec()));
  return pow(a, a.spec()->order() - 2);
}

FieldElement frobenius(const FieldElement& a, std::int64_t q0) {
  if (!a.valid()) throw std::invalid_argument("frobenius on invalid element");
  const std::int64_t p = a.spec()->characteristic();
  std::int64_t v = q0;
  if (v < 1) throw std::invalid_argument("frobenius power must be positive");
  while (v > 1) {
    if (v % p != 0) throw std::invalid_argument("frobenius power is not a power of the characteristic");
    v /= p;
  }
  return pow(a, q0);
}

std::int64_t absolute_trace(const FieldElement& a) {
  if (!a.valid()) throw std::invalid_argument("trace of invalid element");
  const std::int64_t p = a.spec()->characteristic();
  FieldElement acc = a;
  FieldElement t = a;
  for (int i = 1; i < a.spec()->degree(); ++i) {
    t = pow(t, p);
    acc = acc + t;
  }
  for (std::size_t i = 1; i < acc.coeffs().size(); ++i)
    if (acc.coeffs()[i] != 0) throw std::logic_error("absolute trace left the prime field");
  return acc.coeffs()[0];
}

// ---------------------------------------------------------------------------
// Embedding and restriction

FieldElement embed(const FieldElement& a, const FieldPtr& ext) {
  if (!a.valid()) throw std::invalid_argument("embed of invalid element");
  if (ext->equal_to(*a.spec())) {
    std::vector<std::int64_t> c(a.coeffs().begin(), a.coeffs().end());
    return ext->element(c);
  }
  if (!ext->base())
    throw std::invalid_argument("element field is not part of the extension tower");
  FieldElement inner = embed(a, ext->base());
  std::vector<std::int64_t> c(inner.coeffs().begin(), inner.coeffs().end());
  return ext->element(c);  // zero-padded to the full degree
}

bool in_base(const FieldElement& a) {
  if (!a.valid() || !a.spec()->base()) return false;
  const int kb = a.spec()->base()->degree();
  for (std::size_t i = kb; i < a.coeffs().size(); ++i)
    if (a.coeffs()[i] != 0) return false;
  return true;
}

FieldElement restrict_to_base(const FieldElement& a) {
  if (!in_base(a)) throw std::domain_error("element does not lie in the base field");
  const FieldPtr& b = a.spec()->base();
  std::vector<std::int64_t> c(a.coeffs().begin(), a.coeffs().begin() + b->degree());
  return b->element(c);
}

std::vector<FieldElement> enumerate_field(const FieldPtr& field) {
  if (field->order() > max_enumerable_order())
    throw std::invalid_argument("field too large to enumerate: order " +
                                std::to_string(field->order()));
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(field->order()));
  for (std::int64_t r = 0; r < field->order(); ++r) out.push_back(field->element_from_rank(r));
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials over a field: just enough for irreducibility testing.

namespace {

using Poly = std::vector<FieldElement>;

int poly_deg(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (!f[i].is_zero()) return i;
  return -1;
}

void poly_trim(Poly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

// r = r mod f, f monic.
void poly_reduce(Poly& r, const Poly& f) {
  const int df = static_cast<int>(f.size()) - 1;
  for (int t = static_cast<int>(r.size()) - 1; t >= df; --t) {
    if (r[t].is_zero()) continue;
    FieldElement lead = r[t];
    for (int i = 0; i < df; ++i) r[t - df + i] = r[t - df + i] - lead * f[i];
    r[t] = r[t].spec()->zero();
  }
  r.resize(df, f[0].spec()->zero());
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f) {
  const FieldSpec* K = f[0].spec();
  Poly r(a.size() + b.size() - 1, K->zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  poly_reduce(r, f);
  return r;
}

Poly poly_powmod(Poly base, std::int64_t e, const Poly& f) {
  const FieldSpec* K = f[0].spec();
  Poly acc(f.size() - 1, K->zero());
  acc[0] = K->one();
  while (e > 0) {
    if (e & 1) acc = poly_mulmod(acc, base, f);
    e >>= 1;
    if (e > 0) base = poly_mulmod(base, base, f);
  }
  return acc;
}

Poly poly_gcd(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    // a mod b with b monicized
    FieldElement lead_inv = inv(b.back());
    for (auto& c : b) c = c * lead_inv;
    Poly r = a;
    const int db = static_cast<int>(b.size()) - 1;
    for (int t = static_cast<int>(r.size()) - 1; t >= db; --t) {
      if (r[t].is_zero()) continue;
      FieldElement lead = r[t];
      for (int i = 0; i <= db; ++i) r[t - db + i] = r[t - db + i] - lead * b[i];
    }
    poly_trim(r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_irreducible_impl(const Poly& f_monic) {
  const FieldSpec* K = f_monic[0].spec();
  const int m = static_cast<int>(f_monic.size()) - 1;
  if (m <= 0) return false;
  if (m == 1) return true;
  const std::int64_t Q = K->order();
  Poly x(m, K->zero());
  x[1] = K->one();
  // Rabin: x^{Q^m} = x mod f and gcd(x^{Q^{m/t}} - x, f) = 1 for prime t | m.
  std::vector<int> check_at;
  for (std::int64_t t : distinct_prime_factors(m)) check_at.push_back(m / static_cast<int>(t));
  Poly h = x;
  for (int j = 1; j <= m; ++j) {
    h = poly_powmod(h, Q, f_monic);
    if (std::find(check_at.begin(), check_at.end(), j) != check_at.end()) {
      Poly diff = h;
      diff[1] = diff[1] - K->one();
      Poly g = poly_gcd(diff, f_monic);
      if (poly_deg(g) != 0) return false;
    }
    if (j == m) {
      Poly diff = h;
      diff[1] = diff[1] - K->one();
      if (poly_deg(diff) != -1) return false;
    }
  }
  return true;
}

}  // namespace

bool is_irreducible(const std::vector<FieldElement>& poly) {
  if (poly.size() < 2) throw std::invalid_argument("polynomial degree must be at least 1");
  if (poly.back().is_zero()) throw std::invalid_argument("leading coefficient must be nonzero");
  Poly f = poly;
  if (!(f.back() == f.back().spec()->one())) {
    FieldElement lead_inv = inv(f.back());
    for (auto& c : f) c = c * lead_inv;
  }
  return is_irreducible_impl(f);
}

// ---------------------------------------------------------------------------
// Field construction

namespace detail {

FieldPtr make_prime_field(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
  s->p_ = p;
  s->tower_degree_ = 1;
  s->flat_degree_ = 1;
  s->order_ = p;
  return s;
}

FieldPtr build_extension(const FieldPtr& base, std::vector<FieldElement> modulus, bool custom) {
  const int m = static_cast<int>(modulus.size()) - 1;
  BigInt ord = big_pow(BigInt(base->order()), static_cast<unsigned>(m));
  const BigInt cap = BigInt(max_enumerable_order()) * max_enumerable_order();
  if (ord > cap)
    throw std::invalid_argument("extension order exceeds the configured bound");
  auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
  s->p_ = base->characteristic();
  s->tower_degree_ = m;
  s->flat_degree_ = base->degree() * m;
  s->order_ = static_cast<std::int64_t>(ord);
  s->base_ = base;
  s->modulus_ = std::move(modulus);
  s->custom_modulus_ = custom;
  return s;
}

}  // namespace detail

using detail::build_extension;
using detail::make_prime_field;

FieldPtr extension(const FieldPtr& base, int m) {
  if (m < 2) throw std::invalid_argument("extension degree must be at least 2");
  const std::int64_t Q = base->order();
  BigInt ord = big_pow(BigInt(Q), static_cast<unsigned>(m));
  const BigInt cap = BigInt(max_enumerable_order()) * max_enumerable_order();
  if (ord > cap) throw std::invalid_argument("extension order exceeds the configured bound");
  // Scan monic candidates x^m + c_{m-1}x^{m-1} + ... + c_0 in canonical
  // order of the coefficient vector (c_0 varies fastest).
  BigInt total = big_pow(BigInt(Q), static_cast<unsigned>(m));
  for (BigInt idx = 1; idx < total; ++idx) {  // c_0 = 0 is always reducible
    BigInt rest = idx;
    std::vector<FieldElement> cand;
    cand.reserve(m + 1);
    for (int i = 0; i < m; ++i) {
      cand.push_back(base->element_from_rank(static_cast<std::int64_t>(rest % Q)));
      rest /= Q;
    }
    if (cand[0].is_zero()) continue;
    cand.push_back(base->one());
    if (is_irreducible_impl(cand)) return build_extension(base, std::move(cand), false);
  }
  throw std::logic_error("no irreducible modulus found");  // unreachable
}

FieldPtr quadratic_ext(const FieldPtr& base) { return extension(base, 2); }

FieldPtr make_field(std::int64_t p, int k) {
  if (k < 1) throw std::invalid_argument("extension degree must be positive");
  FieldPtr prime = make_prime_field(p);
  if (k == 1) return prime;
  BigInt ord = big_pow(BigInt(p), static_cast<unsigned>(k));
  if (ord > max_enumerable_order())
    throw std::invalid_argument("field order " + ord.str() + " exceeds the configured bound");
  return extension(prime, k);
}

FieldPtr make_field_with_modulus(std::int64_t p, const std::vector<std::int64_t>& modulus) {
  if (modulus.size() < 2) throw std::invalid_argument("modulus degree must be at least 1");
  FieldPtr prime = make_prime_field(p);
  const int k = static_cast<int>(modulus.size()) - 1;
  std::vector<FieldElement> coeffs;
  coeffs.reserve(modulus.size());
  for (std::int64_t c : modulus) coeffs.push_back(prime->from_int(c));
  if (!(coeffs.back() == prime->one()))
    throw std::invalid_argument("modulus must be monic");
  if (k == 1) {
    if (!coeffs[0].is_zero())
      throw std::invalid_argument("degree-1 modulus must be x; use the prime field form");
    return prime;
  }
  BigInt ord = big_pow(BigInt(p), static_cast<unsigned>(k));
  if (ord > max_enumerable_order())
    throw std::invalid_argument("field order " + ord.str() + " exceeds the configured bound");
  if (!is_irreducible_impl(coeffs))
    throw std::invalid_argument("modulus is reducible over GF(" + std::to_string(p) + ")");
  return build_extension(prime, std::move(coeffs), true);
}

// ---------------------------------------------------------------------------
// Quadratic solving

namespace {
constexpr std::int64_t kTableCap = std::int64_t(1) << 22;
}

QuadraticSolver::QuadraticSolver(FieldPtr field) : field_(std::move(field)) {
  const FieldSpec& F = *field_;
  char2_ = F.characteristic() == 2;
  if (!char2_ && F.base() && F.tower_degree() == 2 && F.modulus()[1].is_zero()) {
    tower_fast_ = true;
    tower_g_ = -F.modulus()[0];
    base_ = std::make_unique<QuadraticSolver>(F.base());
    return;
  }
  if (F.order() > kTableCap)
    throw std::invalid_argument("quadratic solving over " + spec_label(F) +
                                " exceeds the search bound");
  table_.assign(static_cast<std::size_t>(F.order()), -1);
  for (std::int64_t r = 0; r < F.order(); ++r) {
    FieldElement z = F.element_from_rank(r);
    FieldElement v = char2_ ? z * z + z : z * z;
    std::int64_t vr = v.rank();
    if (table_[static_cast<std::size_t>(vr)] < 0) table_[static_cast<std::size_t>(vr)] = r;
  }
}

namespace {

std::vector<FieldElement> sorted_pair(FieldElement a, FieldElement b) {
  if (a == b) return {std::move(a)};
  if (b.rank() < a.rank()) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

// Assemble u + v*t in a degree-2 tower from base components.
FieldElement tower_join(const FieldPtr& field, const FieldElement& u, const FieldElement& v) {
  std::vector<std::int64_t> c(u.coeffs().begin(), u.coeffs().end());
  c.insert(c.end(), v.coeffs().begin(), v.coeffs().end());
  return field->element(c);
}

}  // namespace

std::vector<FieldElement> QuadraticSolver::sqrt(const FieldElement& a) const {
  if (!a.valid()) throw std::invalid_argument("sqrt of invalid element");
  if (!a.spec()->equal_to(*field_)) throw std::invalid_argument("sqrt: element not in solver field");
  if (a.is_zero()) return {field_->zero()};
  if (char2_) {
    // Squaring is a bijection; invert it by iterating the Frobenius.
    FieldElement s = a;
    for (int i = 1; i < field_->degree(); ++i) s = s * s;
    return {s};
  }
  if (!tower_fast_) {
    std::int64_t r = table_[static_cast<std::size_t>(a.rank())];
    if (r < 0) return {};
    FieldElement y = field_->element_from_rank(r);
    return sorted_pair(y, -y);
  }
  // Tower GF(q^2) = GF(q)(t), t^2 = g with g a non-square of the base.
  const FieldPtr& B = field_->base();
  FieldElement u = B->element(
      std::vector<std::int64_t>(a.coeffs().begin(), a.coeffs().begin() + B->degree()));
  FieldElement v = B->element(
      std::vector<std::int64_t>(a.coeffs().begin() + B->degree(), a.coeffs().end()));
  const FieldElement half = inv(B->from_int(2));
  if (v.is_zero()) {
    auto su = base_->sqrt(u);
    if (!su.empty()) {
      FieldElement y = tower_join(field_, su[0], B->zero());
      return sorted_pair(y, -y);
    }
    // u and g are both non-squares, so u/g is a square: sqrt = r*t.
    auto sr = base_->sqrt(u / tower_g_);
    if (sr.empty()) throw std::logic_error("non-square quotient of two non-squares");
    FieldElement y = tower_join(field_, B->zero(), sr[0]);
    return sorted_pair(y, -y);
  }
  // y = s + r t with 2sr = v and s^2 + g r^2 = u. Then s^2 and g r^2 are the
  // roots of z^2 - u z + g (v/2)^2; their product is a non-square, so exactly
  // one of them is a nonzero square.
  auto w = base_->sqrt(u * u - tower_g_ * v * v);
  if (w.empty()) return {};
  FieldElement z1 = (u + w[0]) * half;
  auto s = base_->sqrt(z1);
  if (s.empty() || s[0].is_zero()) {
    FieldElement z2 = (u - w[0]) * half;
    s = base_->sqrt(z2);
    if (s.empty() || s[0].is_zero())
      throw std::logic_error("square root decomposition failed in tower field");
  }
  FieldElement rr = v * half * inv(s[0]);
  FieldElement y = tower_join(field_, s[0], rr);
  return sorted_pair(y, -y);
}

std::vector<FieldElement> QuadraticSolver::solve(const FieldElement& c2, const FieldElement& c1,
                                                 const FieldElement& c0) const {
  if (!c2.valid() || !c1.valid() || !c0.valid())
    throw std::invalid_argument("solve on invalid coefficients");
  if (c2.is_zero()) throw std::invalid_argument("degenerate quadratic: leading coefficient zero");
  FieldElement b = c1 / c2;
  FieldElement c = c0 / c2;
  if (char2_) {
    if (b.is_zero()) return sqrt(c);  // unique root
    // y = b z turns y^2 + b y + c into z^2 + z = c / b^2.
    FieldElement u = c / (b * b);
    std::int64_t r = table_[static_cast<std::size_t>(u.rank())];
    if (r < 0) return {};
    FieldElement z = field_->element_from_rank(r);
    return sorted_pair(b * z, b * z + b);
  }
  const FieldElement half = inv(field_->from_int(2));
  FieldElement shift = b * half;
  FieldElement disc = shift * shift - c;  // (y + b/2)^2 = b^2/4 - c
  std::vector<FieldElement> roots;
  for (const FieldElement& s : sqrt(disc)) roots.push_back(s - shift);
  if (roots.size() == 2 && roots[1].rank() < roots[0].rank()) std::swap(roots[0], roots[1]);
  return roots;
}

std::vector<FieldElement> solve_quadratic(const FieldElement& c2, const FieldElement& c1,
                                          const FieldElement& c0) {
  if (!c2.valid()) throw std::invalid_argument("solve_quadratic on invalid coefficients");
  // Rebuild a spec-owning handle for the throwaway solver.
  require_same_field(c2, c1);
  require_same_field(c2, c0);
  struct NonOwning {
    void operator()(const FieldSpec*) const {}
  };
  FieldPtr handle(c2.spec(), NonOwning{});
  QuadraticSolver solver(handle);
  return solver.solve(c2, c1, c0);
}

}  // namespace lattes
