#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "lattes/ffield.hpp"
#include "lattes/numbers.hpp"

using namespace lattes;

namespace {

// Test-side irreducibility oracle: a monic polynomial over GF(p), degree 2
// or 3, is irreducible iff it has no root.
bool brute_irreducible_low_degree(std::int64_t p, const std::vector<std::int64_t>& poly) {
  for (std::int64_t r = 0; r < p; ++r) {
    std::int64_t acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = (acc * r + *it) % p;
    if (acc == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> ranks(const std::vector<FieldElement>& elems) {
  std::vector<std::int64_t> out;
  for (const FieldElement& e : elems) out.push_back(e.rank());
  return out;
}

// Deterministic LCG for sampled property tests.
struct Lcg {
  std::uint64_t state;
  std::int64_t next(std::int64_t bound) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<std::int64_t>((state >> 33) % static_cast<std::uint64_t>(bound));
  }
};

std::vector<std::int64_t> prime_powers_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q <= bound; ++q)
    if (distinct_prime_factors(q).size() == 1) out.push_back(q);
  return out;
}

FieldPtr field_of_order(std::int64_t q) {
  const std::int64_t p = distinct_prime_factors(q)[0];
  int k = 0;
  for (std::int64_t v = q; v > 1; v /= p) ++k;
  return make_field(p, k);
}

}  // namespace

TEST_CASE("deterministic moduli match the first irreducible in canonical order") {
  CHECK(make_field(5)->degree() == 1);

  auto f25 = make_field(5, 2);
  std::vector<std::int64_t> got;
  for (const FieldElement& c : f25->modulus()) got.push_back(c.coeffs()[0]);
  CHECK(got == std::vector<std::int64_t>{2, 0, 1});
  // Oracle: scan all monic quadratics over GF(5) in rank order of (c0, c1).
  bool found = false;
  for (std::int64_t idx = 0; idx < 25 && !found; ++idx) {
    std::vector<std::int64_t> cand{idx % 5, idx / 5, 1};
    if (brute_irreducible_low_degree(5, cand)) {
      CHECK(cand == got);
      found = true;
    }
  }
  CHECK(found);

  auto f8 = make_field(2, 3);
  got.clear();
  for (const FieldElement& c : f8->modulus()) got.push_back(c.coeffs()[0]);
  CHECK(got == std::vector<std::int64_t>{1, 1, 0, 1});
  found = false;
  for (std::int64_t idx = 0; idx < 8 && !found; ++idx) {
    std::vector<std::int64_t> cand{idx % 2, (idx / 2) % 2, idx / 4, 1};
    if (brute_irreducible_low_degree(2, cand)) {
      CHECK(cand == got);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("field construction rejects bad input") {
  CHECK_THROWS_AS(make_field(4), std::invalid_argument);
  CHECK_THROWS_AS(make_field(1), std::invalid_argument);
  CHECK_THROWS_AS(make_field(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_field(2, 17), std::invalid_argument);  // 2^17 above the default bound
  CHECK_THROWS_AS(make_field_with_modulus(5, {2, 0, 2}), std::invalid_argument);  // not monic
  CHECK_THROWS_AS(make_field_with_modulus(5, {1, 0, 1}), std::invalid_argument);  // reducible
  CHECK_NOTHROW(make_field_with_modulus(5, {1, 1, 1}));  // x^2+x+1 is irreducible over GF(5)
}

TEST_CASE("basic arithmetic examples") {
  auto f5 = make_field(5);
  CHECK(inv(f5->from_int(3)) == f5->from_int(2));
  CHECK_THROWS_AS(inv(f5->zero()), std::domain_error);

  auto f9 = make_field(3, 2);
  for (std::int64_t r = 1; r < 9; ++r)
    CHECK(pow(f9->element_from_rank(r), 8) == f9->one());

  auto f25 = make_field(5, 2);
  FieldElement x = f25->element({0, 1});
  CHECK(x * x == f25->from_int(3));
  CHECK(frobenius(x, 5) == f25->element({0, 4}));

  // Mixed-field operations are rejected.
  auto f7 = make_field(7);
  CHECK_THROWS_AS((void)(f5->one() + f7->one()), std::invalid_argument);
  CHECK_THROWS_AS(frobenius(f5->from_int(2), 6), std::invalid_argument);

  CHECK(pow(f5->from_int(3), -1) == f5->from_int(2));
  CHECK(pow(f5->zero(), 0) == f5->one());
}

TEST_CASE("canonical enumeration") {
  CHECK(ranks(enumerate_field(make_field(2))) == std::vector<std::int64_t>{0, 1});
  CHECK(ranks(enumerate_field(make_field(5))) == std::vector<std::int64_t>{0, 1, 2, 3, 4});
  auto f4 = make_field(2, 2);
  auto elems = enumerate_field(f4);
  REQUIRE(elems.size() == 4);
  // rank = c0 + 2*c1
  CHECK(elems[0].coeffs() == CoeffVec{0, 0});
  CHECK(elems[1].coeffs() == CoeffVec{1, 0});
  CHECK(elems[2].coeffs() == CoeffVec{0, 1});
  CHECK(elems[3].coeffs() == CoeffVec{1, 1});
}

TEST_CASE("solve_quadratic examples") {
  auto f5 = make_field(5);
  auto roots = solve_quadratic(f5->one(), f5->zero(), f5->from_int(-1));  // y^2 - 1
  CHECK(ranks(roots) == std::vector<std::int64_t>{1, 4});
  CHECK(solve_quadratic(f5->one(), f5->zero(), f5->from_int(-2)).empty());  // 2 is a non-square

  auto f2 = make_field(2);
  CHECK(solve_quadratic(f2->one(), f2->one(), f2->one()).empty());  // y^2+y+1 over GF(2)
  auto f4 = make_field(2, 2);
  auto r4 = solve_quadratic(f4->one(), f4->one(), f4->one());
  REQUIRE(r4.size() == 2);
  for (const FieldElement& y : r4) CHECK((y * y + y + f4->one()).is_zero());

  CHECK_THROWS_AS(solve_quadratic(f5->zero(), f5->one(), f5->one()), std::invalid_argument);
}

TEST_CASE("quadratic extensions and embedding") {
  auto f5 = make_field(5);
  auto f25 = quadratic_ext(f5);
  CHECK(f25->order() == 25);
  CHECK(f25->modulus()[0] == f5->from_int(2));
  CHECK(f25->modulus()[1].is_zero());
  FieldElement three = embed(f5->from_int(3), f25);
  CHECK(three.coeffs() == CoeffVec{3, 0});
  CHECK(in_base(three));
  CHECK(restrict_to_base(three) == f5->from_int(3));

  auto f2 = make_field(2);
  auto f4 = quadratic_ext(f2);
  std::vector<std::int64_t> mod;
  for (const FieldElement& c : f4->modulus()) mod.push_back(c.coeffs()[0]);
  CHECK(mod == std::vector<std::int64_t>{1, 1, 1});
  CHECK(embed(f2->zero(), f4).is_zero());

  // embed respects arithmetic, exhaustively for q <= 25
  for (std::int64_t q : {2, 3, 4, 5, 7, 9, 11, 13, 16, 25}) {
    auto base = field_of_order(q);
    auto ext = quadratic_ext(base);
    for (std::int64_t i = 0; i < q; ++i) {
      for (std::int64_t j = 0; j < q; ++j) {
        FieldElement a = base->element_from_rank(i), b = base->element_from_rank(j);
        CHECK(embed(a * b, ext) == embed(a, ext) * embed(b, ext));
        CHECK(embed(a + b, ext) == embed(a, ext) + embed(b, ext));
      }
    }
  }
}

TEST_CASE("frobenius fixes exactly the base field of a quadratic tower") {
  for (std::int64_t q : {4, 5, 9}) {
    auto base = field_of_order(q);
    auto ext = quadratic_ext(base);
    for (std::int64_t r = 0; r < ext->order(); ++r) {
      FieldElement a = ext->element_from_rank(r);
      FieldElement fa = frobenius(a, q);
      CHECK(frobenius(fa, q) == a);            // F^2 = id on GF(q^2)
      CHECK((fa == a) == in_base(a));          // fixed points = GF(q)
    }
  }
}

TEST_CASE("field axioms: exhaustive on small fields, sampled up to 625") {
  for (std::int64_t q : prime_powers_up_to(625)) {
    auto f = field_of_order(q);
    // inverses and the Fermat identity, every element
    for (std::int64_t r = 0; r < q; ++r) {
      FieldElement a = f->element_from_rank(r);
      CHECK(pow(a, q) == a);
      if (r != 0) CHECK(a * inv(a) == f->one());
    }
    if (q <= 49) {
      for (std::int64_t i = 0; i < q; ++i)
        for (std::int64_t j = 0; j < q; ++j) {
          FieldElement a = f->element_from_rank(i), b = f->element_from_rank(j);
          CHECK(a * b == b * a);
          CHECK(a + b == b + a);
          for (std::int64_t k = 0; k < q; ++k) {
            FieldElement c = f->element_from_rank(k);
            CHECK((a * b) * c == a * (b * c));
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
          }
        }
    } else {
      Lcg rng{static_cast<std::uint64_t>(q)};
      for (int trial = 0; trial < 2000; ++trial) {
        FieldElement a = f->element_from_rank(rng.next(q));
        FieldElement b = f->element_from_rank(rng.next(q));
        FieldElement c = f->element_from_rank(rng.next(q));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
      }
    }
  }
}

TEST_CASE("tower square roots agree with brute force") {
  // Exercises both the odd tower decomposition and the characteristic-2
  // table path, against a from-scratch table of squares.
  for (std::int64_t q : {5, 8, 9, 25, 49}) {
    auto base = field_of_order(q);
    auto ext = quadratic_ext(base);
    QuadraticSolver solver(ext);
    std::map<std::int64_t, std::set<std::int64_t>> squares;
    for (std::int64_t r = 0; r < ext->order(); ++r) {
      FieldElement y = ext->element_from_rank(r);
      squares[(y * y).rank()].insert(r);
    }
    for (std::int64_t r = 0; r < ext->order(); ++r) {
      FieldElement a = ext->element_from_rank(r);
      std::set<std::int64_t> got;
      for (const FieldElement& y : solver.sqrt(a)) {
        CHECK(y * y == a);
        got.insert(y.rank());
      }
      auto it = squares.find(r);
      std::set<std::int64_t> expect = it == squares.end() ? std::set<std::int64_t>{} : it->second;
      CHECK(got == expect);
    }
  }
}

TEST_CASE("quadratic solving is exhaustive-complete on small fields") {
  for (std::int64_t q : {7, 8, 9}) {
    auto f = field_of_order(q);
    QuadraticSolver solver(f);
    for (std::int64_t i = 1; i < q; ++i)
      for (std::int64_t j = 0; j < q; ++j)
        for (std::int64_t k = 0; k < q; ++k) {
          FieldElement c2 = f->element_from_rank(i);
          FieldElement c1 = f->element_from_rank(j);
          FieldElement c0 = f->element_from_rank(k);
          std::set<std::int64_t> expect;
          for (std::int64_t r = 0; r < q; ++r) {
            FieldElement y = f->element_from_rank(r);
            if ((c2 * y * y + c1 * y + c0).is_zero()) expect.insert(r);
          }
          auto roots = solver.solve(c2, c1, c0);
          std::set<std::int64_t> got;
          for (const FieldElement& y : roots) got.insert(y.rank());
          CHECK(got == expect);
          CHECK(std::is_sorted(roots.begin(), roots.end(),
                               [](const FieldElement& a, const FieldElement& b) {
                                 return a.rank() < b.rank();
                               }));
        }
  }
}

TEST_CASE("explicit moduli with a linear term still solve correctly") {
  auto f = make_field_with_modulus(5, {1, 1, 1});  // GF(25) as GF(5)[x]/(x^2+x+1)
  QuadraticSolver solver(f);
  int square_count = 0;
  for (std::int64_t r = 0; r < 25; ++r) {
    FieldElement a = f->element_from_rank(r);
    auto roots = solver.sqrt(a);
    for (const FieldElement& y : roots) CHECK(y * y == a);
    if (!roots.empty()) ++square_count;
  }
  CHECK(square_count == 13);  // 0 plus (25-1)/2 nonzero squares
}

TEST_CASE("absolute trace lands in the prime field and hits both values") {
  for (std::int64_t q : {4, 8, 16}) {
    auto f = field_of_order(q);
    std::int64_t ones = 0;
    for (std::int64_t r = 0; r < q; ++r) ones += absolute_trace(f->element_from_rank(r));
    CHECK(ones == q / 2);  // trace is a balanced GF(2)-linear form
  }
}
