#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lattes/curve.hpp"
#include "lattes/density.hpp"
#include "lattes/ffield.hpp"
#include "lattes/lattes_map.hpp"

namespace lattes {

/// Field spec text: `p`, `p^k`, or `p^k/m0,m1,...,mk` (explicit modulus,
/// low degree first).
FieldPtr parse_field(const std::string& text);
std::string field_to_string(const FieldPtr& field);

/// Element text: a bare integer (reduced mod p) or `[c0,c1,...]`.
/// Negative coefficients are accepted and reduced.
FieldElement parse_element(const std::string& text, const FieldPtr& field);
std::string element_to_string(const FieldElement& e);

/// Curve spec text: `FIELD:a1,a2,a3,a4,a6`, e.g. `5:0,0,0,1,1` or
/// `2^2:[1,1],0,[0,1],1,1`.
WeierstrassCurve parse_curve(const std::string& text);
std::string curve_to_string(const WeierstrassCurve& curve);

/// Element text for a P^1 index; infinity prints as `inf`.
std::string p1_to_string(P1Index a, const FieldPtr& field);

/// `num/den`, or just `num` for integers.
std::string rational_to_string(const Rational& r);

// Deterministic serialization. CSV uses ',' separators, '\n' line endings,
// and always carries a header row. Big integers are decimal strings in JSON.

std::string density_csv_header();
std::string density_csv_row(const DensityReport& rep);
std::string density_json(const DensityReport& rep);

std::string graph_csv(const FunctionalGraph& g, const FieldPtr& field);

std::string tower_csv(const TowerReport& rep);
std::string tower_json(const TowerReport& rep);

/// One rendered row of the trace-zero density table: the closed form, the
/// general formula value, and optionally a brute-force density.
struct SupersingularRow {
  SupersingularReport rep;
  Rational general;  // delta_formula at (q^n, tau_n, ell)
  std::optional<Rational> oracle;
  bool match = false;
};

std::string supersingular_csv(const std::vector<SupersingularRow>& rows, bool printed_epsilon);
std::string supersingular_json(const std::vector<SupersingularRow>& rows, bool printed_epsilon);

std::string oracle_csv_header();
std::string oracle_csv_row(std::int64_t q, std::int64_t d, std::int64_t per_count,
                           const Rational& delta, bool permutation);
std::string oracle_json(std::int64_t q, std::int64_t d, std::int64_t per_count,
                        const Rational& delta, bool permutation);

}  // namespace lattes
