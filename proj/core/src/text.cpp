#include "lattes/text.hpp"

#include <cctype>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lattes {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::int64_t parse_int(const std::string& text, const char* what) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("cannot parse ") + what + ": '" + text + "'");
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument(std::string("empty ") + what);
  for (std::size_t i = 0; i <= t.size(); ++i) {
    if (i == t.size() || t[i] == ',') {
      out.push_back(parse_int(t.substr(start, i - start), what));
      start = i + 1;
    }
  }
  return out;
}

// Split on top-level commas only (commas inside [...] group coefficients).
std::vector<std::string> split_bracket_aware(const std::string& text) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    } else if (text[i] == '[') {
      ++depth;
    } else if (text[i] == ']') {
      if (--depth < 0) throw std::invalid_argument("unbalanced ']' in '" + text + "'");
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced '[' in '" + text + "'");
  return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

ordered_json rational_json(const Rational& r) {
  ordered_json j;
  j["num"] = boost::multiprecision::numerator(r).str();
  j["den"] = boost::multiprecision::denominator(r).str();
  return j;
}

}  // namespace

FieldPtr parse_field(const std::string& text) {
  const std::string t = trim(text);
  const std::size_t slash = t.find('/');
  const std::string head = slash == std::string::npos ? t : t.substr(0, slash);
  const std::size_t caret = head.find('^');
  const std::int64_t p = parse_int(caret == std::string::npos ? head : head.substr(0, caret),
                                   "field characteristic");
  std::int64_t k = 1;
  if (caret != std::string::npos) k = parse_int(head.substr(caret + 1), "extension degree");
  if (k < 1 || k > 64) throw std::invalid_argument("extension degree out of range");
  if (slash == std::string::npos) return make_field(p, static_cast<int>(k));
  std::vector<std::int64_t> mod = parse_int_list(t.substr(slash + 1), "modulus coefficients");
  if (static_cast<std::int64_t>(mod.size()) != k + 1)
    throw std::invalid_argument("modulus must list k+1 coefficients");
  return make_field_with_modulus(p, mod);
}

std::string field_to_string(const FieldPtr& field) {
  const std::int64_t p = field->characteristic();
  if (field->degree() == 1) return std::to_string(p);
  std::string s = std::to_string(p) + "^" + std::to_string(field->degree());
  if (field->custom_modulus() && field->base() && field->base()->degree() == 1) {
    s += "/";
    for (std::size_t i = 0; i < field->modulus().size(); ++i) {
      if (i) s += ",";
      s += std::to_string(field->modulus()[i].coeffs()[0]);
    }
  }
  return s;
}

FieldElement parse_element(const std::string& text, const FieldPtr& field) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty field element");
  if (t.front() == '[') {
    if (t.back() != ']') throw std::invalid_argument("unterminated '[' in '" + text + "'");
    return field->element(parse_int_list(t.substr(1, t.size() - 2), "element coefficients"));
  }
  return field->from_int(parse_int(t, "element"));
}

std::string element_to_string(const FieldElement& e) {
  if (!e.valid()) throw std::invalid_argument("formatting invalid element");
  if (e.spec()->degree() == 1) return std::to_string(e.coeffs()[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < e.coeffs().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e.coeffs()[i]);
  }
  return s + "]";
}

WeierstrassCurve parse_curve(const std::string& text) {
  const std::string t = trim(text);
  const std::size_t colon = t.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("curve spec must look like FIELD:a1,a2,a3,a4,a6");
  FieldPtr field = parse_field(t.substr(0, colon));
  std::vector<std::string> parts = split_bracket_aware(t.substr(colon + 1));
  if (parts.size() != 5)
    throw std::invalid_argument("curve spec needs exactly five coefficients");
  std::vector<FieldElement> cs;
  for (const std::string& part : parts) cs.push_back(parse_element(part, field));
  return WeierstrassCurve(field, cs[0], cs[1], cs[2], cs[3], cs[4]);
}

std::string curve_to_string(const WeierstrassCurve& curve) {
  return field_to_string(curve.field()) + ":" + element_to_string(curve.a1()) + "," +
         element_to_string(curve.a2()) + "," + element_to_string(curve.a3()) + "," +
         element_to_string(curve.a4()) + "," + element_to_string(curve.a6());
}

std::string p1_to_string(P1Index a, const FieldPtr& field) {
  if (a == field->order()) return "inf";
  return element_to_string(field->element_from_rank(a));
}

std::string rational_to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string density_csv_header() {
  return "q,n,tau_n,d,pi_plus,pi_minus,delta_num,delta_den,per_count,permutation,gap_ok\n";
}

std::string density_csv_row(const DensityReport& rep) {
  return std::to_string(rep.q) + "," + std::to_string(rep.n) + "," + rep.tau_n.str() + "," +
         std::to_string(rep.d) + "," + rep.pi_plus.str() + "," + rep.pi_minus.str() + "," +
         boost::multiprecision::numerator(rep.delta).str() + "," +
         boost::multiprecision::denominator(rep.delta).str() + "," + rep.per_count.str() + "," +
         bool_str(rep.permutation) + "," + bool_str(rep.gap_ok) + "\n";
}

std::string density_json(const DensityReport& rep) {
  ordered_json j;
  j["q"] = rep.q;
  j["n"] = rep.n;
  j["tau_n"] = rep.tau_n.str();
  j["d"] = rep.d;
  j["pi_plus"] = rep.pi_plus.str();
  j["pi_minus"] = rep.pi_minus.str();
  j["delta"] = rational_json(rep.delta);
  j["per_count"] = rep.per_count.str();
  j["permutation"] = rep.permutation;
  j["gap_ok"] = rep.gap_ok;
  return j.dump(2) + "\n";
}

std::string graph_csv(const FunctionalGraph& g, const FieldPtr& field) {
  std::string out = "index,repr,succ_index,periodic\n";
  for (std::size_t i = 0; i < g.succ.size(); ++i) {
    out += std::to_string(i) + "," + p1_to_string(static_cast<P1Index>(i), field) + "," +
           std::to_string(g.succ[i]) + "," + bool_str(g.periodic[i] != 0) + "\n";
  }
  return out;
}

std::string tower_csv(const TowerReport& rep) {
  std::string out =
      "n,c,n_emp,modulus,stabilized,limit_num,limit_den,m,delta_num,delta_den,gap_ok,vals_match\n";
  const std::string prefix = std::to_string(rep.n) + "," + std::to_string(rep.c) + "," +
                             std::to_string(rep.n_emp) + "," + std::to_string(rep.modulus) + "," +
                             bool_str(rep.stabilized) + "," +
                             boost::multiprecision::numerator(rep.limit).str() + "," +
                             boost::multiprecision::denominator(rep.limit).str();
  for (const TowerSample& s : rep.samples) {
    out += prefix + "," + std::to_string(s.m) + "," +
           boost::multiprecision::numerator(s.delta).str() + "," +
           boost::multiprecision::denominator(s.delta).str() + "," + bool_str(s.gap_ok) + "," +
           bool_str(s.vals_match) + "\n";
  }
  return out;
}

std::string tower_json(const TowerReport& rep) {
  ordered_json j;
  j["n"] = rep.n;
  j["c"] = rep.c;
  j["n_emp"] = rep.n_emp;
  j["modulus"] = rep.modulus;
  j["stabilized"] = rep.stabilized;
  j["limit"] = rational_json(rep.limit);
  ordered_json samples = ordered_json::array();
  for (const TowerSample& s : rep.samples) {
    ordered_json e;
    e["m"] = s.m;
    e["delta"] = rational_json(s.delta);
    e["gap_ok"] = s.gap_ok;
    e["vals_match"] = s.vals_match;
    samples.push_back(std::move(e));
  }
  j["samples"] = std::move(samples);
  return j.dump(2) + "\n";
}

namespace {

void supersingular_row_columns(const SupersingularRow& row, bool printed_epsilon,
                               ordered_json* json_row, std::string* csv_row) {
  const SupersingularReport& r = row.rep;
  auto put = [&](const char* key, const std::string& value) {
    if (json_row) (*json_row)[key] = value;
    if (csv_row) {
      if (!csv_row->empty()) *csv_row += ",";
      *csv_row += value;
    }
  };
  put("q", std::to_string(r.q));
  put("ell", std::to_string(r.ell));
  put("n", std::to_string(r.n));
  put("e", std::to_string(r.e));
  put("branch", to_string(r.branch));
  put("w_n", std::to_string(r.w_n));
  put("epsilon", std::to_string(r.epsilon));
  put("delta", rational_to_string(r.delta));
  put("general", rational_to_string(row.general));
  put("oracle", row.oracle ? rational_to_string(*row.oracle) : "");
  put("match", bool_str(row.match));
  if (printed_epsilon) {
    put("paper_epsilon", std::to_string(r.printed_epsilon));
    put("paper_delta", rational_to_string(r.printed_delta));
    put("paper_differs", bool_str(r.printed_differs));
    put("paper_integral", bool_str(r.printed_integral));
  }
}

}  // namespace

std::string supersingular_csv(const std::vector<SupersingularRow>& rows, bool printed_epsilon) {
  std::string out = "q,ell,n,e,branch,w_n,epsilon,delta,general,oracle,match";
  if (printed_epsilon) out += ",paper_epsilon,paper_delta,paper_differs,paper_integral";
  out += "\n";
  for (const SupersingularRow& row : rows) {
    std::string line;
    supersingular_row_columns(row, printed_epsilon, nullptr, &line);
    out += line + "\n";
  }
  return out;
}

std::string supersingular_json(const std::vector<SupersingularRow>& rows, bool printed_epsilon) {
  ordered_json arr = ordered_json::array();
  for (const SupersingularRow& row : rows) {
    ordered_json j;
    supersingular_row_columns(row, printed_epsilon, &j, nullptr);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string oracle_csv_header() { return "q,d,per_count,delta_num,delta_den,permutation\n"; }

std::string oracle_csv_row(std::int64_t q, std::int64_t d, std::int64_t per_count,
                           const Rational& delta, bool permutation) {
  return std::to_string(q) + "," + std::to_string(d) + "," + std::to_string(per_count) + "," +
         boost::multiprecision::numerator(delta).str() + "," +
         boost::multiprecision::denominator(delta).str() + "," + bool_str(permutation) + "\n";
}

std::string oracle_json(std::int64_t q, std::int64_t d, std::int64_t per_count,
                        const Rational& delta, bool permutation) {
  ordered_json j;
  j["q"] = q;
  j["d"] = d;
  j["per_count"] = per_count;
  j["delta"] = rational_json(delta);
  j["permutation"] = permutation;
  return j.dump(2) + "\n";
}

}  // namespace lattes
