#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lattes/density.hpp"
#include "lattes/lattes_map.hpp"
#include "lattes/parallel.hpp"
#include "lattes/text.hpp"
#include "lattes/verify.hpp"

namespace {

using namespace lattes;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalidInput = 2,
  kMismatch = 3,
  kStabilizationCap = 4,
};

struct Common {
  std::string format = "table";
};

void add_format_flag(CLI::App* cmd, Common* common) {
  cmd->add_option("--format", common->format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

void print_density_table(const DensityReport& rep) {
  std::cout << "q=" << rep.q << "\n"
            << "n=" << rep.n << "\n"
            << "tau_n=" << rep.tau_n.str() << "\n"
            << "d=" << rep.d << "\n"
            << "pi_plus=" << rep.pi_plus.str() << "\n"
            << "pi_minus=" << rep.pi_minus.str() << "\n"
            << "delta=" << rational_to_string(rep.delta) << "\n"
            << "per_count=" << rep.per_count.str() << "\n"
            << "permutation=" << bool_str(rep.permutation) << "\n"
            << "gap_ok=" << bool_str(rep.gap_ok) << "\n";
}

int cmd_density(const std::string& curve_spec, std::int64_t d, int n, const Common& common) {
  WeierstrassCurve curve = parse_curve(curve_spec);
  DensityReport rep = delta_tower(trace(curve), d, n);
  if (common.format == "csv")
    std::cout << density_csv_header() << density_csv_row(rep);
  else if (common.format == "json")
    std::cout << density_json(rep);
  else
    print_density_table(rep);
  return kOk;
}

int cmd_oracle(const std::string& curve_spec, std::int64_t d, const std::string& graph_path,
               const Common& common) {
  WeierstrassCurve curve = parse_curve(curve_spec);
  LattesMap map(curve, d);
  FunctionalGraph g = lattes_table(map);
  const std::int64_t per = static_cast<std::int64_t>(periodic_set(g).size());
  const Rational delta = oracle_density(g);
  const bool perm = is_permutation(g);
  if (!graph_path.empty()) {
    std::ofstream out(graph_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + graph_path + " for writing");
    out << graph_csv(g, curve.field());
  }
  if (common.format == "csv")
    std::cout << oracle_csv_header() << oracle_csv_row(map.q(), d, per, delta, perm);
  else if (common.format == "json")
    std::cout << oracle_json(map.q(), d, per, delta, perm);
  else
    std::cout << "q=" << map.q() << "\n"
              << "d=" << d << "\n"
              << "per_count=" << per << "\n"
              << "delta=" << rational_to_string(delta) << "\n"
              << "permutation=" << bool_str(perm) << "\n";
  return kOk;
}

int cmd_verify(std::int64_t max_q, std::int64_t d_min, std::int64_t d_max, int jobs,
               bool inject_fault) {
  SweepOptions opt;
  opt.fields = prime_power_fields_up_to(max_q);
  opt.d_min = d_min;
  opt.d_max = d_max;
  opt.jobs = jobs;
  opt.inject_fault = inject_fault;
  SweepResult res = verify_sweep(opt);
  std::cout << "fields=" << opt.fields.size() << "\n"
            << "d_range=[" << d_min << "," << d_max << "]\n"
            << "curves=" << res.curves_checked << "\n"
            << "singular_skipped=" << res.singular_skipped << "\n"
            << "density_checks=" << res.density_checks << "\n"
            << "permutation_checks=" << res.permutation_checks << "\n"
            << "gap_checks=" << res.gap_checks << "\n"
            << "per_count_checks=" << res.per_count_checks << "\n"
            << "twist_checks=" << res.twist_checks << "\n"
            << "assertions=" << res.assertions() << "\n";
  if (res.failure) {
    std::cout << "result=mismatch\n"
              << "counterexample_field=" << res.failure->field << "\n"
              << "counterexample_curve=" << res.failure->curve << "\n"
              << "counterexample_d=" << res.failure->d << "\n"
              << "counterexample_what=" << res.failure->what << "\n"
              << "counterexample_detail=" << res.failure->detail << "\n";
    return kMismatch;
  }
  std::cout << "result=ok\n";
  return kOk;
}

int cmd_tower(const std::string& curve_spec, std::int64_t d, int n, int m_max, int n_cap,
              const Common& common) {
  WeierstrassCurve curve = parse_curve(curve_spec);
  TraceData td = trace(curve);
  TowerReport rep = tower_limit(td, d, n, m_max, n_cap);
  if (common.format == "csv") {
    std::cout << tower_csv(rep);
  } else if (common.format == "json") {
    std::cout << tower_json(rep);
  } else {
    std::cout << "q=" << td.q << "\n"
              << "tau=" << td.tau << "\n"
              << "d=" << d << "\n"
              << "n=" << rep.n << "\n"
              << "c=" << rep.c << "\n"
              << "n_emp=" << rep.n_emp << "\n"
              << "modulus=" << rep.modulus << "\n"
              << "stabilized=" << bool_str(rep.stabilized) << "\n"
              << "limit=" << rational_to_string(rep.limit) << "\n";
    for (const TowerSample& s : rep.samples)
      std::cout << "m=" << s.m << " delta=" << rational_to_string(s.delta)
                << " gap_ok=" << bool_str(s.gap_ok) << " vals_match=" << bool_str(s.vals_match)
                << "\n";
  }
  return rep.stabilized ? kOk : kStabilizationCap;
}

int cmd_supersingular(std::int64_t q, std::int64_t ell, int n_max, bool paper_epsilon,
                      const Common& common) {
  std::vector<std::int64_t> qf = distinct_prime_factors(q);
  if (qf.size() != 1) throw std::invalid_argument("q must be a prime power");
  FieldPtr field = [&] {
    std::int64_t v = q;
    int k = 0;
    while (v > 1) {
      v /= qf[0];
      ++k;
    }
    return make_field(qf[0], k);
  }();
  std::optional<WeierstrassCurve> curve = find_trace_zero_curve(field);
  if (!curve) {
    std::cerr << "error: no trace-zero curve over GF(" << q << ")\n";
    return kInvalidInput;
  }
  const TraceData td{q, 0};
  const std::int64_t oracle_cap = std::min<std::int64_t>(max_enumerable_order(), 1 << 14);
  std::vector<SupersingularRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    SupersingularRow row;
    row.rep = delta_supersingular(q, ell, n);
    row.general = delta_formula(row.rep.q_n, trace_sequence(td, n), ell);
    // Brute force when the extension is enumerable: q prime for any n, any
    // q for n <= 2 (quadratic tower).
    if (row.rep.q_n <= oracle_cap && (field->degree() == 1 || n <= 2)) {
      FieldPtr ext = n == 1 ? field
                            : (field->degree() == 1 ? make_field(q, n) : quadratic_ext(field));
      LattesMap map(base_change(*curve, ext), ell);
      row.oracle = oracle_density(map);
    }
    row.match = row.rep.delta == row.general && (!row.oracle || *row.oracle == row.rep.delta);
    rows.push_back(std::move(row));
  }
  if (common.format == "csv") {
    std::cout << supersingular_csv(rows, paper_epsilon);
  } else if (common.format == "json") {
    std::cout << supersingular_json(rows, paper_epsilon);
  } else {
    std::cout << "curve=" << curve_to_string(*curve) << "\n";
    for (const SupersingularRow& row : rows) {
      std::cout << "n=" << row.rep.n << " branch=" << to_string(row.rep.branch)
                << " e=" << row.rep.e << " w=" << row.rep.w_n << " eps=" << row.rep.epsilon
                << " delta=" << rational_to_string(row.rep.delta)
                << " general=" << rational_to_string(row.general) << " oracle="
                << (row.oracle ? rational_to_string(*row.oracle) : std::string("-"))
                << " match=" << bool_str(row.match);
      if (paper_epsilon)
        std::cout << " paper_eps=" << row.rep.printed_epsilon
                  << " paper_delta=" << rational_to_string(row.rep.printed_delta)
                  << " paper_differs=" << bool_str(row.rep.printed_differs)
                  << " paper_integral=" << bool_str(row.rep.printed_integral);
      std::cout << "\n";
    }
  }
  bool all_match = true;
  for (const SupersingularRow& row : rows) all_match = all_match && row.match;
  return all_match ? kOk : kMismatch;
}

int cmd_scan(const std::string& field_spec, std::int64_t d, int jobs) {
  FieldPtr field = parse_field(field_spec);
  const std::int64_t q = field->order();
  if (q > 512)
    throw std::invalid_argument("scan sweeps all q^5 coefficient tuples; q is capped at 512");
  if (d == 0 || d % field->characteristic() == 0)
    throw std::invalid_argument("multiplier d must be nonzero and coprime to the characteristic");
  auto ext_solver = std::make_shared<QuadraticSolver>(quadratic_ext(field));
  const std::int64_t total = q * q * q * q * q;
  std::vector<std::string> rows(static_cast<std::size_t>(total));
  parallel_for(total, jobs, [&](std::int64_t idx) {
    std::optional<WeierstrassCurve> curve = curve_from_tuple_index(field, idx);
    if (!curve) return;
    TraceData td = trace(*curve);
    DensityReport rep = delta_tower(td, d, 1);
    LattesMap map(*curve, d, ext_solver);
    FunctionalGraph g = lattes_table(map);
    Rational oracle = oracle_density(g);
    rows[static_cast<std::size_t>(idx)] =
        field_to_string(field) + "," + element_to_string(curve->a1()) + "," +
        element_to_string(curve->a2()) + "," + element_to_string(curve->a3()) + "," +
        element_to_string(curve->a4()) + "," + element_to_string(curve->a6()) + "," +
        std::to_string(td.tau) + "," + boost::multiprecision::numerator(rep.delta).str() + "," +
        boost::multiprecision::denominator(rep.delta).str() + "," +
        boost::multiprecision::numerator(oracle).str() + "," +
        boost::multiprecision::denominator(oracle).str() + "," + bool_str(is_permutation(g)) +
        "\n";
  });
  std::cout << "field,a1,a2,a3,a4,a6,tau,delta_num,delta_den,oracle_num,oracle_den,permutation\n";
  std::int64_t singular = 0;
  for (const std::string& row : rows) {
    if (row.empty())
      ++singular;
    else
      std::cout << row;
  }
  std::cout << "# singular_skipped=" << singular << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact periodic-point densities of Lattès maps on P^1 over finite fields"};
  app.require_subcommand(1);

  Common common;
  std::string curve_spec, field_spec, graph_path;
  std::int64_t d = 2, ell = 3, q = 5;
  std::int64_t max_q = 7, d_min = 2, d_max = 10;
  int n = 1, n_max = 8, m_max = 400, n_cap = 8, jobs = 1;
  bool inject_fault = false, paper_epsilon = false;

  CLI::App* density =
      app.add_subcommand("density", "Closed-form density report for one (curve, d, n)");
  density->add_option("--curve", curve_spec, "Curve spec FIELD:a1,a2,a3,a4,a6")->required();
  density->add_option("--d", d, "Multiplier d (coprime to the characteristic)")->required();
  density->add_option("--n", n, "Extension degree")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format_flag(density, &common);

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force density via the functional graph");
  oracle->add_option("--curve", curve_spec, "Curve spec FIELD:a1,a2,a3,a4,a6")->required();
  oracle->add_option("--d", d, "Multiplier d")->required();
  oracle->add_option("--emit-graph", graph_path, "Write the functional graph CSV to this path");
  add_format_flag(oracle, &common);

  CLI::App* verify =
      app.add_subcommand("verify", "Formula vs brute-force sweep over curve families");
  verify->add_option("--max-q", max_q, "Sweep all prime-power fields up to this order")
      ->capture_default_str();
  verify->add_option("--d-min", d_min, "Smallest multiplier")->capture_default_str();
  verify->add_option("--d-max", d_max, "Largest multiplier")->capture_default_str();
  verify->add_option("--jobs", jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_flag("--inject-fault", inject_fault,
                   "Corrupt one successor entry (negative control; must exit 3)");

  CLI::App* tower =
      app.add_subcommand("tower", "Empirical density stabilization along m = n (mod c*d^N)");
  tower->add_option("--curve", curve_spec, "Curve spec FIELD:a1,a2,a3,a4,a6")->required();
  tower->add_option("--d", d, "Multiplier d")->required();
  tower->add_option("--n", n, "Progression base point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tower->add_option("--m-max", m_max, "Largest sampled exponent")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tower->add_option("--n-cap", n_cap, "Largest N tried")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_format_flag(tower, &common);

  CLI::App* ss = app.add_subcommand("supersingular",
                                    "Trace-zero closed form vs general formula vs brute force");
  ss->add_option("--q", q, "Field order (a trace-zero curve is located by scan)")->required();
  ss->add_option("--ell", ell, "Odd prime multiplier")->required();
  ss->add_option("--n-max", n_max, "Report n = 1..n_max")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ss->add_flag("--paper-epsilon", paper_epsilon,
               "Also show the commonly printed sign variant and where it diverges");
  add_format_flag(ss, &common);

  CLI::App* scan = app.add_subcommand("scan", "Per-curve CSV over all smooth curves of a field");
  scan->add_option("--field", field_spec, "Field spec, e.g. 5 or 2^3")->required();
  scan->add_option("--d", d, "Multiplier d")->required();
  scan->add_option("--jobs", jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand(density)) return cmd_density(curve_spec, d, n, common);
    if (app.got_subcommand(oracle)) return cmd_oracle(curve_spec, d, graph_path, common);
    if (app.got_subcommand(verify)) return cmd_verify(max_q, d_min, d_max, jobs, inject_fault);
    if (app.got_subcommand(tower)) return cmd_tower(curve_spec, d, n, m_max, n_cap, common);
    if (app.got_subcommand(ss)) return cmd_supersingular(q, ell, n_max, paper_epsilon, common);
    if (app.got_subcommand(scan)) return cmd_scan(field_spec, d, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kUsage;
}
