#include "lattes/verify.hpp"

#include <memory>

#include "lattes/density.hpp"
#include "lattes/lattes_map.hpp"
#include "lattes/parallel.hpp"
#include "lattes/text.hpp"

namespace lattes {

std::vector<FieldPtr> prime_power_fields_up_to(std::int64_t max_q) {
  std::vector<FieldPtr> out;
  for (std::int64_t q = 2; q <= max_q; ++q) {
    std::vector<std::int64_t> ps = distinct_prime_factors(q);
    if (ps.size() != 1) continue;
    const std::int64_t p = ps[0];
    int k = 0;
    std::int64_t v = q;
    while (v > 1) {
      v /= p;
      ++k;
    }
    std::int64_t check = 1;
    for (int i = 0; i < k; ++i) check *= p;
    if (check == q) out.push_back(make_field(p, k));
  }
  return out;
}

namespace {

struct CurveOutcome {
  bool singular = false;
  std::int64_t density_checks = 0;
  std::int64_t permutation_checks = 0;
  std::int64_t gap_checks = 0;
  std::int64_t per_count_checks = 0;
  std::int64_t twist_checks = 0;
  std::optional<SweepFailure> failure;
};

}  // namespace

SweepResult verify_sweep(const SweepOptions& options) {
  SweepResult total;
  bool fault_pending = options.inject_fault;
  for (const FieldPtr& field : options.fields) {
    const std::int64_t q = field->order();
    const std::int64_t p = field->characteristic();
    std::vector<std::int64_t> ds;
    for (std::int64_t d = options.d_min; d <= options.d_max; ++d)
      if (d != 0 && d % p != 0) ds.push_back(d);

    std::shared_ptr<const QuadraticSolver> ext_solver;
    if (options.check_density && !ds.empty())
      ext_solver = std::make_shared<QuadraticSolver>(quadratic_ext(field));

    const std::int64_t tuple_count = q * q * q * q * q;
    std::vector<CurveOutcome> outcomes(static_cast<std::size_t>(tuple_count));
    // Fault injection hits the first smooth curve's first multiplier, so it
    // must stay deterministic under any thread count.
    std::int64_t fault_tuple = -1;
    if (fault_pending) {
      for (std::int64_t idx = 0; idx < tuple_count; ++idx)
        if (curve_from_tuple_index(field, idx)) {
          fault_tuple = idx;
          break;
        }
    }

    parallel_for(tuple_count, options.jobs, [&](std::int64_t idx) {
      CurveOutcome& out = outcomes[static_cast<std::size_t>(idx)];
      std::optional<WeierstrassCurve> curve = curve_from_tuple_index(field, idx);
      if (!curve) {
        out.singular = true;
        return;
      }
      TraceData td = trace(*curve);
      auto fail = [&](std::int64_t d, const std::string& what, const std::string& detail) {
        if (!out.failure)
          out.failure = SweepFailure{field_to_string(field), curve_to_string(*curve), d, what,
                                     detail};
      };
      if (options.check_twist) {
        WeierstrassCurve tw = quadratic_twist(*curve);  // count-certified inside
        TraceData tw_td = trace(tw);
        ++out.twist_checks;
        if (tw_td.tau != -td.tau)
          fail(0, "twist trace", "expected " + std::to_string(-td.tau) + ", got " +
                                     std::to_string(tw_td.tau));
      }
      if (options.check_density && !ds.empty()) {
        std::vector<FunctionalGraph> graphs = lattes_tables(*curve, ds, ext_solver);
        for (std::size_t i = 0; i < ds.size(); ++i) {
          const std::int64_t d = ds[i];
          FunctionalGraph& g = graphs[i];
          if (idx == fault_tuple && i == 0) {
            g.succ[0] = g.succ[0] == 0 ? 1 : 0;
            g = graph_from_successors(g.q, std::move(g.succ));
          }
          DensityReport rep = delta_tower(td, d, 1);
          Rational oracle = oracle_density(g);
          ++out.density_checks;
          if (rep.delta != oracle)
            fail(d, "density mismatch",
                 "formula " + rational_to_string(rep.delta) + ", table " +
                     rational_to_string(oracle));
          ++out.permutation_checks;
          if (rep.permutation != is_permutation(g))
            fail(d, "permutation criterion mismatch",
                 std::string("formula ") + (rep.permutation ? "true" : "false") + ", table " +
                     (is_permutation(g) ? "true" : "false"));
          ++out.gap_checks;
          if (!rep.gap_ok) fail(d, "gap bound failed", rational_to_string(rep.delta));
          ++out.per_count_checks;
          if (rep.per_count != static_cast<std::int64_t>(periodic_set(g).size()))
            fail(d, "periodic count mismatch",
                 rep.per_count.str() + " vs " + std::to_string(periodic_set(g).size()));
        }
      }
    });

    fault_pending = fault_pending && fault_tuple < 0;
    for (const CurveOutcome& out : outcomes) {
      if (out.singular) {
        ++total.singular_skipped;
        continue;
      }
      ++total.curves_checked;
      total.density_checks += out.density_checks;
      total.permutation_checks += out.permutation_checks;
      total.gap_checks += out.gap_checks;
      total.per_count_checks += out.per_count_checks;
      total.twist_checks += out.twist_checks;
      if (out.failure && !total.failure) total.failure = out.failure;
    }
    if (total.failure) break;
  }
  return total;
}

}  // namespace lattes
