#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lattes/curve.hpp"
#include "lattes/ffield.hpp"

namespace lattes {

/// Cross-checks run per (curve, d) over whole curve families:
/// formula density == tabulated density, permutation criterion == table
/// bijectivity, the gap bound, the periodic-count integrality, and the
/// twist point-count identity per curve.
struct SweepOptions {
  std::vector<FieldPtr> fields;
  std::int64_t d_min = 2;
  std::int64_t d_max = 12;
  bool check_density = true;
  bool check_twist = true;
  int jobs = 1;
  /// Negative control: corrupt one successor entry of the first tabulated
  /// graph so the sweep must report a mismatch.
  bool inject_fault = false;
};

struct SweepFailure {
  std::string field;
  std::string curve;  // curve spec text
  std::int64_t d = 0;
  std::string what;
  std::string detail;
};

struct SweepResult {
  std::int64_t curves_checked = 0;
  std::int64_t singular_skipped = 0;
  std::int64_t density_checks = 0;
  std::int64_t permutation_checks = 0;
  std::int64_t gap_checks = 0;
  std::int64_t per_count_checks = 0;
  std::int64_t twist_checks = 0;
  std::optional<SweepFailure> failure;

  std::int64_t assertions() const {
    return density_checks + permutation_checks + gap_checks + per_count_checks + twist_checks;
  }
};

SweepResult verify_sweep(const SweepOptions& options);

/// All prime-power field orders up to the bound, ascending, as field specs.
std::vector<FieldPtr> prime_power_fields_up_to(std::int64_t max_q);

}  // namespace lattes
