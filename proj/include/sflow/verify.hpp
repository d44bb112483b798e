#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sflow/accel.hpp"

namespace sflow {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
};

/// Every pair with coordinates up to kmax (plus the infinite cases) lies in exactly one region.
SuiteReport verify_regions(std::int64_t kmax = 2000, Boundary b = Boundary::kAdjusted);

/// First-return structure over gaps 3..gap_max.
SuiteReport verify_first_return(std::int64_t gap_max, Boundary b = Boundary::kAdjusted);

/// Step-length bounds over R3 pairs with k+ <= kplus_max, and the window-sum estimate on
/// `samples` random R3 pairs with k- >= 1000.
SuiteReport verify_step_lemma(std::int64_t kplus_max, int samples, std::uint64_t seed,
                              Boundary b = Boundary::kAdjusted);

struct CodecSuiteOptions {
  std::int64_t gap_max = 100000;
  std::int64_t position_gap_max = 10000;
  std::int64_t equivariance_gap_max = 100;
  Boundary boundary = Boundary::kAdjusted;
  bool injectivity_only = false;  // stop after roundtrip and distinctness
};

/// Block-code roundtrip, distinctness, position recovery and shift equivariance.
SuiteReport verify_codec(const CodecSuiteOptions& options);

/// N(2m) = 2^m for both fiber SFTs, m <= m_max.
SuiteReport verify_fiber(int m_max = 20);

/// Value at the singular point, positivity, and the continuity probe trend.
SuiteReport verify_roof_prime(Boundary b = Boundary::kAdjusted);

/// Gaps whose orbit has no R3 visit under the given convention.
std::vector<std::int64_t> boundary_anomalies(std::int64_t gap_max, Boundary b);

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

struct SuiteOptions {
  std::int64_t gap_max = 100000;
  Boundary boundary = Boundary::kAdjusted;
  std::uint64_t seed = 1;
};

SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace sflow
