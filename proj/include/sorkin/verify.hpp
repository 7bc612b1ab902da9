#pragma once

// Fixed-seed verification suites, one per module, run by `sorkin verify`.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sorkin/octonion.hpp"

namespace sorkin {

struct SuiteResult {
  std::string name;
  bool passed = false;
  /// Largest observed deviation from the suite's identities.
  double worst_residual = 0.0;
  std::string detail;
  double duration_ms = 0.0;
};

struct VerifyOptions {
  /// Suite names to run; empty runs all.
  std::vector<std::string> only;
  /// Replaces the octonion basis table in the octonion suite (mutation testing).
  std::optional<OctonionTable> octonion_table;
  std::uint64_t seed = 20240611;
  unsigned threads = 0;
};

/// core, classical, quantum, octonion, jordan, spectral, assumptions, albert,
/// classification, slits.
const std::vector<std::string_view>& suite_names();

/// kInvalidArgument for an unknown name in `options.only`.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

/// One aligned row per suite plus an overall line.
std::string format_summary(const std::vector<SuiteResult>& results);

}  // namespace sorkin
