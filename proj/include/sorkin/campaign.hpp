#pragma once

// Reproducible classification campaigns: resolve a config into a theory and a
// sampler, run classify_theory, and wrap the report with a run manifest.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sorkin/interference.hpp"

namespace sorkin {

enum class TheoryKind { kClassical, kQuantum, kAlbert, kSynthetic };

std::string_view to_string(TheoryKind kind);
/// kInvalidArgument for unknown names.
TheoryKind theory_from_string(std::string_view name);

/// The class each shipped theory belongs to.
Verdict expected_verdict(TheoryKind kind);

struct CampaignConfig {
  TheoryKind theory = TheoryKind::kClassical;
  /// Hilbert-space dimension, quantum only; in [3, 16].
  int dimension = 3;
  /// Sample-space size, classical only; in [3, 64].
  int outcomes = 6;
  /// Quantum only: rank-one triples and target instead of random ranks.
  bool rank_one = false;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  Thresholds thresholds;
  /// 0 = hardware concurrency.
  unsigned threads = 0;

  void validate() const;
  nlohmann::json to_json() const;
};

struct RunManifest {
  std::string tool = "sorkin";
  std::string version = SORKIN_VERSION;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  double duration_ms = 0.0;
  std::map<std::string, std::string> input_digests;

  nlohmann::json to_json() const;
};

struct CampaignResult {
  InterferenceReport report;
  RunManifest manifest;
  Verdict expected = Verdict::kInconclusive;

  bool verdict_matches() const { return report.verdict == expected; }
};

CampaignResult run_campaign(const CampaignConfig& config);

/// Report JSON; the manifest block carries every timestamp and the wall-clock
/// duration so that everything outside it is a pure function of the config.
nlohmann::json campaign_json(const CampaignResult& result, bool include_manifest = true);
/// Pretty-printed with sorted keys and a trailing newline.
std::string campaign_json_text(const CampaignResult& result, bool include_manifest = true);

/// Thread count from SORKIN_THREADS, or 0 when unset or unparsable.
unsigned threads_from_environment();

/// FNV-1a 64-bit digest rendered as "fnv1a64:<16 hex digits>".
std::string content_digest(std::string_view bytes);

/// Current UTC time as ISO-8601 with millisecond precision.
std::string utc_timestamp();

}  // namespace sorkin
