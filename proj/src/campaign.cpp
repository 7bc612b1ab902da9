#include "sorkin/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "sorkin/albert.hpp"
#include "sorkin/classical.hpp"
#include "sorkin/quantum.hpp"
#include "sorkin/table_theory.hpp"

namespace sorkin {

std::string_view to_string(TheoryKind kind) {
  switch (kind) {
    case TheoryKind::kClassical: return "classical";
    case TheoryKind::kQuantum: return "quantum";
    case TheoryKind::kAlbert: return "albert";
    case TheoryKind::kSynthetic: return "synthetic";
  }
  return "classical";
}

TheoryKind theory_from_string(std::string_view name) {
  for (TheoryKind k : {TheoryKind::kClassical, TheoryKind::kQuantum, TheoryKind::kAlbert,
                       TheoryKind::kSynthetic}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown theory '" + std::string(name) +
                  "' (expected classical, quantum, albert or synthetic)");
}

Verdict expected_verdict(TheoryKind kind) {
  switch (kind) {
    case TheoryKind::kClassical: return Verdict::kNoInterference;
    case TheoryKind::kQuantum:
    case TheoryKind::kAlbert: return Verdict::kSecondOrderOnly;
    case TheoryKind::kSynthetic: return Verdict::kThirdOrder;
  }
  return Verdict::kInconclusive;
}

void CampaignConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (theory == TheoryKind::kQuantum && (dimension < 3 || dimension > quantum::kMaxDimension)) {
    throw Error(ErrorCode::kInvalidArgument,
                "quantum dimension must be in [3, 16], got " + std::to_string(dimension));
  }
  if (theory == TheoryKind::kClassical &&
      (outcomes < 3 || outcomes > static_cast<int>(classical::kMaxOutcomes))) {
    throw Error(ErrorCode::kInvalidArgument,
                "classical outcome count must be in [3, 64], got " + std::to_string(outcomes));
  }
  thresholds.validate();
}

nlohmann::json CampaignConfig::to_json() const {
  nlohmann::json j;
  j["theory"] = to_string(theory);
  j["trials"] = trials;
  j["seed"] = seed;
  j["thresholds"] = {{"zero", thresholds.zero}, {"significance", thresholds.significance}};
  if (theory == TheoryKind::kQuantum) {
    j["dimension"] = dimension;
    j["rank_one"] = rank_one;
  }
  if (theory == TheoryKind::kClassical) j["outcomes"] = outcomes;
  return j;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["tool"] = tool;
  j["version"] = version;
  j["config"] = config;
  j["seed"] = seed;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["duration_ms"] = duration_ms;
  j["input_digests"] = input_digests;
  return j;
}

namespace {

InterferenceReport dispatch(const CampaignConfig& c) {
  switch (c.theory) {
    case TheoryKind::kClassical: {
      const classical::Theory theory(static_cast<unsigned>(c.outcomes));
      Sampler<classical::Theory> sampler = [&theory](Rng& rng) {
        auto inst = classical::random_instance(theory, rng);
        return Sample<classical::Theory>{std::move(inst.measure), inst.f, inst.triple};
      };
      return classify_theory(theory, sampler, c.trials, c.seed, c.thresholds, c.threads);
    }
    case TheoryKind::kQuantum: {
      const quantum::Theory theory(c.dimension);
      quantum::SamplerOptions options;
      options.dimension = c.dimension;
      options.rank_one_events = c.rank_one;
      Sampler<quantum::Theory> sampler = [options](Rng& rng) {
        auto inst = quantum::random_instance(options, rng);
        return Sample<quantum::Theory>{std::move(inst.rho), std::move(inst.f),
                                       std::move(inst.triple)};
      };
      return classify_theory(theory, sampler, c.trials, c.seed, c.thresholds, c.threads);
    }
    case TheoryKind::kAlbert: {
      const albert::Theory theory;
      Sampler<albert::Theory> sampler = [](Rng& rng) {
        auto inst = albert::random_instance(rng);
        return Sample<albert::Theory>{std::move(inst.rho), std::move(inst.f),
                                      std::move(inst.triple)};
      };
      return classify_theory(theory, sampler, c.trials, c.seed, c.thresholds, c.threads);
    }
    case TheoryKind::kSynthetic: {
      const auto model = table::make_beyond_quantum_model();
      // The order of the three paths is the only random choice.
      Sampler<table::Theory> sampler = [&model](Rng& rng) {
        auto triple = model.triple;
        std::shuffle(triple.begin(), triple.end(), rng);
        return Sample<table::Theory>{model.state, model.f, triple};
      };
      return classify_theory(model.theory, sampler, c.trials, c.seed, c.thresholds, c.threads);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown theory");
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config) {
  config.validate();
  CampaignResult result;
  result.manifest.config = config.to_json();
  result.manifest.seed = config.seed;
  result.manifest.started_at = utc_timestamp();
  result.report = dispatch(config);
  result.manifest.finished_at = utc_timestamp();
  result.manifest.duration_ms = result.report.duration_ms;
  result.expected = expected_verdict(config.theory);
  return result;
}

nlohmann::json campaign_json(const CampaignResult& result, bool include_manifest) {
  nlohmann::json j = report_to_json(result.report);
  j["expected_verdict"] = to_string(result.expected);
  if (result.manifest.config.contains("dimension")) j["dimension"] = result.manifest.config["dimension"];
  if (include_manifest) j["manifest"] = result.manifest.to_json();
  return j;
}

std::string campaign_json_text(const CampaignResult& result, bool include_manifest) {
  return campaign_json(result, include_manifest).dump(2) + "\n";
}

unsigned threads_from_environment() {
  const char* raw = std::getenv("SORKIN_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(raw, &end, 10);
  if (end == raw || *end != '\0' || v > 1024) return 0;
  return static_cast<unsigned>(v);
}

std::string content_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  std::ostringstream out;
  out << buf << '.' << std::setw(3) << std::setfill('0') << ms << 'Z';
  return out.str();
}

}  // namespace sorkin
