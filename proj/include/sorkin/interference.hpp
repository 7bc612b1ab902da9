#pragma once

// Sorkin's interference hierarchy over any ProbabilityTheory.
//
// Every term is built from
//
//     J(S) = mu(f | sum_{i in S} e_i) * mu(sum_{i in S} e_i),     J({}) = 0,
//
// the probability that a first measurement of the combined event succeeds and
// a second one then yields f. With it
//
//     I2 = J(12) - J(1) - J(2)
//     I3 = J(123) - J(12) - J(13) - J(23) + J(1) + J(2) + J(3).
//
// I2 = 0 characterizes classical theories, I3 = 0 holds in Hilbert-space
// quantum theory and in the exceptional Jordan algebra; I3 != 0 is beyond
// quantum.

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sorkin/core.hpp"

namespace sorkin {

/// J(S). When mu(sum S) <= tolerance the value is 0: the factor mu(sum S)
/// vanishes, so conditioning is never invoked there.
template <ProbabilityTheory T>
double j_value(const T& theory, const typename T::State& mu, const typename T::Event& f,
               std::span<const typename T::Event> subset, double tolerance = kDefaultTolerance) {
  require_valid(theory, f);
  if (subset.empty()) return 0.0;
  const auto joint = theory.sum(subset);
  const double p = theory.probability(mu, joint);
  if (p <= tolerance) return 0.0;
  return theory.conditional(mu, f, joint) * p;
}

template <ProbabilityTheory T>
double i2(const T& theory, const typename T::State& mu, const typename T::Event& f,
          const typename T::Event& e1, const typename T::Event& e2,
          double tolerance = kDefaultTolerance) {
  using Event = typename T::Event;
  const std::array<Event, 2> both{e1, e2};
  require_pairwise_orthogonal(theory, std::span<const Event>(both));
  return j_value(theory, mu, f, std::span<const Event>(both), tolerance) -
         j_value(theory, mu, f, std::span<const Event>(&e1, 1), tolerance) -
         j_value(theory, mu, f, std::span<const Event>(&e2, 1), tolerance);
}

template <ProbabilityTheory T>
double i3(const T& theory, const typename T::State& mu, const typename T::Event& f,
          const typename T::Event& e1, const typename T::Event& e2, const typename T::Event& e3,
          double tolerance = kDefaultTolerance) {
  using Event = typename T::Event;
  const std::array<Event, 3> all{e1, e2, e3};
  require_pairwise_orthogonal(theory, std::span<const Event>(all));
  auto j = [&](std::initializer_list<const Event*> members) {
    std::vector<Event> s;
    s.reserve(members.size());
    for (const Event* e : members) s.push_back(*e);
    return j_value(theory, mu, f, std::span<const Event>(s), tolerance);
  };
  return j({&e1, &e2, &e3}) - j({&e1, &e2}) - j({&e1, &e3}) - j({&e2, &e3}) + j({&e1}) +
         j({&e2}) + j({&e3});
}

/// The three-event interference minus the three pair interferences:
///     [J(123) - J(1) - J(2) - J(3)] - [I2(1,2) + I2(1,3) + I2(2,3)].
/// Algebraically identical to i3; evaluated along this separate route.
template <ProbabilityTheory T>
double i3_via_pairs(const T& theory, const typename T::State& mu, const typename T::Event& f,
                    const typename T::Event& e1, const typename T::Event& e2,
                    const typename T::Event& e3, double tolerance = kDefaultTolerance) {
  using Event = typename T::Event;
  const std::array<Event, 3> all{e1, e2, e3};
  require_pairwise_orthogonal(theory, std::span<const Event>(all));
  const double triple = j_value(theory, mu, f, std::span<const Event>(all), tolerance) -
                        j_value(theory, mu, f, std::span<const Event>(&e1, 1), tolerance) -
                        j_value(theory, mu, f, std::span<const Event>(&e2, 1), tolerance) -
                        j_value(theory, mu, f, std::span<const Event>(&e3, 1), tolerance);
  const double pairs = i2(theory, mu, f, e1, e2, tolerance) + i2(theory, mu, f, e1, e3, tolerance) +
                       i2(theory, mu, f, e2, e3, tolerance);
  return triple - pairs;
}

// ---------------------------------------------------------------------------
// Campaigns

struct Thresholds {
  double zero = 1e-8;
  double significance = 1e-2;

  /// kInvalidArgument unless 0 <= zero < significance.
  void validate() const;
};

enum class Verdict {
  kNoInterference,
  kSecondOrderOnly,
  kThirdOrder,
  /// Some maximum falls between the zero and significance thresholds.
  kInconclusive,
};

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

/// max|I2|, max|I3| -> verdict.
Verdict classify(double max_abs_i2, double max_abs_i3, const Thresholds& thresholds);

inline constexpr std::size_t kHistogramBins = 64;
inline constexpr double kI2HistogramBound = 1.0;
inline constexpr double kI3HistogramBound = 4.0;

/// Uniform bins over [-bound, bound]; values outside land in the edge bins.
std::array<std::uint64_t, kHistogramBins> histogram(std::span<const double> values, double bound);

struct InterferenceReport {
  std::string theory;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  Thresholds thresholds;
  std::vector<double> i2;  // I2(e1, e2) per trial
  std::vector<double> i3;
  /// |i3 - i3_via_pairs| per trial.
  std::vector<double> pair_identity_residual;
  double max_abs_i2 = 0.0;
  double max_abs_i3 = 0.0;
  double max_pair_identity_residual = 0.0;
  double fraction_i2_significant = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  double duration_ms = 0.0;
};

/// Deterministic reduction of per-trial values into a report.
InterferenceReport assemble_report(std::string theory, std::uint64_t seed,
                                   const Thresholds& thresholds, std::vector<double> i2_values,
                                   std::vector<double> i3_values, std::vector<double> identity,
                                   double duration_ms);

/// Report fields except timing, with sorted keys.
nlohmann::json report_to_json(const InterferenceReport& report);

template <ProbabilityTheory T>
struct Sample {
  typename T::State state;
  typename T::Event f;
  std::array<typename T::Event, 3> triple;
};

template <ProbabilityTheory T>
using Sampler = std::function<Sample<T>(Rng&)>;

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 means
/// hardware concurrency). The exception from the lowest failing index is
/// rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

/// Draws `trials` samples, trial i from trial_rng(seed, i), evaluates I2, I3
/// and the pair identity on each, and classifies the theory.
template <ProbabilityTheory T>
InterferenceReport classify_theory(const T& theory, const Sampler<T>& sampler,
                                   std::uint64_t trials, std::uint64_t seed,
                                   const Thresholds& thresholds = {}, unsigned threads = 0) {
  thresholds.validate();
  if (trials == 0) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  std::vector<double> v2(trials), v3(trials), vid(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = trial_rng(seed, i);
    const Sample<T> s = sampler(rng);
    const auto& [e1, e2, e3] = s.triple;
    v2[i] = i2(theory, s.state, s.f, e1, e2);
    v3[i] = i3(theory, s.state, s.f, e1, e2, e3);
    vid[i] = std::abs(v3[i] - i3_via_pairs(theory, s.state, s.f, e1, e2, e3));
  });

  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return assemble_report(std::string(theory.name()), seed, thresholds, std::move(v2),
                         std::move(v3), std::move(vid), ms);
}

}  // namespace sorkin
