#pragma once

// Theory-agnostic event/state contract shared by every probability theory.
//
// A theory is any type modelling ProbabilityTheory: it owns an Event and a
// State value type and answers validity, orthogonality, orthogonal sums,
// probabilities mu(e) and conditional probabilities mu(f | e). Events and
// states are immutable values; theory instances hold no mutable state and may
// be shared freely between threads.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sorkin {

enum class ErrorCode {
  kInvalidArgument = 1,
  kContractViolation,
  kOrthogonality,
  kConditioning,
  kDimensionMismatch,
  kNumeric,
  kSampler,
  kConfig,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Default tolerance for identities that hold exactly in exact arithmetic.
inline constexpr double kDefaultTolerance = 1e-10;

template <class T>
concept ProbabilityTheory =
    requires(const T& theory, const typename T::Event& e,
             const typename T::State& s, std::span<const typename T::Event> events) {
      { theory.name() } -> std::convertible_to<std::string_view>;
      { theory.unit() } -> std::same_as<typename T::Event>;
      { theory.zero() } -> std::same_as<typename T::Event>;
      { theory.is_valid(e) } -> std::same_as<bool>;
      { theory.is_valid_state(s) } -> std::same_as<bool>;
      { theory.are_orthogonal(e, e) } -> std::same_as<bool>;
      { theory.sum(events) } -> std::same_as<typename T::Event>;
      { theory.probability(s, e) } -> std::same_as<double>;
      { theory.conditional(s, e, e) } -> std::same_as<double>;
      { theory.describe(e) } -> std::same_as<std::string>;
    };

template <ProbabilityTheory T>
void require_valid(const T& theory, const typename T::Event& e) {
  if (!theory.is_valid(e)) {
    throw Error(ErrorCode::kContractViolation,
                std::string(theory.name()) + ": event not issued by this theory: " +
                    theory.describe(e));
  }
}

template <ProbabilityTheory T>
void require_pairwise_orthogonal(const T& theory,
                                 std::span<const typename T::Event> events) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    require_valid(theory, events[i]);
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      if (!theory.are_orthogonal(events[i], events[j])) {
        throw Error(ErrorCode::kOrthogonality,
                    std::string(theory.name()) + ": events " + std::to_string(i) +
                        " and " + std::to_string(j) + " are not orthogonal");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Oracle validation

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  double worst_residual = 0.0;
  std::size_t checks = 0;
};

struct ValidationReport {
  std::vector<AxiomCheck> axioms;
  bool all_passed() const;
  const AxiomCheck& find(std::string_view axiom) const;
};

/// Checks the state axioms of `theory` for state `mu` on the sampled events:
/// unit normalization, additivity on every orthogonal pair in the sample,
/// conditional self-certainty and range bounds of probabilities and
/// conditionals.
template <ProbabilityTheory T>
ValidationReport validate_oracle(const T& theory, const typename T::State& mu,
                                 std::span<const typename T::Event> sample,
                                 double tolerance = kDefaultTolerance) {
  using Event = typename T::Event;
  for (const Event& e : sample) require_valid(theory, e);

  auto bump = [tolerance](AxiomCheck& check, double residual) {
    ++check.checks;
    if (residual > check.worst_residual) check.worst_residual = residual;
    if (residual > tolerance) check.passed = false;
  };
  auto out_of_unit = [](double v) {
    if (v < 0.0) return -v;
    if (v > 1.0) return v - 1.0;
    return 0.0;
  };

  AxiomCheck normalization{"unit_normalization"};
  bump(normalization, std::abs(theory.probability(mu, theory.unit()) - 1.0));
  bump(normalization, std::abs(theory.probability(mu, theory.zero())));

  AxiomCheck additivity{"additivity"};
  AxiomCheck certainty{"conditional_self_certainty"};
  AxiomCheck range{"range_bounds"};

  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double pi = theory.probability(mu, sample[i]);
    bump(range, out_of_unit(pi));
    if (pi > tolerance) {
      bump(certainty, std::abs(theory.conditional(mu, sample[i], sample[i]) - 1.0));
      for (const Event& f : sample) bump(range, out_of_unit(theory.conditional(mu, f, sample[i])));
    }
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      if (!theory.are_orthogonal(sample[i], sample[j])) continue;
      const Event pair[2] = {sample[i], sample[j]};
      const double joint = theory.probability(mu, theory.sum(std::span<const Event>(pair)));
      bump(additivity, std::abs(joint - pi - theory.probability(mu, sample[j])));
    }
  }
  return ValidationReport{{normalization, additivity, certainty, range}};
}

// ---------------------------------------------------------------------------
// Random streams

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

/// Independent stream for trial `index` of a run seeded with `seed`; the
/// result depends only on (seed, index), never on scheduling.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(mix64(mix64(seed) ^ mix64(index + 0x5851f42d4c957f2dULL)));
}

}  // namespace sorkin
