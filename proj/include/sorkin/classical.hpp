#pragma once

// Finite classical probability: events are subsets of {0, ..., n-1} stored as
// bit masks, states are probability vectors, conditioning is the ratio rule.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sorkin/core.hpp"

namespace sorkin::classical {

inline constexpr unsigned kMaxOutcomes = 64;

struct EventSet {
  std::uint64_t mask = 0;
  unsigned width = 0;

  friend bool operator==(const EventSet&, const EventSet&) = default;
};

/// Probability vector over the outcomes. Invariant: entries >= 0, sum 1.
class Measure {
 public:
  /// Throws kInvalidArgument unless `p` is a probability vector within 1e-12.
  explicit Measure(std::vector<double> p);

  /// Normalizes nonnegative weights with positive total.
  static Measure from_weights(std::vector<double> w);
  static Measure uniform(unsigned n);

  std::span<const double> weights() const { return p_; }
  unsigned size() const { return static_cast<unsigned>(p_.size()); }

 private:
  std::vector<double> p_;
};

class Theory {
 public:
  using Event = EventSet;
  using State = Measure;

  explicit Theory(unsigned outcomes);

  unsigned outcomes() const { return n_; }
  std::string_view name() const { return "classical"; }

  Event unit() const;
  Event zero() const { return {0, n_}; }
  /// Event from 0-based outcome indices.
  Event event(std::initializer_list<unsigned> outcomes) const;
  Event event_from_mask(std::uint64_t mask) const;

  bool is_valid(const Event& e) const;
  bool is_valid_state(const State& s) const { return s.size() == n_; }
  bool are_orthogonal(const Event& a, const Event& b) const;
  Event sum(std::span<const Event> events) const;

  double probability(const State& mu, const Event& e) const;
  /// Ratio rule mu(f & e) / mu(e); kConditioning when mu(e) <= tolerance.
  double conditional(const State& mu, const Event& f, const Event& e) const;

  std::string describe(const Event& e) const;

 private:
  void check(const State& mu, const Event& e) const;

  unsigned n_;
};

struct Instance {
  Measure measure;
  EventSet f;
  std::array<EventSet, 3> triple;
};

/// Random measure (normalized unit exponentials), a random partition of a
/// random subset into three nonempty disjoint events, and a uniformly random
/// target event. Requires n >= 3.
Instance random_instance(const Theory& theory, Rng& rng);

}  // namespace sorkin::classical
