#pragma once

// Lookup-table probability theory over a finite, explicitly enumerated event
// set. Every answer (orthogonality, sums, probabilities, conditionals) comes
// from a table, which makes it possible to realize conditional-probability
// structures that no Hilbert space or Jordan algebra admits.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sorkin/core.hpp"

namespace sorkin::table {

struct TableEvent {
  std::size_t index = 0;
  friend bool operator==(const TableEvent&, const TableEvent&) = default;
};

struct TableState {
  std::size_t index = 0;
};

/// Raw tables. `sum[a][b]` is meaningful only when `orthogonal[a][b]`;
/// `conditional[s][f][e]` only when `probability[s][e] > 0`.
struct TableSpec {
  std::string name;
  std::vector<std::string> event_names;
  std::size_t unit = 0;
  std::size_t zero = 0;
  std::vector<std::vector<bool>> orthogonal;
  std::vector<std::vector<std::size_t>> sum;
  std::vector<std::vector<double>> probability;
  std::vector<std::vector<std::vector<double>>> conditional;
};

class Theory {
 public:
  using Event = TableEvent;
  using State = TableState;

  /// Validates table shapes and the index ranges of `unit`, `zero` and `sum`.
  explicit Theory(TableSpec spec);

  std::string_view name() const { return spec_.name; }
  std::size_t event_count() const { return spec_.event_names.size(); }
  std::size_t state_count() const { return spec_.probability.size(); }
  /// Event by its table name; kInvalidArgument when absent.
  Event event(std::string_view name) const;

  Event unit() const { return {spec_.unit}; }
  Event zero() const { return {spec_.zero}; }
  bool is_valid(const Event& e) const { return e.index < event_count(); }
  bool is_valid_state(const State& s) const { return s.index < state_count(); }
  bool are_orthogonal(const Event& a, const Event& b) const;
  Event sum(std::span<const Event> events) const;
  double probability(const State& mu, const Event& e) const;
  double conditional(const State& mu, const Event& f, const Event& e) const;
  std::string describe(const Event& e) const;

 private:
  void check_state(const State& mu) const;

  TableSpec spec_;
};

struct BeyondQuantumModel {
  Theory theory;
  TableState state;
  TableEvent f;
  std::array<TableEvent, 3> triple;
};

/// Three mutually exclusive paths e1, e2, e3 of probability 1/3 each, their
/// pair and triple sums, and a detection event f with complement f'. The
/// conditionals of f are set so that
///     mu(f | e_i) mu(e_i)           = 0.1,
///     mu(f | e_i + e_j) mu(e_i + e_j) = 0.1,
///     mu(f | e1 + e2 + e3)          = 0.9,
/// giving I2 = -0.1 for every pair and I3 = 0.9. All state axioms hold.
BeyondQuantumModel make_beyond_quantum_model();

}  // namespace sorkin::table
