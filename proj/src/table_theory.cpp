#include "sorkin/table_theory.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace sorkin::table {

Theory::Theory(TableSpec spec) : spec_(std::move(spec)) {
  const std::size_t n = spec_.event_names.size();
  auto bad = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "table theory: " + what);
  };
  if (n == 0) bad("no events");
  if (spec_.unit >= n || spec_.zero >= n) bad("unit/zero index out of range");
  if (spec_.orthogonal.size() != n || spec_.sum.size() != n) bad("orthogonality/sum tables must be n x n");
  for (std::size_t a = 0; a < n; ++a) {
    if (spec_.orthogonal[a].size() != n || spec_.sum[a].size() != n) bad("ragged table");
    for (std::size_t b = 0; b < n; ++b) {
      if (spec_.orthogonal[a][b] != spec_.orthogonal[b][a]) bad("orthogonality must be symmetric");
      if (spec_.orthogonal[a][b] && spec_.sum[a][b] >= n) bad("sum index out of range");
    }
  }
  if (spec_.probability.empty() || spec_.conditional.size() != spec_.probability.size()) {
    bad("need at least one state with probability and conditional tables");
  }
  for (std::size_t s = 0; s < spec_.probability.size(); ++s) {
    if (spec_.probability[s].size() != n || spec_.conditional[s].size() != n) bad("state table size");
    for (const auto& row : spec_.conditional[s]) {
      if (row.size() != n) bad("conditional table must be n x n per state");
    }
  }
}

TableEvent Theory::event(std::string_view name) const {
  for (std::size_t i = 0; i < spec_.event_names.size(); ++i) {
    if (spec_.event_names[i] == name) return {i};
  }
  throw Error(ErrorCode::kInvalidArgument, "table theory: unknown event " + std::string(name));
}

bool Theory::are_orthogonal(const Event& a, const Event& b) const {
  require_valid(*this, a);
  require_valid(*this, b);
  return spec_.orthogonal[a.index][b.index];
}

TableEvent Theory::sum(std::span<const Event> events) const {
  require_pairwise_orthogonal(*this, events);
  Event acc = zero();
  for (const auto& e : events) {
    if (!spec_.orthogonal[acc.index][e.index]) {
      throw Error(ErrorCode::kOrthogonality,
                  "table theory: partial sum " + describe(acc) + " not orthogonal to " + describe(e));
    }
    acc = {spec_.sum[acc.index][e.index]};
  }
  return acc;
}

void Theory::check_state(const State& mu) const {
  if (!is_valid_state(mu)) {
    throw Error(ErrorCode::kContractViolation, "table theory: unknown state index");
  }
}

double Theory::probability(const State& mu, const Event& e) const {
  check_state(mu);
  require_valid(*this, e);
  return spec_.probability[mu.index][e.index];
}

double Theory::conditional(const State& mu, const Event& f, const Event& e) const {
  require_valid(*this, f);
  const double pe = probability(mu, e);
  if (pe <= kDefaultTolerance) {
    throw Error(ErrorCode::kConditioning,
                "table theory: conditioning on zero-probability event " + describe(e));
  }
  return spec_.conditional[mu.index][f.index][e.index];
}

std::string Theory::describe(const Event& e) const {
  if (!is_valid(e)) return "#" + std::to_string(e.index) + "(foreign)";
  return spec_.event_names[e.index];
}

BeyondQuantumModel make_beyond_quantum_model() {
  // Path events are the subsets of {1,2,3}; index = position in kPathMasks.
  constexpr std::array<unsigned, 8> kPathMasks{0b000, 0b001, 0b010, 0b100,
                                               0b011, 0b101, 0b110, 0b111};
  constexpr std::size_t kF = 8;
  constexpr std::size_t kNotF = 9;
  constexpr std::size_t n = 10;
  // mu(f | e) for each path event e with mu(e) > 0.
  constexpr double kSingle = 0.3;  // J = 0.3 * 1/3 = 0.1
  constexpr double kPair = 0.15;   // J = 0.15 * 2/3 = 0.1
  constexpr double kAll = 0.9;     // J = 0.9

  TableSpec spec;
  spec.name = "synthetic";
  spec.event_names = {"0", "e1", "e2", "e3", "e1+e2", "e1+e3", "e2+e3", "1", "f", "f'"};
  spec.zero = 0;
  spec.unit = 7;
  spec.orthogonal.assign(n, std::vector<bool>(n, false));
  spec.sum.assign(n, std::vector<std::size_t>(n, n));

  auto path_index = [&](unsigned mask) {
    for (std::size_t i = 0; i < kPathMasks.size(); ++i) {
      if (kPathMasks[i] == mask) return i;
    }
    return n;
  };
  auto is_path = [](std::size_t i) { return i < 8; };
  auto size_of = [&](std::size_t i) { return std::popcount(kPathMasks[i]); };

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (is_path(a) && is_path(b) && (kPathMasks[a] & kPathMasks[b]) == 0) {
        spec.orthogonal[a][b] = true;
        spec.sum[a][b] = path_index(kPathMasks[a] | kPathMasks[b]);
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    spec.orthogonal[0][x] = spec.orthogonal[x][0] = true;
    spec.sum[0][x] = spec.sum[x][0] = x;
  }
  spec.orthogonal[kF][kNotF] = spec.orthogonal[kNotF][kF] = true;
  spec.sum[kF][kNotF] = spec.sum[kNotF][kF] = spec.unit;

  std::vector<double> prob(n);
  for (std::size_t i = 0; i < 8; ++i) prob[i] = size_of(i) / 3.0;
  prob[kF] = kAll;
  prob[kNotF] = 1.0 - kAll;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> cond(n, std::vector<double>(n, nan));
  for (std::size_t e = 1; e < 8; ++e) {
    for (std::size_t g = 0; g < 8; ++g) {
      cond[g][e] = static_cast<double>(std::popcount(kPathMasks[g] & kPathMasks[e])) / size_of(e);
    }
    const double pf = size_of(e) == 1 ? kSingle : size_of(e) == 2 ? kPair : kAll;
    cond[kF][e] = pf;
    cond[kNotF][e] = 1.0 - pf;
  }
  for (std::size_t e : {kF, kNotF}) {
    for (std::size_t g = 0; g < 8; ++g) cond[g][e] = size_of(g) / 3.0;
    cond[kF][e] = e == kF ? 1.0 : 0.0;
    cond[kNotF][e] = e == kNotF ? 1.0 : 0.0;
  }
  spec.probability = {prob};
  spec.conditional = {cond};

  Theory theory(std::move(spec));
  return BeyondQuantumModel{std::move(theory), TableState{0}, TableEvent{kF},
                            {TableEvent{1}, TableEvent{2}, TableEvent{3}}};
}

}  // namespace sorkin::table
