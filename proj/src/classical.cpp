#include "sorkin/classical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace sorkin::classical {

namespace {

constexpr double kNormTolerance = 1e-12;

std::uint64_t full_mask(unsigned n) {
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace

Measure::Measure(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty() || p_.size() > kMaxOutcomes) {
    throw Error(ErrorCode::kInvalidArgument, "measure size must be in [1, 64]");
  }
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "measure entries must be finite and >= 0");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "measure does not sum to 1 (sum = " + std::to_string(total) + ")");
  }
}

Measure Measure::from_weights(std::vector<double> w) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "weights must have positive total");
  }
  for (double& v : w) v /= total;
  return Measure(std::move(w));
}

Measure Measure::uniform(unsigned n) {
  return Measure(std::vector<double>(n, 1.0 / n));
}

Theory::Theory(unsigned outcomes) : n_(outcomes) {
  if (n_ == 0 || n_ > kMaxOutcomes) {
    throw Error(ErrorCode::kInvalidArgument, "sample space size must be in [1, 64]");
  }
}

EventSet Theory::unit() const { return {full_mask(n_), n_}; }

EventSet Theory::event(std::initializer_list<unsigned> outcomes) const {
  std::uint64_t mask = 0;
  for (unsigned i : outcomes) {
    if (i >= n_) throw Error(ErrorCode::kInvalidArgument, "outcome index out of range");
    mask |= std::uint64_t{1} << i;
  }
  return {mask, n_};
}

EventSet Theory::event_from_mask(std::uint64_t mask) const {
  if ((mask & ~full_mask(n_)) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "mask has bits outside the sample space");
  }
  return {mask, n_};
}

bool Theory::is_valid(const Event& e) const {
  return e.width == n_ && (e.mask & ~full_mask(n_)) == 0;
}

bool Theory::are_orthogonal(const Event& a, const Event& b) const {
  return (a.mask & b.mask) == 0;
}

EventSet Theory::sum(std::span<const Event> events) const {
  require_pairwise_orthogonal(*this, events);
  std::uint64_t mask = 0;
  for (const auto& e : events) mask |= e.mask;
  return {mask, n_};
}

void Theory::check(const State& mu, const Event& e) const {
  if (!is_valid_state(mu)) {
    throw Error(ErrorCode::kDimensionMismatch, "measure width does not match sample space");
  }
  require_valid(*this, e);
}

double Theory::probability(const State& mu, const Event& e) const {
  check(mu, e);
  const auto p = mu.weights();
  double total = 0.0;
  for (unsigned i = 0; i < n_; ++i) {
    if ((e.mask >> i) & 1U) total += p[i];
  }
  return std::min(total, 1.0);
}

double Theory::conditional(const State& mu, const Event& f, const Event& e) const {
  require_valid(*this, f);
  const double pe = probability(mu, e);
  if (pe <= kDefaultTolerance) {
    throw Error(ErrorCode::kConditioning,
                "classical: conditioning on event " + describe(e) + " with probability " +
                    std::to_string(pe));
  }
  const double joint = probability(mu, {f.mask & e.mask, n_});
  return std::clamp(joint / pe, 0.0, 1.0);
}

std::string Theory::describe(const Event& e) const {
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < std::min(e.width, kMaxOutcomes); ++i) {
    if ((e.mask >> i) & 1U) {
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    }
  }
  out += "}/" + std::to_string(e.width);
  return out;
}

Instance random_instance(const Theory& theory, Rng& rng) {
  const unsigned n = theory.outcomes();
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "random_instance needs n >= 3");

  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  for (double& v : w) v = expo(rng);
  Measure measure = Measure::from_weights(std::move(w));

  // Three distinct seed outcomes guarantee nonempty pieces; every other
  // outcome joins piece 0, 1, 2 or stays outside the triple (label 3).
  std::vector<unsigned> order(n);
  std::iota(order.begin(), order.end(), 0U);
  std::shuffle(order.begin(), order.end(), rng);
  std::array<std::uint64_t, 3> pieces{};
  for (unsigned k = 0; k < 3; ++k) pieces[k] |= std::uint64_t{1} << order[k];
  std::uniform_int_distribution<unsigned> label(0, 3);
  for (unsigned k = 3; k < n; ++k) {
    const unsigned l = label(rng);
    if (l < 3) pieces[l] |= std::uint64_t{1} << order[k];
  }

  std::uniform_int_distribution<std::uint64_t> bits(0, full_mask(n));
  const EventSet f{bits(rng), n};

  return Instance{std::move(measure), f,
                  {EventSet{pieces[0], n}, EventSet{pieces[1], n}, EventSet{pieces[2], n}}};
}

}  // namespace sorkin::classical
