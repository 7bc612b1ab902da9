#include <doctest.h>

#include <bit>

#include "sorkin/classical.hpp"
#include "sorkin/interference.hpp"

using namespace sorkin;
using classical::EventSet;
using classical::Measure;

TEST_CASE("classical probabilities") {
  const classical::Theory die(6);
  const Measure fair = Measure::uniform(6);
  CHECK(die.probability(fair, die.event({0, 1, 2})) == doctest::Approx(0.5));
  CHECK(die.probability(fair, die.zero()) == 0.0);
  CHECK(die.probability(fair, die.unit()) == doctest::Approx(1.0));

  const classical::Theory three(3);
  const Measure p({0.1, 0.2, 0.7});
  CHECK(three.probability(p, three.event({0, 2})) == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("ratio-rule conditioning") {
  const classical::Theory die(6);
  const Measure fair = Measure::uniform(6);
  // Outcomes 1..6 are indices 0..5.
  CHECK(die.conditional(fair, die.event({0, 1}), die.event({1, 3, 5})) ==
        doctest::Approx(1.0 / 3));
  CHECK(die.conditional(fair, die.event({2, 4}), die.event({2, 4})) == 1.0);
  CHECK(die.conditional(fair, die.event({0}), die.event({1})) == 0.0);

  const Measure skew({0.5, 0.5, 0, 0, 0, 0});
  try {
    die.conditional(skew, die.event({0}), die.event({4}));
    FAIL("conditioning on a null event must throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConditioning);
  }
}

TEST_CASE("classical measures are validated") {
  CHECK_THROWS_AS(Measure({0.5, 0.6}), Error);
  CHECK_THROWS_AS(Measure({-0.1, 1.1}), Error);
  CHECK_NOTHROW(Measure({0.25, 0.75}));
  const Measure w = Measure::from_weights({1, 3});
  CHECK(w.weights()[1] == doctest::Approx(0.75));
  CHECK_THROWS_AS(Measure::from_weights({0, 0}), Error);
  CHECK_THROWS_AS(classical::Theory(0), Error);
  CHECK_THROWS_AS(classical::Theory(65), Error);
}

TEST_CASE("events, orthogonality and sums") {
  const classical::Theory t(5);
  CHECK(t.are_orthogonal(t.event({0, 1}), t.event({2})));
  CHECK_FALSE(t.are_orthogonal(t.event({0, 1}), t.event({1})));
  CHECK(t.are_orthogonal(t.zero(), t.zero()));
  const EventSet parts[2] = {t.event({0}), t.event({3})};
  CHECK(t.sum(parts) == t.event({0, 3}));
  const EventSet overlapping[2] = {t.event({0, 1}), t.event({1})};
  CHECK_THROWS_AS(t.sum(overlapping), Error);
  CHECK(t.unit().mask == 0b11111);
  CHECK_THROWS_AS(t.event({5}), Error);
  CHECK_THROWS_AS(t.event_from_mask(1ULL << 5), Error);
  const classical::Theory full(64);
  CHECK(full.unit().mask == ~0ULL);
}

TEST_CASE("n = 3 sampler returns the singletons") {
  const classical::Theory t(3);
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng = trial_rng(s, 0);
    const auto inst = classical::random_instance(t, rng);
    std::uint64_t seen = 0;
    for (const auto& e : inst.triple) {
      CHECK(std::popcount(e.mask) == 1);
      seen |= e.mask;
    }
    CHECK(seen == 0b111);
  }
  Rng rng(1);
  CHECK_THROWS_AS(classical::random_instance(classical::Theory(2), rng), Error);
}

TEST_CASE("sampler triples are disjoint and replayable") {
  const classical::Theory t(6);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng = trial_rng(s, 3);
    const auto inst = classical::random_instance(t, rng);
    for (int i = 0; i < 3; ++i) {
      CHECK(inst.triple[i].mask != 0);
      for (int j = i + 1; j < 3; ++j) CHECK((inst.triple[i].mask & inst.triple[j].mask) == 0);
    }
  }
  Rng a = trial_rng(5, 5), b = trial_rng(5, 5);
  const auto x = classical::random_instance(t, a);
  const auto y = classical::random_instance(t, b);
  CHECK(x.f == y.f);
  CHECK(x.triple == y.triple);
  CHECK(std::equal(x.measure.weights().begin(), x.measure.weights().end(),
                   y.measure.weights().begin()));
}

TEST_CASE("classical joint probability is biadditive") {
  // mu(f | e) mu(e) = mu(f & e), so it is additive in e as well as in f.
  double worst = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const classical::Theory t(9);
    Rng rng = trial_rng(s, 0);
    const auto inst = classical::random_instance(t, rng);
    const auto& mu = inst.measure;
    auto joint = [&](const EventSet& f, const EventSet& e) {
      const double pe = t.probability(mu, e);
      return pe > 0 ? t.conditional(mu, f, e) * pe : 0.0;
    };
    const EventSet pair[2] = {inst.triple[0], inst.triple[1]};
    const EventSet e12 = t.sum(pair);
    worst = std::max(worst, std::abs(joint(inst.f, e12) - joint(inst.f, pair[0]) -
                                     joint(inst.f, pair[1])));
  }
  CHECK(worst <= 1e-15);
}

TEST_CASE("classical interference vanishes with dyadic inputs") {
  const classical::Theory t(4);
  const Measure mu({0.125, 0.25, 0.5, 0.125});
  const auto f = t.event({1, 2});
  const auto e1 = t.event({0}), e2 = t.event({1}), e3 = t.event({2, 3});
  // Only the ratio-then-product rounding of J can separate these from 0.
  CHECK(std::abs(i2(t, mu, f, e1, e2)) <= 1e-16);
  CHECK(std::abs(i3(t, mu, f, e1, e2, e3)) <= 1e-16);
  CHECK(std::abs(i3_via_pairs(t, mu, f, e1, e2, e3)) <= 1e-16);
}
