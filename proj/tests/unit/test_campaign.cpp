#include <doctest.h>

#include <cstdlib>

#include "sorkin/campaign.hpp"
#include "sorkin/verify.hpp"

using namespace sorkin;

namespace {

CampaignConfig config_for(TheoryKind kind, std::uint64_t trials, std::uint64_t seed = 7) {
  CampaignConfig c;
  c.theory = kind;
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("theory names") {
  for (auto k : {TheoryKind::kClassical, TheoryKind::kQuantum, TheoryKind::kAlbert,
                 TheoryKind::kSynthetic}) {
    CHECK(theory_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(theory_from_string("bohmian"), Error);
  CHECK(expected_verdict(TheoryKind::kClassical) == Verdict::kNoInterference);
  CHECK(expected_verdict(TheoryKind::kQuantum) == Verdict::kSecondOrderOnly);
  CHECK(expected_verdict(TheoryKind::kAlbert) == Verdict::kSecondOrderOnly);
  CHECK(expected_verdict(TheoryKind::kSynthetic) == Verdict::kThirdOrder);
}

TEST_CASE("config validation") {
  auto c = config_for(TheoryKind::kQuantum, 10);
  c.dimension = 2;
  CHECK_THROWS_AS(c.validate(), Error);
  c.dimension = 17;
  CHECK_THROWS_AS(c.validate(), Error);
  c.dimension = 16;
  CHECK_NOTHROW(c.validate());
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = config_for(TheoryKind::kClassical, 10);
  c.outcomes = 2;
  CHECK_THROWS_AS(c.validate(), Error);
  c = config_for(TheoryKind::kClassical, 10);
  c.thresholds = {0.5, 0.1};
  CHECK_THROWS_AS(run_campaign(c), Error);
}

TEST_CASE("campaign verdicts") {
  CHECK(run_campaign(config_for(TheoryKind::kClassical, 1000)).report.verdict ==
        Verdict::kNoInterference);
  auto q = config_for(TheoryKind::kQuantum, 1000);
  q.dimension = 3;
  const auto qr = run_campaign(q);
  CHECK(qr.report.verdict == Verdict::kSecondOrderOnly);
  CHECK(qr.verdict_matches());
  const auto sr = run_campaign(config_for(TheoryKind::kSynthetic, 10));
  CHECK(sr.report.verdict == Verdict::kThirdOrder);
  CHECK(sr.report.max_abs_i3 == doctest::Approx(0.9));

  auto strict = config_for(TheoryKind::kSynthetic, 10);
  strict.thresholds.significance = 0.95;
  const auto mismatch = run_campaign(strict);
  CHECK(mismatch.report.verdict == Verdict::kInconclusive);
  CHECK_FALSE(mismatch.verdict_matches());
}

TEST_CASE("reports are reproducible outside the manifest") {
  for (auto kind : {TheoryKind::kClassical, TheoryKind::kQuantum, TheoryKind::kAlbert,
                    TheoryKind::kSynthetic}) {
    auto c = config_for(kind, kind == TheoryKind::kAlbert ? 50 : 300, 99);
    c.threads = 1;
    const auto a = run_campaign(c);
    c.threads = 5;
    const auto b = run_campaign(c);
    CHECK(campaign_json_text(a, false) == campaign_json_text(b, false));

    auto ja = campaign_json(a), jb = campaign_json(b);
    REQUIRE(ja.contains("manifest"));
    ja.erase("manifest");
    jb.erase("manifest");
    CHECK(ja == jb);
  }
}

TEST_CASE("report JSON layout") {
  auto c = config_for(TheoryKind::kQuantum, 20, 3);
  c.dimension = 4;
  const auto r = run_campaign(c);
  const std::string text = campaign_json_text(r);
  CHECK(text.back() == '\n');
  const auto j = nlohmann::json::parse(text);
  CHECK(j["theory"] == "quantum");
  CHECK(j["dimension"] == 4);
  CHECK(j["trials"] == 20);
  CHECK(j["seed"] == 3);
  CHECK(j["expected_verdict"] == "SECOND_ORDER_ONLY");
  const auto& m = j["manifest"];
  CHECK(m["tool"] == "sorkin");
  CHECK(m["version"] == SORKIN_VERSION);
  CHECK(m["config"]["dimension"] == 4);
  CHECK(m["seed"] == 3);
  CHECK(m.contains("started_at"));
  CHECK(m.contains("finished_at"));
  CHECK(m.contains("duration_ms"));
  CHECK(m.contains("input_digests"));
  // Keys come out sorted.
  CHECK(text.find("\"expected_verdict\"") < text.find("\"theory\""));
}

TEST_CASE("utilities") {
  CHECK(content_digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(content_digest("a") == "fnv1a64:af63dc4c8601ec8c");
  const std::string ts = utc_timestamp();
  CHECK(ts.size() == 24);
  CHECK(ts.back() == 'Z');

  ::setenv("SORKIN_THREADS", "3", 1);
  CHECK(threads_from_environment() == 3);
  ::setenv("SORKIN_THREADS", "lots", 1);
  CHECK(threads_from_environment() == 0);
  ::unsetenv("SORKIN_THREADS");
  CHECK(threads_from_environment() == 0);
}

TEST_CASE("verify runner") {
  VerifyOptions o;
  o.only = {"classical", "spectral"};
  const auto results = run_verify(o);
  REQUIRE(results.size() == 2);
  CHECK(results[0].name == "classical");
  CHECK(results[0].passed);
  CHECK(results[1].passed);
  const std::string summary = format_summary(results);
  CHECK(summary.find("all suites passed") != std::string::npos);

  o.only = {"astrology"};
  CHECK_THROWS_AS(run_verify(o), Error);

  VerifyOptions mutated;
  mutated.only = {"octonion"};
  OctonionTable t = kOctonionTable;
  t.entry[2][6].sign = static_cast<std::int8_t>(-t.entry[2][6].sign);
  mutated.octonion_table = t;
  const auto bad = run_verify(mutated);
  REQUIRE(bad.size() == 1);
  CHECK_FALSE(bad[0].passed);
  CHECK(format_summary(bad).find("FAIL") != std::string::npos);
}
