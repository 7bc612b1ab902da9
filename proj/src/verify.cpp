#include "sorkin/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "sorkin/albert.hpp"
#include "sorkin/campaign.hpp"
#include "sorkin/classical.hpp"
#include "sorkin/core.hpp"
#include "sorkin/interference.hpp"
#include "sorkin/quantum.hpp"
#include "sorkin/slits.hpp"
#include "sorkin/table_theory.hpp"

namespace sorkin {
namespace {

using albert::AlbertElement;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Worst of fn(rng_i) over count draws; deterministic regardless of threads.
double worst_over(std::size_t count, unsigned threads, std::uint64_t seed,
                  const std::function<double(Rng&)>& fn) {
  std::vector<double> values(count, 0.0);
  parallel_for(count, threads, [&](std::size_t i) {
    Rng rng = trial_rng(seed, i);
    values[i] = fn(rng);
  });
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

Octonion random_octonion(Rng& rng) {
  std::normal_distribution<double> n;
  std::array<double, 8> c{};
  for (double& v : c) v = n(rng);
  return Octonion(c);
}

AlbertElement unit_element(Rng& rng) {
  AlbertElement a = albert::random_element(rng);
  return a * (1.0 / a.norm());
}

SuiteResult suite_core(const VerifyOptions&) {
  SuiteResult r;
  r.name = "core";
  double worst = 0.0;
  bool ok = true;
  auto fold = [&](const ValidationReport& report) {
    for (const auto& a : report.axioms) worst = std::max(worst, a.worst_residual);
    ok = ok && report.all_passed();
  };

  const classical::Theory die(6);
  const std::vector<classical::EventSet> die_events{
      die.event({0}), die.event({1, 2}), die.event({3, 4, 5}), die.event({0, 2, 4}),
      die.event({5}), die.unit(), die.zero()};
  fold(validate_oracle(die, classical::Measure::uniform(6),
                       std::span<const classical::EventSet>(die_events)));

  const quantum::Theory qubit(2);
  Eigen::VectorXcd up(2), plus(2);
  up << 1.0, 0.0;
  plus << M_SQRT1_2, M_SQRT1_2;
  Eigen::MatrixXcd minus(2, 1);
  minus << M_SQRT1_2, -M_SQRT1_2;
  const std::vector<quantum::Projection> qubit_events{
      quantum::Projection::onto(up), quantum::Projection::onto(plus),
      quantum::Projection::onto(minus), qubit.unit(), qubit.zero()};
  fold(validate_oracle(qubit, quantum::Density::pure(up),
                       std::span<const quantum::Projection>(qubit_events)));

  const albert::Theory jordan;
  Rng rng = trial_rng(0, 0);
  const auto triple = albert::random_idempotent_triple(rng);
  std::vector<albert::JordanIdempotent> jordan_events(triple.begin(), triple.end());
  jordan_events.push_back(
      jordan.sum(std::span<const albert::JordanIdempotent>(triple.data(), 2)));
  jordan_events.push_back(jordan.unit());
  fold(validate_oracle(jordan, albert::random_state(rng),
                       std::span<const albert::JordanIdempotent>(jordan_events), 1e-9));

  r.passed = ok;
  r.worst_residual = worst;
  r.detail = "state axioms on die, qubit and Jordan oracles";
  return r;
}

struct Totals {
  double i2 = 0.0;
  double i3 = 0.0;
  double identity = 0.0;
  double fraction = 0.0;
};

Totals totals_of(const InterferenceReport& rep) {
  return {rep.max_abs_i2, rep.max_abs_i3, rep.max_pair_identity_residual,
          rep.fraction_i2_significant};
}

SuiteResult suite_classical(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "classical";
  constexpr std::size_t kTrials = 1000;
  std::vector<double> v2(kTrials), v3(kTrials), vid(kTrials);
  parallel_for(kTrials, o.threads, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, i);
    const classical::Theory theory(3 + static_cast<unsigned>(i % 10));
    const auto inst = classical::random_instance(theory, rng);
    const auto& [e1, e2, e3] = inst.triple;
    v2[i] = std::abs(i2(theory, inst.measure, inst.f, e1, e2));
    const double full = i3(theory, inst.measure, inst.f, e1, e2, e3);
    v3[i] = std::abs(full);
    vid[i] = std::abs(full - i3_via_pairs(theory, inst.measure, inst.f, e1, e2, e3));
  });
  const double m2 = *std::max_element(v2.begin(), v2.end());
  const double m3 = *std::max_element(v3.begin(), v3.end());
  const double mid = *std::max_element(vid.begin(), vid.end());
  r.worst_residual = std::max({m2, m3, mid});
  r.passed = m2 <= 1e-12 && m3 <= 1e-12 && mid <= 1e-12;
  r.detail = "1000 trials n in [3,12]: max|I2| " + sci(m2) + ", max|I3| " + sci(m3);
  return r;
}

InterferenceReport quantum_run(int d, bool rank_one, std::uint64_t trials, std::uint64_t seed,
                               unsigned threads) {
  CampaignConfig c;
  c.theory = TheoryKind::kQuantum;
  c.dimension = d;
  c.rank_one = rank_one;
  c.trials = trials;
  c.seed = seed;
  c.threads = threads;
  return run_campaign(c).report;
}

SuiteResult suite_quantum(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "quantum";
  double m3 = 0.0, mid = 0.0;
  for (int d = 3; d <= 8; ++d) {
    const Totals t = totals_of(quantum_run(d, false, 1000, o.seed + d, o.threads));
    m3 = std::max(m3, t.i3);
    mid = std::max(mid, t.identity);
  }
  const Totals rank1 = totals_of(quantum_run(3, true, 1000, o.seed, o.threads));
  m3 = std::max(m3, rank1.i3);
  mid = std::max(mid, rank1.identity);
  r.worst_residual = std::max(m3, mid);
  r.passed = m3 <= 1e-10 && mid <= 1e-12 && rank1.fraction >= 0.5;
  r.detail = "d=3..8 x 1000: max|I3| " + sci(m3) + "; d=3 rank-1 |I2|>0.01 in " +
             std::to_string(static_cast<int>(rank1.fraction * 100 + 0.5)) + "% of trials";
  return r;
}

SuiteResult suite_octonion(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "octonion";
  const OctonionTable table = o.octonion_table.value_or(kOctonionTable);
  constexpr std::size_t kPairs = 100000;
  std::vector<double> norm_defect(kPairs), alt_defect(kPairs);
  parallel_for(kPairs, o.threads, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, i);
    const Octonion x = random_octonion(rng);
    const Octonion y = random_octonion(rng);
    const double nx = x.norm(), ny = y.norm();
    const Octonion xy = multiply(x, y, table);
    norm_defect[i] = std::abs(xy.norm() - nx * ny) / (nx * ny);
    const Octonion left = multiply(x, xy, table) - multiply(multiply(x, x, table), y, table);
    const Octonion right =
        multiply(multiply(y, x, table), x, table) - multiply(y, multiply(x, x, table), table);
    alt_defect[i] = std::max(left.norm(), right.norm()) / (nx * nx * ny);
  });
  const double norm_worst = *std::max_element(norm_defect.begin(), norm_defect.end());
  const double alt_worst = *std::max_element(alt_defect.begin(), alt_defect.end());
  const double witness =
      associator(Octonion::basis(1), Octonion::basis(2), Octonion::basis(4), table).norm();
  r.worst_residual = std::max(norm_worst, alt_worst);
  r.passed = r.worst_residual <= 1e-12 && witness > 1.0;
  r.detail = "1e5 pairs: norm defect " + sci(norm_worst) + ", alternativity " + sci(alt_worst) +
             "; |[e1,e2,e4]| = " + sci(witness);
  return r;
}

SuiteResult suite_jordan(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "jordan";
  bool commutative = true;
  std::vector<char> comm(10000, 1);
  std::vector<double> values(10000, 0.0);
  parallel_for(values.size(), o.threads, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, i);
    const AlbertElement a = unit_element(rng);
    const AlbertElement b = unit_element(rng);
    const AlbertElement ab = albert::jordan_mul(a, b);
    comm[i] = ab == albert::jordan_mul(b, a) ? 1 : 0;
    const AlbertElement aa = albert::jordan_mul(a, a);
    const double identity =
        (albert::jordan_mul(ab, aa) - albert::jordan_mul(a, albert::jordan_mul(b, aa))).sup_norm();
    const double trace_sym = std::abs(albert::trace_form(a, b) - albert::trace_form(b, a));
    values[i] = std::max(identity, trace_sym);
  });
  for (char c : comm) commutative = commutative && c != 0;
  r.worst_residual = *std::max_element(values.begin(), values.end());
  r.passed = commutative && r.worst_residual <= 1e-10;
  r.detail = std::string("1e4 unit-norm pairs; commutativity ") +
             (commutative ? "exact" : "VIOLATED");
  return r;
}

SuiteResult suite_spectral(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "spectral";
  r.worst_residual = worst_over(1000, o.threads, o.seed, [](Rng& rng) {
    const AlbertElement a = unit_element(rng);
    const auto terms = albert::spectral_decompose(a);
    AlbertElement recon, total;
    double worst = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      recon += terms[i].eigenvalue * terms[i].idempotent;
      total += terms[i].idempotent;
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        worst = std::max(worst,
                         albert::jordan_mul(terms[i].idempotent, terms[j].idempotent).sup_norm());
      }
    }
    worst = std::max(worst, (recon - a).sup_norm());
    return std::max(worst, (total - AlbertElement::identity()).sup_norm());
  });
  r.passed = r.worst_residual <= 1e-9;
  r.detail = "1e3 unit-norm elements: reconstruction, completeness, orthogonality";
  return r;
}

SuiteResult suite_assumptions(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "assumptions";
  std::vector<char> positive(1000, 0);
  parallel_for(positive.size(), o.threads, [&](std::size_t i) {
    Rng rng = trial_rng(o.seed, i);
    positive[i] = albert::check_square_positive(albert::random_element(rng)) ? 1 : 0;
  });
  const auto failures = std::count(positive.begin(), positive.end(), 0);
  const double power = worst_over(1000, o.threads, o.seed + 1, [](Rng& rng) {
    return albert::check_power_associativity(unit_element(rng), 6);
  });
  r.worst_residual = power;
  r.passed = failures == 0 && power <= 1e-9;
  r.detail = "square positivity failures " + std::to_string(failures) +
             "/1000; power associativity to 6";
  return r;
}

SuiteResult suite_albert(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "albert";
  CampaignConfig c;
  c.theory = TheoryKind::kAlbert;
  c.trials = 500;
  c.seed = o.seed;
  c.threads = o.threads;
  const Totals t = totals_of(run_campaign(c).report);
  r.worst_residual = std::max(t.i3, t.identity);
  r.passed = t.i3 <= 1e-8 && t.identity <= 1e-12 && t.i2 > 0.01;
  r.detail = "500 trials: max|I3| " + sci(t.i3) + ", max|I2| " + sci(t.i2);
  return r;
}

SuiteResult suite_classification(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "classification";
  r.passed = true;
  std::string detail;
  for (TheoryKind k : {TheoryKind::kClassical, TheoryKind::kQuantum, TheoryKind::kAlbert,
                       TheoryKind::kSynthetic}) {
    CampaignConfig c;
    c.theory = k;
    c.trials = k == TheoryKind::kAlbert ? 200 : 1000;
    c.seed = o.seed;
    c.threads = o.threads;
    const CampaignResult res = run_campaign(c);
    r.passed = r.passed && res.verdict_matches();
    r.worst_residual = std::max(r.worst_residual, res.report.max_pair_identity_residual);
    if (!detail.empty()) detail += ", ";
    detail += std::string(to_string(k)) + "=" + std::string(to_string(res.report.verdict));
  }
  r.detail = detail;
  return r;
}

SuiteResult suite_slits(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "slits";
  const double ideal = worst_over(100, o.threads, o.seed, [](Rng& rng) {
    return slits::sorkin_residual(slits::random_geometry(rng), slits::DetectorResponse::ideal())
        .max_relative_residual;
  });
  const auto geometry = slits::default_geometry();
  auto saturated = [&](double eps) {
    return slits::sorkin_residual(geometry, slits::DetectorResponse::saturating(eps))
        .max_relative_residual;
  };
  const double s10 = saturated(0.1);
  const double ratio = saturated(0.02) / saturated(0.01);
  r.worst_residual = ideal;
  r.passed = ideal <= 1e-12 && s10 > 1e-3 && ratio >= 1.8 && ratio <= 2.2;
  r.detail = "eps=0.1 residual " + sci(s10) + ", eps 0.02/0.01 ratio " + sci(ratio);
  return r;
}

using SuiteFn = SuiteResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string_view, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string_view, SuiteFn>> r{
      {"core", suite_core},
      {"classical", suite_classical},
      {"quantum", suite_quantum},
      {"octonion", suite_octonion},
      {"jordan", suite_jordan},
      {"spectral", suite_spectral},
      {"assumptions", suite_assumptions},
      {"albert", suite_albert},
      {"classification", suite_classification},
      {"slits", suite_slits},
  };
  return r;
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
  for (const auto& name : options.only) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + name + "'");
    }
  }
  std::vector<SuiteResult> results;
  for (const auto& [name, fn] : registry()) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), name) == options.only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r;
    try {
      r = fn(options);
    } catch (const std::exception& e) {
      r.name = std::string(name);
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_summary(const std::vector<SuiteResult>& results) {
  std::ostringstream out;
  char line[256];
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    std::snprintf(line, sizeof line, "%-15s %s  worst %-10s %9.1f ms  ", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", sci(r.worst_residual).c_str(), r.duration_ms);
    out << line << r.detail << '\n';
  }
  out << (all ? "all suites passed" : "some suites FAILED") << " (" << results.size()
      << " run)\n";
  return out.str();
}

}  // namespace sorkin
