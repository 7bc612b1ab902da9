#include "sorkin/interference.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace sorkin {

void Thresholds::validate() const {
  if (!(zero >= 0.0) || !(significance > zero) || !std::isfinite(significance)) {
    throw Error(ErrorCode::kInvalidArgument,
                "thresholds must satisfy 0 <= zero < significance (zero = " + std::to_string(zero) +
                    ", significance = " + std::to_string(significance) + ")");
  }
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kNoInterference: return "NO_INTERFERENCE";
    case Verdict::kSecondOrderOnly: return "SECOND_ORDER_ONLY";
    case Verdict::kThirdOrder: return "THIRD_ORDER";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict verdict_from_string(std::string_view s) {
  for (Verdict v : {Verdict::kNoInterference, Verdict::kSecondOrderOnly, Verdict::kThirdOrder,
                    Verdict::kInconclusive}) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown verdict " + std::string(s));
}

Verdict classify(double max_abs_i2, double max_abs_i3, const Thresholds& t) {
  if (max_abs_i3 > t.significance) return Verdict::kThirdOrder;
  if (max_abs_i3 <= t.zero) {
    if (max_abs_i2 <= t.zero) return Verdict::kNoInterference;
    if (max_abs_i2 > t.significance) return Verdict::kSecondOrderOnly;
  }
  return Verdict::kInconclusive;
}

std::array<std::uint64_t, kHistogramBins> histogram(std::span<const double> values, double bound) {
  std::array<std::uint64_t, kHistogramBins> bins{};
  const double width = 2.0 * bound / kHistogramBins;
  for (double v : values) {
    const double pos = std::floor((v + bound) / width);
    const auto idx = static_cast<std::size_t>(
        std::clamp(pos, 0.0, static_cast<double>(kHistogramBins - 1)));
    ++bins[idx];
  }
  return bins;
}

InterferenceReport assemble_report(std::string theory, std::uint64_t seed,
                                   const Thresholds& thresholds, std::vector<double> i2_values,
                                   std::vector<double> i3_values, std::vector<double> identity,
                                   double duration_ms) {
  InterferenceReport r;
  r.theory = std::move(theory);
  r.trials = i2_values.size();
  r.seed = seed;
  r.thresholds = thresholds;
  std::size_t significant = 0;
  for (double v : i2_values) {
    r.max_abs_i2 = std::max(r.max_abs_i2, std::abs(v));
    if (std::abs(v) > thresholds.significance) ++significant;
  }
  for (double v : i3_values) r.max_abs_i3 = std::max(r.max_abs_i3, std::abs(v));
  for (double v : identity) r.max_pair_identity_residual = std::max(r.max_pair_identity_residual, v);
  r.fraction_i2_significant =
      r.trials == 0 ? 0.0 : static_cast<double>(significant) / static_cast<double>(r.trials);
  r.verdict = classify(r.max_abs_i2, r.max_abs_i3, thresholds);
  r.i2 = std::move(i2_values);
  r.i3 = std::move(i3_values);
  r.pair_identity_residual = std::move(identity);
  r.duration_ms = duration_ms;
  return r;
}

nlohmann::json report_to_json(const InterferenceReport& r) {
  nlohmann::json j;
  j["theory"] = r.theory;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["thresholds"] = {{"zero", r.thresholds.zero}, {"significance", r.thresholds.significance}};
  j["max_abs_i2"] = r.max_abs_i2;
  j["max_abs_i3"] = r.max_abs_i3;
  j["max_pair_identity_residual"] = r.max_pair_identity_residual;
  j["fraction_i2_significant"] = r.fraction_i2_significant;
  j["i2_histogram"] = {{"min", -kI2HistogramBound},
                       {"max", kI2HistogramBound},
                       {"counts", histogram(r.i2, kI2HistogramBound)}};
  j["i3_histogram"] = {{"min", -kI3HistogramBound},
                       {"max", kI3HistogramBound},
                       {"counts", histogram(r.i3, kI3HistogramBound)}};
  j["verdict"] = to_string(r.verdict);
  return j;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::size_t failed_index = count;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sorkin
