#include "sorkin/sorkin.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "sorkin/campaign.hpp"
#include "sorkin/octonion.hpp"
#include "sorkin/slits.hpp"
#include "sorkin/verify.hpp"

struct sorkin_campaign_config {
  sorkin::CampaignConfig config;
};

struct sorkin_campaign_report {
  sorkin::CampaignResult result;
};

struct sorkin_slits_config {
  sorkin::slits::SlitConfig config;
};

struct sorkin_slits_result {
  sorkin::slits::SlitConfig config;
  sorkin::slits::SorkinResult result;
};

struct sorkin_verify_result {
  std::vector<sorkin::SuiteResult> suites;
};

namespace {

thread_local std::string last_error;

sorkin_status fail(sorkin_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body, mapping exceptions onto status codes.
template <class F>
sorkin_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return SORKIN_OK;
  } catch (const sorkin::Error& e) {
    return fail(static_cast<sorkin_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SORKIN_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SORKIN_INTERNAL, e.what());
  } catch (...) {
    return fail(SORKIN_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(bool condition, const char* message) {
  if (!condition) throw sorkin::Error(sorkin::ErrorCode::kInvalidArgument, message);
}

sorkin_verdict to_c(sorkin::Verdict v) {
  switch (v) {
    case sorkin::Verdict::kNoInterference: return SORKIN_NO_INTERFERENCE;
    case sorkin::Verdict::kSecondOrderOnly: return SORKIN_SECOND_ORDER_ONLY;
    case sorkin::Verdict::kThirdOrder: return SORKIN_THIRD_ORDER;
    case sorkin::Verdict::kInconclusive: return SORKIN_INCONCLUSIVE;
  }
  return SORKIN_INCONCLUSIVE;
}

}  // namespace

extern "C" {

const char* sorkin_version(void) { return SORKIN_VERSION; }

const char* sorkin_last_error_message(void) { return last_error.c_str(); }

void sorkin_free_string(char* s) { std::free(s); }

const char* sorkin_verdict_name(sorkin_verdict v) {
  switch (v) {
    case SORKIN_NO_INTERFERENCE: return "NO_INTERFERENCE";
    case SORKIN_SECOND_ORDER_ONLY: return "SECOND_ORDER_ONLY";
    case SORKIN_THIRD_ORDER: return "THIRD_ORDER";
    case SORKIN_INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

sorkin_status sorkin_campaign_config_create(sorkin_campaign_config** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new sorkin_campaign_config();
  });
}

void sorkin_campaign_config_destroy(sorkin_campaign_config* config) { delete config; }

sorkin_status sorkin_campaign_config_set_theory(sorkin_campaign_config* config,
                                                const char* theory) {
  return guarded([&] {
    require(config != nullptr && theory != nullptr, "null argument");
    config->config.theory = sorkin::theory_from_string(theory);
  });
}

sorkin_status sorkin_campaign_config_set_trials(sorkin_campaign_config* config,
                                                uint64_t trials) {
  return guarded([&] {
    require(config != nullptr, "null config");
    require(trials >= 1, "trials must be >= 1");
    config->config.trials = trials;
  });
}

sorkin_status sorkin_campaign_config_set_seed(sorkin_campaign_config* config, uint64_t seed) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.seed = seed;
  });
}

sorkin_status sorkin_campaign_config_set_dimension(sorkin_campaign_config* config,
                                                   int dimension) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.dimension = dimension;
  });
}

sorkin_status sorkin_campaign_config_set_outcomes(sorkin_campaign_config* config, int outcomes) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.outcomes = outcomes;
  });
}

sorkin_status sorkin_campaign_config_set_rank_one(sorkin_campaign_config* config, int rank_one) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.rank_one = rank_one != 0;
  });
}

sorkin_status sorkin_campaign_config_set_thresholds(sorkin_campaign_config* config, double zero,
                                                    double significance) {
  return guarded([&] {
    require(config != nullptr, "null config");
    const sorkin::Thresholds t{zero, significance};
    t.validate();
    config->config.thresholds = t;
  });
}

sorkin_status sorkin_campaign_config_set_threads(sorkin_campaign_config* config,
                                                 unsigned threads) {
  return guarded([&] {
    require(config != nullptr, "null config");
    config->config.threads = threads;
  });
}

sorkin_status sorkin_campaign_run(const sorkin_campaign_config* config,
                                  sorkin_campaign_report** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    *out = new sorkin_campaign_report{sorkin::run_campaign(config->config)};
  });
}

void sorkin_campaign_report_destroy(sorkin_campaign_report* report) { delete report; }

sorkin_verdict sorkin_campaign_report_verdict(const sorkin_campaign_report* report) {
  return report ? to_c(report->result.report.verdict) : SORKIN_INCONCLUSIVE;
}

sorkin_verdict sorkin_campaign_report_expected(const sorkin_campaign_report* report) {
  return report ? to_c(report->result.expected) : SORKIN_INCONCLUSIVE;
}

int sorkin_campaign_report_matches(const sorkin_campaign_report* report) {
  return report && report->result.verdict_matches() ? 1 : 0;
}

double sorkin_campaign_report_max_abs_i2(const sorkin_campaign_report* report) {
  return report ? report->result.report.max_abs_i2 : 0.0;
}

double sorkin_campaign_report_max_abs_i3(const sorkin_campaign_report* report) {
  return report ? report->result.report.max_abs_i3 : 0.0;
}

double sorkin_campaign_report_max_identity_residual(const sorkin_campaign_report* report) {
  return report ? report->result.report.max_pair_identity_residual : 0.0;
}

double sorkin_campaign_report_fraction_i2_significant(const sorkin_campaign_report* report) {
  return report ? report->result.report.fraction_i2_significant : 0.0;
}

sorkin_status sorkin_campaign_report_json(const sorkin_campaign_report* report,
                                          int include_manifest, char** out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    *out = copy_string(sorkin::campaign_json_text(report->result, include_manifest != 0));
  });
}

sorkin_status sorkin_slits_config_default(sorkin_slits_config** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new sorkin_slits_config{sorkin::slits::default_config()};
  });
}

sorkin_status sorkin_slits_config_parse(const char* text, sorkin_slits_config** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new sorkin_slits_config{sorkin::slits::parse_config(text)};
  });
}

sorkin_status sorkin_slits_config_load(const char* path, sorkin_slits_config** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new sorkin_slits_config{sorkin::slits::load_config(path)};
  });
}

void sorkin_slits_config_destroy(sorkin_slits_config* config) { delete config; }

sorkin_status sorkin_slits_run(const sorkin_slits_config* config, sorkin_slits_result** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    auto result = sorkin::slits::sorkin_residual(config->config.geometry, config->config.response);
    *out = new sorkin_slits_result{config->config, std::move(result)};
  });
}

void sorkin_slits_result_destroy(sorkin_slits_result* result) { delete result; }

double sorkin_slits_result_max_relative_residual(const sorkin_slits_result* result) {
  return result ? result->result.max_relative_residual : 0.0;
}

size_t sorkin_slits_result_detector_count(const sorkin_slits_result* result) {
  return result ? result->result.x.size() : 0;
}

sorkin_status sorkin_slits_result_csv(const sorkin_slits_result* result, char** out) {
  return guarded([&] {
    require(result != nullptr && out != nullptr, "null argument");
    *out = copy_string(sorkin::slits::to_csv(result->result, result->config));
  });
}

sorkin_status sorkin_slits_result_write_csv(const sorkin_slits_result* result,
                                            const char* path) {
  return guarded([&] {
    require(result != nullptr && path != nullptr, "null argument");
    sorkin::slits::export_pattern(result->result, result->config, path);
  });
}

sorkin_status sorkin_verify_run(const char* only, int mutate_i, int mutate_j, unsigned threads,
                                sorkin_verify_result** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    sorkin::VerifyOptions options;
    options.threads = threads;
    if (only != nullptr) {
      std::istringstream in(only);
      std::string name;
      while (std::getline(in, name, ',')) {
        if (!name.empty()) options.only.push_back(name);
      }
    }
    if (mutate_i >= 0 || mutate_j >= 0) {
      require(mutate_i >= 0 && mutate_i < 8 && mutate_j >= 0 && mutate_j < 8,
              "octonion mutation indices must lie in [0, 8)");
      sorkin::OctonionTable table = sorkin::kOctonionTable;
      auto& entry = table.entry[mutate_i][mutate_j];
      entry.sign = static_cast<std::int8_t>(-entry.sign);
      options.octonion_table = table;
    }
    *out = new sorkin_verify_result{sorkin::run_verify(options)};
  });
}

void sorkin_verify_result_destroy(sorkin_verify_result* result) { delete result; }

int sorkin_verify_result_all_passed(const sorkin_verify_result* result) {
  if (result == nullptr) return 0;
  for (const auto& s : result->suites) {
    if (!s.passed) return 0;
  }
  return 1;
}

size_t sorkin_verify_result_suite_count(const sorkin_verify_result* result) {
  return result ? result->suites.size() : 0;
}

sorkin_status sorkin_verify_result_summary(const sorkin_verify_result* result, char** out) {
  return guarded([&] {
    require(result != nullptr && out != nullptr, "null argument");
    *out = copy_string(sorkin::format_summary(result->suites));
  });
}

const char* sorkin_verify_suite_names(void) {
  static const std::string names = [] {
    std::string s;
    for (auto n : sorkin::suite_names()) {
      if (!s.empty()) s += ',';
      s += n;
    }
    return s;
  }();
  return names.c_str();
}

sorkin_status sorkin_octonion_table_csv(char** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = copy_string(sorkin::octonion_table_csv());
  });
}

void sorkin_octonion_mul(const double x[8], const double y[8], double out[8]) {
  std::array<double, 8> a{}, b{};
  std::copy(x, x + 8, a.begin());
  std::copy(y, y + 8, b.begin());
  const auto p = sorkin::Octonion(a) * sorkin::Octonion(b);
  for (std::size_t i = 0; i < 8; ++i) out[i] = p[i];
}

}  // extern "C"
