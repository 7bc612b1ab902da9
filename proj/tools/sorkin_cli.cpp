// sorkin: command-line front end over the C API.
//
// Exit codes: 0 success, 1 usage or input error, 2 result mismatch (verdict
// differs from the theory's expected class, or a verify suite failed).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sorkin/sorkin.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMismatch = 2;

struct StringDeleter {
  void operator()(char* s) const { sorkin_free_string(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Destroy)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Destroy(p); }
};
using CampaignConfig =
    std::unique_ptr<sorkin_campaign_config,
                    HandleDeleter<sorkin_campaign_config, sorkin_campaign_config_destroy>>;
using CampaignReport =
    std::unique_ptr<sorkin_campaign_report,
                    HandleDeleter<sorkin_campaign_report, sorkin_campaign_report_destroy>>;
using SlitsConfig =
    std::unique_ptr<sorkin_slits_config,
                    HandleDeleter<sorkin_slits_config, sorkin_slits_config_destroy>>;
using SlitsResult =
    std::unique_ptr<sorkin_slits_result,
                    HandleDeleter<sorkin_slits_result, sorkin_slits_result_destroy>>;
using VerifyResult =
    std::unique_ptr<sorkin_verify_result,
                    HandleDeleter<sorkin_verify_result, sorkin_verify_result_destroy>>;

// Thrown when a C call fails; carries the library message.
struct Failure {
  std::string message;
};

void check(sorkin_status status) {
  if (status != SORKIN_OK) throw Failure{sorkin_last_error_message()};
}

void write_text(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{"cannot open '" + path + "' for writing"};
  out << text;
  if (!out.flush()) throw Failure{"write to '" + path + "' failed"};
}

struct CampaignArgs {
  std::string theory;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  int dimension = 3;
  int outcomes = 6;
  bool rank_one = false;
  double zero = 1e-8;
  double significance = 1e-2;
  std::string output;
  unsigned threads = 0;
};

int run_campaign(const CampaignArgs& a) {
  sorkin_campaign_config* raw = nullptr;
  check(sorkin_campaign_config_create(&raw));
  CampaignConfig config(raw);
  check(sorkin_campaign_config_set_theory(config.get(), a.theory.c_str()));
  check(sorkin_campaign_config_set_trials(config.get(), a.trials));
  check(sorkin_campaign_config_set_seed(config.get(), a.seed));
  check(sorkin_campaign_config_set_dimension(config.get(), a.dimension));
  check(sorkin_campaign_config_set_outcomes(config.get(), a.outcomes));
  check(sorkin_campaign_config_set_rank_one(config.get(), a.rank_one ? 1 : 0));
  check(sorkin_campaign_config_set_thresholds(config.get(), a.zero, a.significance));
  check(sorkin_campaign_config_set_threads(config.get(), a.threads));

  sorkin_campaign_report* raw_report = nullptr;
  check(sorkin_campaign_run(config.get(), &raw_report));
  CampaignReport report(raw_report);

  char* raw_json = nullptr;
  check(sorkin_campaign_report_json(report.get(), 1, &raw_json));
  OwnedString json(raw_json);

  const char* verdict = sorkin_verdict_name(sorkin_campaign_report_verdict(report.get()));
  const char* expected = sorkin_verdict_name(sorkin_campaign_report_expected(report.get()));
  if (a.output.empty()) {
    std::fputs(json.get(), stdout);
  } else {
    write_text(a.output, json.get());
  }
  std::fprintf(a.output.empty() ? stderr : stdout, "verdict %s (expected %s)\n", verdict,
               expected);
  return sorkin_campaign_report_matches(report.get()) ? kExitOk : kExitMismatch;
}

int run_slits(const std::string& config_path, const std::string& output) {
  sorkin_slits_config* raw = nullptr;
  check(config_path.empty() ? sorkin_slits_config_default(&raw)
                            : sorkin_slits_config_load(config_path.c_str(), &raw));
  SlitsConfig config(raw);
  sorkin_slits_result* raw_result = nullptr;
  check(sorkin_slits_run(config.get(), &raw_result));
  SlitsResult result(raw_result);
  check(sorkin_slits_result_write_csv(result.get(), output.c_str()));
  std::printf("max relative residual %.6e\n",
              sorkin_slits_result_max_relative_residual(result.get()));
  return kExitOk;
}

int run_verify(const std::vector<std::string>& only, const std::vector<int>& mutate,
               unsigned threads) {
  std::string filter;
  for (const auto& name : only) {
    if (!filter.empty()) filter += ',';
    filter += name;
  }
  const int mi = mutate.empty() ? -1 : mutate[0];
  const int mj = mutate.empty() ? -1 : mutate[1];
  sorkin_verify_result* raw = nullptr;
  check(sorkin_verify_run(only.empty() ? nullptr : filter.c_str(), mi, mj, threads, &raw));
  VerifyResult result(raw);
  char* raw_summary = nullptr;
  check(sorkin_verify_result_summary(result.get(), &raw_summary));
  OwnedString summary(raw_summary);
  std::fputs(summary.get(), stdout);
  return sorkin_verify_result_all_passed(result.get()) ? kExitOk : kExitMismatch;
}

int run_octonion_table(const std::string& output) {
  char* raw = nullptr;
  check(sorkin_octonion_table_csv(&raw));
  OwnedString csv(raw);
  if (output.empty()) {
    std::fputs(csv.get(), stdout);
  } else {
    write_text(output, csv.get());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sorkin interference hierarchy: classification campaigns, slit simulator and "
               "verification suites"};
  app.set_version_flag("--version", std::string(sorkin_version()));
  app.require_subcommand(1);

  CampaignArgs campaign;
  auto* cmd_campaign = app.add_subcommand("campaign", "Classify a theory by sampling I2 and I3");
  cmd_campaign->add_option("--theory", campaign.theory, "classical, quantum, albert or synthetic")
      ->required()
      ->check(CLI::IsMember({"classical", "quantum", "albert", "synthetic"}));
  cmd_campaign->add_option("--trials", campaign.trials, "Number of random instances")
      ->capture_default_str();
  cmd_campaign->add_option("--seed", campaign.seed, "Master seed")->capture_default_str();
  cmd_campaign->add_option("--dim", campaign.dimension, "Hilbert-space dimension (quantum)")
      ->capture_default_str();
  cmd_campaign->add_option("--outcomes", campaign.outcomes, "Sample-space size (classical)")
      ->capture_default_str();
  cmd_campaign->add_flag("--rank-one", campaign.rank_one,
                         "Rank-one triple and target (quantum)");
  cmd_campaign->add_option("--zero-threshold", campaign.zero)->capture_default_str();
  cmd_campaign->add_option("--significance-threshold", campaign.significance)
      ->capture_default_str();
  cmd_campaign->add_option("--output,-o", campaign.output, "JSON report path (default stdout)");
  cmd_campaign->add_option("--threads", campaign.threads, "Worker threads, 0 = all cores")
      ->envname("SORKIN_THREADS");

  std::string slits_config, slits_output = "slits.csv";
  auto* cmd_slits = app.add_subcommand("slits", "Three-slit patterns and Sorkin residual");
  cmd_slits->add_option("--config,-c", slits_config, "Geometry file (default built-in)")
      ->check(CLI::ExistingFile);
  cmd_slits->add_option("--output,-o", slits_output, "CSV path")->capture_default_str();

  std::vector<std::string> verify_only;
  std::vector<int> verify_mutate;
  unsigned verify_threads = 0;
  auto* cmd_verify = app.add_subcommand("verify", "Run the fixed-seed verification suites");
  cmd_verify->add_option("--only", verify_only, "Suites to run")
      ->delimiter(',')
      ->check(CLI::IsMember(CLI::detail::split(sorkin_verify_suite_names(), ',')));
  cmd_verify->add_option("--mutate-octonion-sign", verify_mutate,
                         "Flip the sign of octonion table entry i,j")
      ->delimiter(',')
      ->expected(2)
      ->check(CLI::Range(0, 7));
  cmd_verify->add_option("--threads", verify_threads)->envname("SORKIN_THREADS");

  std::string table_output;
  auto* cmd_table = app.add_subcommand("octonion-table", "Emit the octonion basis table as CSV");
  cmd_table->add_option("--output,-o", table_output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*cmd_campaign) return run_campaign(campaign);
    if (*cmd_slits) return run_slits(slits_config, slits_output);
    if (*cmd_verify) return run_verify(verify_only, verify_mutate, verify_threads);
    if (*cmd_table) return run_octonion_table(table_output);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return kExitInput;
  }
  return kExitInput;
}
