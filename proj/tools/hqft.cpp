#include "hqft/config.hpp"
#include "hqft/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfigError = 2;

void print_record(const hqft::TestRecord& r) {
  const char* status = r.pass ? "PASS" : (r.informational ? "INFO" : "FAIL");
  std::printf("%-4s  %-60s residual=%.3e  tol=%.1e\n", status, r.name.c_str(), r.residual, r.tolerance);
}

int verify(const std::string& suite, const std::string& config_path, const std::string& report_path,
           std::optional<long long> seed) {
  hqft::RunConfig c = hqft::load_config(config_path);
  if (seed) c.seed = *seed;
  const hqft::Report r = hqft::run_suite(c, suite);
  for (const auto& rec : r.records) print_record(rec);
  std::printf("%s: %zu records, %d failures, digest %s\n", suite.c_str(), r.records.size(), r.failures(),
              r.digest().c_str());
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw hqft::ConfigError("cannot write report '" + report_path + "'");
    out << r.full_json() << "\n";
  }
  return r.all_pass() ? kPass : kFail;
}

int sweep(const std::string& quantity, const std::string& config_path, const std::string& out_path) {
  const hqft::RunConfig c = hqft::load_config(config_path);
  const hqft::SweepTable t = hqft::run_sweep(c, quantity);
  std::ofstream out(out_path);
  if (!out) throw hqft::ConfigError("cannot write csv '" + out_path + "'");
  out << t.csv();
  std::fputs(t.csv().c_str(), stdout);
  return t.monotone ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hqft: verification workbench for history QFT with a quantised foliation vector"};
  app.require_subcommand(1);

  std::string suite, quantity, config_path, report_path, out_path;
  std::optional<long long> seed;

  auto* v = app.add_subcommand("verify", "run a verification suite and print one line per check");
  v->add_option("suite", suite, "suite name (" + [] {
    std::string s;
    for (const auto& n : hqft::suite_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }())->required();
  v->add_option("--config", config_path, "JSON run configuration")->required();
  v->add_option("--report", report_path, "write the JSON report here");
  v->add_option("--seed", seed, "override the configured seed");

  auto* s = app.add_subcommand("sweep", "tabulate a convergence sweep as CSV");
  s->add_option("quantity", quantity, "beta_hs_norm, correspondence or quadrature")->required();
  s->add_option("--config", config_path, "JSON run configuration")->required();
  s->add_option("--out", out_path, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*v) return verify(suite, config_path, report_path, seed);
    return sweep(quantity, config_path, out_path);
  } catch (const hqft::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const hqft::UnknownName& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}
