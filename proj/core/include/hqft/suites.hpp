#pragma once

#include "hqft/config.hpp"
#include "hqft/report.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hqft {

class UnknownName : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Record names start with a family prefix ("ccr.", "lifted.", ...) so callers can
// group them. Every family draws from its own seed stream derived from config.seed,
// which keeps results independent of the order families are run in.
std::vector<TestRecord> geometry_checks(const RunConfig& c);
std::vector<TestRecord> packet_checks(const RunConfig& c);
std::vector<TestRecord> ccr_checks(const RunConfig& c);
std::vector<TestRecord> covariance_checks(const RunConfig& c);
std::vector<TestRecord> evolution_checks(const RunConfig& c);
std::vector<TestRecord> energy_checks(const RunConfig& c);
std::vector<TestRecord> momentum_checks(const RunConfig& c);
std::vector<TestRecord> fock_checks(const RunConfig& c);
std::vector<TestRecord> bogoliubov_checks(const RunConfig& c);
std::vector<TestRecord> classical_checks(const RunConfig& c);
std::vector<TestRecord> correspondence_checks(const RunConfig& c);
std::vector<TestRecord> foliation_checks(const RunConfig& c);
std::vector<TestRecord> jacobi_checks(const RunConfig& c);
std::vector<TestRecord> bundle_checks(const RunConfig& c);
std::vector<TestRecord> lifted_action_checks(const RunConfig& c);

const std::vector<std::string>& suite_names();
// Throws UnknownName listing the valid suites.
Report run_suite(const RunConfig& c, const std::string& suite);

struct SweepRow {
  double parameter = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct SweepTable {
  std::string quantity;
  std::string parameter_name;
  std::vector<SweepRow> rows;
  // value strictly increasing (beta_hs_norm) or error strictly decreasing (others)
  bool monotone = false;
  std::string csv() const;
};

const std::vector<std::string>& sweep_names();
// Throws UnknownName listing the valid quantities.
SweepTable run_sweep(const RunConfig& c, const std::string& quantity);

// Least-squares slope of log(value) against log(parameter).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hqft
