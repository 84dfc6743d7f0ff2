#pragma once

#include <string>
#include <vector>

namespace hqft {

struct TestRecord {
  std::string name;
  std::string anchor;         // the relation being checked
  std::string inputs_digest;  // short SHA-256 of the inputs description
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  // Informational records are reported but do not gate the exit status.
  bool informational = false;
};

TestRecord make_record(std::string name, std::string anchor, const std::string& inputs, double residual,
                       double tolerance, bool informational = false);

struct Report {
  std::string suite;
  std::string config_digest;
  long long seed = 0;
  std::vector<TestRecord> records;

  bool all_pass() const;
  int failures() const;
  void append(const std::vector<TestRecord>& more);
  // Deterministic body (no environment stamp).
  std::string body_json() const;
  std::string digest() const;
  // Body plus environment stamp and digest.
  std::string full_json() const;
};

std::string sha256_hex(const std::string& data);
std::string short_digest(const std::string& data);

}  // namespace hqft
