#include "hqft/report.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hqft {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  std::string out;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

std::string short_digest(const std::string& data) { return sha256_hex(data).substr(0, 16); }

TestRecord make_record(std::string name, std::string anchor, const std::string& inputs, double residual,
                       double tolerance, bool informational) {
  TestRecord r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.inputs_digest = short_digest(inputs);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = std::isfinite(residual) && residual <= tolerance;
  r.informational = informational;
  return r;
}

bool Report::all_pass() const { return failures() == 0; }

int Report::failures() const {
  int n = 0;
  for (const auto& r : records)
    if (!r.pass && !r.informational) ++n;
  return n;
}

void Report::append(const std::vector<TestRecord>& more) { records.insert(records.end(), more.begin(), more.end()); }

namespace {

nlohmann::ordered_json body(const Report& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["config_digest"] = r.config_digest;
  j["seed"] = r.seed;
  auto& recs = j["records"] = nlohmann::ordered_json::array();
  for (const auto& t : r.records) {
    nlohmann::ordered_json x;
    x["name"] = t.name;
    x["anchor"] = t.anchor;
    x["inputs_digest"] = t.inputs_digest;
    // Non-finite residuals are not representable in JSON.
    if (std::isfinite(t.residual))
      x["residual"] = t.residual;
    else
      x["residual"] = nullptr;
    x["tolerance"] = t.tolerance;
    x["pass"] = t.pass;
    if (t.informational) x["informational"] = true;
    recs.push_back(std::move(x));
  }
  j["summary"] = {{"records", r.records.size()}, {"failures", r.failures()}, {"pass", r.all_pass()}};
  return j;
}

}  // namespace

std::string Report::body_json() const { return body(*this).dump(2); }

std::string Report::digest() const { return sha256_hex(body_json()); }

std::string Report::full_json() const {
  nlohmann::ordered_json j = body(*this);
  j["digest"] = digest();
#if defined(__VERSION__)
  j["environment"] = {{"compiler", __VERSION__}, {"cplusplus", __cplusplus}};
#endif
  return j.dump(2) + "\n";
}

}  // namespace hqft
