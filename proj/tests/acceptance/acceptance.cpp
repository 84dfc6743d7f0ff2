#include "hqft/config.hpp"
#include "hqft/suites.hpp"

#include <cstdio>
#include <string>
#include <vector>

namespace {

struct Criterion {
  int number;
  std::string prefix;
  std::string title;
};

const std::vector<Criterion> kCriteria{
    {1, "ccr.", "smeared history CCR"},
    {2, "covariance.", "external Lorentz covariance"},
    {3, "foliation.", "foliation algebra and Casimir (exact)"},
    {4, "jacobi.", "extended-algebra Jacobi identities"},
    {5, "bogoliubov.", "inequivalence witness"},
    {6, "energy.", "energy operator"},
    {7, "momentum.", "internal momentum"},
    {8, "lifted.", "direct integral and lifted Lorentz action"},
    {9, "correspondence.", "classical-quantum correspondence"},
};

}  // namespace

int main(int argc, char** argv) {
  hqft::RunConfig c;
  try {
    c = argc > 1 ? hqft::load_config(argv[1]) : hqft::default_config();
  } catch (const hqft::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  c.ccr_pairs = 100;
  c.ccr_foliations = 10;

  const hqft::Report first = hqft::run_suite(c, "all");
  bool all_pass = true;
  for (const auto& k : kCriteria) {
    int checks = 0, failed = 0;
    std::string worst;
    for (const auto& r : first.records) {
      if (r.name.rfind(k.prefix, 0) != 0 || r.informational) continue;
      ++checks;
      if (!r.pass) {
        ++failed;
        if (worst.empty()) worst = r.name;
      }
    }
    const bool pass = checks > 0 && failed == 0;
    all_pass = all_pass && pass;
    std::printf("criterion %2d  %s  %-45s %d checks", k.number, pass ? "PASS" : "FAIL", k.title.c_str(), checks);
    if (failed) std::printf(", %d failed (first: %s)", failed, worst.c_str());
    std::printf("\n");
  }

  const hqft::Report second = hqft::run_suite(c, "all");
  const bool same = first.digest() == second.digest();
  all_pass = all_pass && same;
  std::printf("criterion 10  %s  %-45s %s\n", same ? "PASS" : "FAIL", "determinism of the full-suite digest",
              first.digest().c_str());

  int support = 0, support_failed = 0;
  for (const auto& r : first.records) {
    bool listed = false;
    for (const auto& k : kCriteria) listed = listed || r.name.rfind(k.prefix, 0) == 0;
    if (listed || r.informational) continue;
    ++support;
    support_failed += r.pass ? 0 : 1;
  }
  std::printf("supporting checks: %d, failed %d\n", support, support_failed);
  for (const auto& r : first.records)
    if (!r.pass)
      std::printf("  %s %s residual=%.3e tol=%.1e\n", r.informational ? "info" : "FAIL", r.name.c_str(), r.residual,
                  r.tolerance);
  return all_pass && support_failed == 0 ? 0 : 1;
}
