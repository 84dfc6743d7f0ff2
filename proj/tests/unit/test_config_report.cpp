#include "hqft/config.hpp"
#include "hqft/report.hpp"
#include "hqft/suites.hpp"

#include <doctest.h>

#include <cmath>

using namespace hqft;

TEST_CASE("config errors name the offending key") {
  auto fails_with = [](const std::string& text, const std::string& key) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what()).find(key) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_with("{not json", "JSON"));
  CHECK(fails_with(R"({"colour": 1})", "colour"));
  CHECK(fails_with(R"({"mass": -1})", "mass"));
  CHECK(fails_with(R"({"mass": "heavy"})", "mass"));
  CHECK(fails_with(R"({"seed": 1.5})", "seed"));
  CHECK(fails_with(R"({"foliation": {"d_max": 12}})", "foliation.d_max"));
  CHECK(fails_with(R"({"tolerances": {"nonsense": 1e-3}})", "tolerances.nonsense"));
  CHECK(fails_with(R"({"tolerances": {"ccr": -1}})", "tolerances.ccr"));
  CHECK(fails_with(R"({"boosts": [{"rapidity": 1, "direction": [0, 0, 0]}]})", "boosts[0].direction"));
  CHECK(fails_with(R"({"lattice": {"sites": [4, 1]}})", "lattice.sites"));
  CHECK(fails_with(R"({"bogoliubov": {"cutoffs": [4, -8]}})", "bogoliubov.cutoffs"));
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config parsing and digests") {
  const RunConfig a = parse_config(R"({"seed": 7, "mass": 2.0, "workload": {"ccr_pairs": 3}})");
  CHECK(a.seed == 7);
  CHECK(a.mass == 2.0);
  CHECK(a.ccr_pairs == 3);
  CHECK(a.tolerance("ccr") == 1e-6);
  CHECK(a.digest() == parse_config(R"({"seed": 7, "mass": 2.0, "workload": {"ccr_pairs": 3}})").digest());
  CHECK(a.digest() != parse_config(R"({"seed": 8, "mass": 2.0, "workload": {"ccr_pairs": 3}})").digest());
  CHECK_THROWS(a.tolerance("no_such_key"));
}

TEST_CASE("records and reports") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const TestRecord ok = make_record("x.a", "a = a", "in", 1e-9, 1e-8);
  const TestRecord bad = make_record("x.b", "b = b", "in", 1e-7, 1e-8);
  const TestRecord info = make_record("x.c", "c = c", "in", 1.0, 1e-8, true);
  const TestRecord nan = make_record("x.d", "d = d", "in", std::nan(""), 1e-8);
  CHECK(ok.pass);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(nan.pass);
  Report r;
  r.append({ok, info});
  CHECK(r.all_pass());
  r.append({bad});
  CHECK(r.failures() == 1);
  Report s = r;
  CHECK(r.digest() == s.digest());
  s.records[0].residual = 2e-9;
  CHECK(r.digest() != s.digest());
  CHECK(r.full_json().find(r.digest()) != std::string::npos);
}

TEST_CASE("suites and sweeps") {
  RunConfig c = default_config();
  CHECK_THROWS_AS(run_suite(c, "everything"), UnknownName);
  CHECK_THROWS_AS(run_sweep(c, "nothing"), UnknownName);
  const Report g1 = run_suite(c, "geometry"), g2 = run_suite(c, "geometry");
  CHECK(g1.all_pass());
  CHECK(g1.digest() == g2.digest());
  c.seed += 1;
  CHECK(run_suite(c, "geometry").digest() != g1.digest());
  const SweepTable q = run_sweep(c, "quadrature");
  CHECK(q.monotone);
  CHECK(q.rows.back().error < 1e-9);
  CHECK(q.csv().rfind("points_per_axis,value,error_estimate\n", 0) == 0);
  CHECK(log_log_slope({1, 2, 4, 8}, {3, 48, 768, 12288}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS(log_log_slope({1}, {1}));
}
