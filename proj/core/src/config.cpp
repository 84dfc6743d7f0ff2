#include "hqft/config.hpp"
#include "hqft/report.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace hqft {

namespace {

using nlohmann::json;

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"geometry", 1e-12},        {"symbol_identity", 1e-12}, {"quadrature", 1e-6},   {"ccr", 1e-6},
      {"ccr_zero", 1e-8},         {"covariance", 1e-8},       {"jacobi", 1e-8},       {"slope", 0.2},
      {"hermitian", 1e-10},       {"one_particle", 1e-6},     {"peaked_energy", 0.02}, {"momentum", 1e-6},
      {"transverse", 1e-8},       {"w_unitarity", 1e-5},      {"group_law", 1e-6},    {"cocycle", 1e-8},
      {"w_covariance", 1e-6},     {"correspondence", 0.05},   {"bundle_ccr", 1e-6},   {"pi_variant", 1e-6},
      {"intertwiner_norm", 1e-6}, {"classical", 1e-12},  {"classical_jacobi", 1e-10}, {"rounding", 1e-12},
      {"separation", 1e-8},      {"power_compose", 1e-14}};
  return t;
}

[[noreturn]] void fail(const std::string& key, const std::string& msg) { throw ConfigError("config key '" + key + "': " + msg); }

double get_number(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) fail(path + key, "missing");
  if (!j.at(key).is_number()) fail(path + key, "expected a number");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) fail(path + key, "must be finite");
  return v;
}

int get_int(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) fail(path + key, "missing");
  if (!j.at(key).is_number_integer()) fail(path + key, "expected an integer");
  return j.at(key).get<int>();
}

std::vector<double> get_array(const json& j, const std::string& key, const std::string& path, size_t n) {
  if (!j.contains(key)) fail(path + key, "missing");
  const json& a = j.at(key);
  if (!a.is_array() || (n && a.size() != n))
    fail(path + key, "expected an array" + (n ? " of " + std::to_string(n) + " numbers" : std::string()));
  std::vector<double> out;
  for (const auto& x : a) {
    if (!x.is_number()) fail(path + key, "array entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  if (!j.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(path + it.key(), "unknown key");
}

GaussianPacket parse_packet(const json& j, const std::string& path) {
  check_keys(j, {"amplitude", "center", "carrier", "width"}, path);
  GaussianPacket p;
  const auto a = get_array(j, "amplitude", path, 2);
  p.amplitude = Complex(a[0], a[1]);
  const auto c = get_array(j, "center", path, 4);
  p.center = FourVector(c[0], c[1], c[2], c[3]);
  const auto k = get_array(j, "carrier", path, 4);
  p.carrier = Covector(k[0], k[1], k[2], k[3]);
  const auto w = get_array(j, "width", path, 16);
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) p.width(r, s) = w[4 * r + s];
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    fail(path + "width", e.what());
  }
  return p;
}

}  // namespace

double RunConfig::tolerance(const std::string& key) const {
  auto it = tolerances.find(key);
  if (it != tolerances.end()) return it->second;
  auto d = default_tolerances().find(key);
  if (d == default_tolerances().end()) throw ConfigError("unknown tolerance '" + key + "'");
  return d->second;
}

std::string RunConfig::digest() const { return sha256_hex(digest_source); }

RunConfig default_config() {
  RunConfig c;
  c.boosts = {{0.3, Eigen::Vector3d(0, 0, 1)}, {0.5, Eigen::Vector3d(1, 1, 0)}, {0.2, Eigen::Vector3d(-1, 0, 2)}};
  c.translations = {FourVector(0.5, -0.25, 0.0, 1.0)};
  c.digest_source = "default";
  return c;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, {"seed", "mass", "quadrature", "packets", "lattice", "foliation_sample", "truncation", "boosts",
                 "translations", "tolerances", "variants", "foliation", "bogoliubov", "workload"},
             "");
  RunConfig c = default_config();
  c.digest_source = j.dump();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) fail("seed", "expected an integer");
    c.seed = j["seed"].get<long long>();
  }
  if (j.contains("mass")) {
    c.mass = get_number(j, "mass", "");
    if (!(c.mass > 0.0)) fail("mass", "must be positive");
  }
  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    check_keys(q, {"extent", "points_per_axis"}, "quadrature.");
    if (q.contains("extent")) c.quadrature_extent = get_number(q, "extent", "quadrature.");
    if (q.contains("points_per_axis")) c.quadrature_points = get_int(q, "points_per_axis", "quadrature.");
    if (!(c.quadrature_extent > 0.0)) fail("quadrature.extent", "must be positive");
    if (c.quadrature_points < 2 || c.quadrature_points > 40) fail("quadrature.points_per_axis", "must be in [2, 40]");
  }
  if (j.contains("packets")) {
    const json& p = j["packets"];
    check_keys(p, {"dictionary", "random"}, "packets.");
    if (p.contains("dictionary")) {
      const json& d = p["dictionary"];
      if (!d.is_object()) fail("packets.dictionary", "expected an object of named packets");
      for (auto it = d.begin(); it != d.end(); ++it)
        c.dictionary[it.key()] = parse_packet(it.value(), "packets.dictionary." + it.key() + ".");
    }
    if (p.contains("random")) {
      const json& r = p["random"];
      const std::string path = "packets.random.";
      check_keys(r, {"center_spread", "carrier_spread", "width_min", "width_max", "shear"}, path);
      auto& s = c.random_packets;
      if (r.contains("center_spread")) s.center_spread = get_number(r, "center_spread", path);
      if (r.contains("carrier_spread")) s.carrier_spread = get_number(r, "carrier_spread", path);
      if (r.contains("width_min")) s.width_min = get_number(r, "width_min", path);
      if (r.contains("width_max")) s.width_max = get_number(r, "width_max", path);
      if (r.contains("shear")) s.shear = get_number(r, "shear", path);
      if (!(s.width_min > 0.0) || s.width_max < s.width_min) fail(path + "width_min", "need 0 < width_min <= width_max");
      if (s.shear < 0.0 || s.shear >= 0.3) fail(path + "shear", "must be in [0, 0.3)");
    }
  }
  if (j.contains("lattice")) {
    const json& l = j["lattice"];
    check_keys(l, {"sites", "half_widths"}, "lattice.");
    if (l.contains("sites")) {
      c.lattice_sites.clear();
      for (double v : get_array(l, "sites", "lattice.", 0)) {
        if (v < 2 || v != std::floor(v)) fail("lattice.sites", "entries must be integers >= 2");
        c.lattice_sites.push_back(static_cast<int>(v));
      }
    }
    if (l.contains("half_widths")) c.lattice_half_widths = get_number(l, "half_widths", "lattice.");
  }
  if (j.contains("foliation_sample")) {
    const json& s = j["foliation_sample"];
    check_keys(s, {"rapidity_max", "n_radial", "n_angular"}, "foliation_sample.");
    if (s.contains("rapidity_max")) c.sample_rapidity_max = get_number(s, "rapidity_max", "foliation_sample.");
    if (s.contains("n_radial")) c.sample_radial = get_int(s, "n_radial", "foliation_sample.");
    if (s.contains("n_angular")) c.sample_angular = get_int(s, "n_angular", "foliation_sample.");
    if (!(c.sample_rapidity_max > 0.0)) fail("foliation_sample.rapidity_max", "must be positive");
    if (c.sample_radial < 1 || c.sample_angular < 1) fail("foliation_sample.n_radial", "node counts must be positive");
  }
  if (j.contains("truncation")) {
    const json& t = j["truncation"];
    check_keys(t, {"modes", "n_max"}, "truncation.");
    if (t.contains("modes")) c.fock_modes = get_int(t, "modes", "truncation.");
    if (t.contains("n_max")) c.fock_n_max = get_int(t, "n_max", "truncation.");
    if (c.fock_modes < 1 || c.fock_modes > 6) fail("truncation.modes", "must be in [1, 6]");
    if (c.fock_n_max < 1 || c.fock_n_max > 6) fail("truncation.n_max", "must be in [1, 6]");
  }
  if (j.contains("boosts")) {
    if (!j["boosts"].is_array()) fail("boosts", "expected an array");
    c.boosts.clear();
    for (size_t i = 0; i < j["boosts"].size(); ++i) {
      const std::string path = "boosts[" + std::to_string(i) + "].";
      const json& b = j["boosts"][i];
      check_keys(b, {"rapidity", "direction"}, path);
      BoostSpec s;
      s.rapidity = get_number(b, "rapidity", path);
      const auto d = get_array(b, "direction", path, 3);
      s.direction = Eigen::Vector3d(d[0], d[1], d[2]);
      if (s.direction.norm() == 0.0) fail(path + "direction", "must be non-zero");
      c.boosts.push_back(s);
    }
  }
  if (j.contains("translations")) {
    if (!j["translations"].is_array()) fail("translations", "expected an array");
    c.translations.clear();
    json wrap;
    for (size_t i = 0; i < j["translations"].size(); ++i) {
      wrap["t"] = j["translations"][i];
      const auto a = get_array(wrap, "t", "translations[" + std::to_string(i) + "]", 4);
      c.translations.emplace_back(a[0], a[1], a[2], a[3]);
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) fail("tolerances", "expected an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (!default_tolerances().count(it.key())) fail("tolerances." + it.key(), "unknown tolerance");
      const double v = get_number(t, it.key(), "tolerances.");
      if (!(v > 0.0)) fail("tolerances." + it.key(), "must be positive");
      c.tolerances[it.key()] = v;
    }
  }
  if (j.contains("variants")) {
    const json& v = j["variants"];
    check_keys(v, {"pi_variant_b", "internal_time"}, "variants.");
    if (v.contains("pi_variant_b")) c.pi_variant_b = get_number(v, "pi_variant_b", "variants.");
    if (v.contains("internal_time")) c.internal_time = get_array(v, "internal_time", "variants.", 5);
  }
  if (j.contains("foliation")) {
    const json& f = j["foliation"];
    check_keys(f, {"d_max"}, "foliation.");
    if (f.contains("d_max")) c.foliation_d_max = get_int(f, "d_max", "foliation.");
    if (c.foliation_d_max < 2 || c.foliation_d_max > 8) fail("foliation.d_max", "must be in [2, 8]");
  }
  if (j.contains("bogoliubov")) {
    const json& b = j["bogoliubov"];
    const std::string path = "bogoliubov.";
    check_keys(b, {"n_prime_rapidity", "cutoffs", "radial_per_panel", "polar", "azimuth"}, path);
    if (b.contains("n_prime_rapidity")) c.bogoliubov_rapidity = get_number(b, "n_prime_rapidity", path);
    if (b.contains("cutoffs")) c.cutoffs = get_array(b, "cutoffs", path, 0);
    if (b.contains("radial_per_panel")) c.ball_radial = get_int(b, "radial_per_panel", path);
    if (b.contains("polar")) c.ball_polar = get_int(b, "polar", path);
    if (b.contains("azimuth")) c.ball_azimuth = get_int(b, "azimuth", path);
    if (c.bogoliubov_rapidity < 0.0) fail(path + "n_prime_rapidity", "must be non-negative");
    for (double r : c.cutoffs)
      if (!(r > 0.0)) fail(path + "cutoffs", "cutoffs must be positive");
  }
  if (j.contains("workload")) {
    const json& w = j["workload"];
    check_keys(w, {"ccr_pairs", "ccr_foliations", "property_samples"}, "workload.");
    if (w.contains("ccr_pairs")) c.ccr_pairs = get_int(w, "ccr_pairs", "workload.");
    if (w.contains("ccr_foliations")) c.ccr_foliations = get_int(w, "ccr_foliations", "workload.");
    if (w.contains("property_samples")) c.property_samples = get_int(w, "property_samples", "workload.");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

GaussianPacket random_packet(std::mt19937_64& rng, const RandomPacketSpec& s) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(s.width_min, s.width_max);
  GaussianPacket p;
  p.amplitude = Complex(u(rng), u(rng));
  if (std::abs(p.amplitude) < 0.2) p.amplitude += 0.5;
  p.center = FourVector(s.center_spread * u(rng), s.center_spread * u(rng), s.center_spread * u(rng),
                        s.center_spread * u(rng));
  p.carrier = Covector(s.carrier_spread * u(rng), s.carrier_spread * u(rng), s.carrier_spread * u(rng),
                       s.carrier_spread * u(rng));
  Vec4 sig;
  for (int i = 0; i < 4; ++i) sig[i] = w(rng);
  // Correlation matrix with small off-diagonal entries stays positive definite.
  Mat4 corr = Mat4::Identity();
  for (int i = 0; i < 4; ++i)
    for (int k = i + 1; k < 4; ++k) corr(i, k) = corr(k, i) = s.shear * u(rng);
  p.width = sig.asDiagonal() * corr * sig.asDiagonal();
  p.validate();
  return p;
}

TestFunction random_real_test_function(std::mt19937_64& rng, const RandomPacketSpec& spec) {
  return TestFunction::real_part_of(random_packet(rng, spec));
}

FoliationVector random_foliation(std::mt19937_64& rng, double rapidity_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double chi = rapidity_max * u(rng);
  const double theta = std::acos(2.0 * u(rng) - 1.0);
  const double phi = 2.0 * std::numbers::pi * u(rng);
  return FoliationVector::from_chart(chi, theta, phi);
}

LorentzTransform random_lorentz(std::mt19937_64& rng, double rapidity_max) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::Vector3d d(g(rng), g(rng), g(rng)), a(g(rng), g(rng), g(rng));
  return LorentzTransform::boost(rapidity_max * u(rng), d) *
         LorentzTransform::rotation(a, 2.0 * std::numbers::pi * u(rng));
}

}  // namespace hqft
