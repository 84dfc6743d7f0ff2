#pragma once

#include "hqft/minkowski.hpp"
#include "hqft/packets.hpp"

#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqft {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BoostSpec {
  double rapidity = 0.0;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();
  LorentzTransform transform() const { return LorentzTransform::boost(rapidity, direction); }
};

struct RandomPacketSpec {
  double center_spread = 1.0;
  double carrier_spread = 1.0;
  double width_min = 0.6;
  double width_max = 1.4;
  double shear = 0.2;  // off-diagonal width perturbation
};

struct RunConfig {
  long long seed = 20240611;
  double mass = 1.0;

  double quadrature_extent = 1.0;
  int quadrature_points = 12;

  std::map<std::string, GaussianPacket> dictionary;
  RandomPacketSpec random_packets;

  std::vector<int> lattice_sites{4, 6, 8};
  double lattice_half_widths = 4.0;

  double sample_rapidity_max = 3.0;
  int sample_radial = 16;
  int sample_angular = 8;

  int fock_modes = 3;
  int fock_n_max = 3;

  std::vector<BoostSpec> boosts;
  std::vector<FourVector> translations;

  std::map<std::string, double> tolerances;

  double pi_variant_b = 1.0;
  // Internal time s(n) = sum_mu c_mu n^mu + c_4, checked non-negative on the sample.
  std::vector<double> internal_time{0.0, 0.0, 0.0, 0.0, 1.0};

  int foliation_d_max = 4;

  double bogoliubov_rapidity = 2.0;
  std::vector<double> cutoffs{4.0, 8.0, 16.0};
  int ball_radial = 16, ball_polar = 24, ball_azimuth = 24;

  // Workload sizes for the suites.
  int ccr_pairs = 20;
  int ccr_foliations = 4;
  int property_samples = 200;

  std::string digest_source;  // canonical text of the parsed config

  QuadratureGrid grid() const { return build_quadrature(quadrature_extent, quadrature_points); }
  double tolerance(const std::string& key) const;
  std::string digest() const;
};

// Throws ConfigError naming the offending key.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
RunConfig default_config();

// Seeded draws used by suites and tests.
GaussianPacket random_packet(std::mt19937_64& rng, const RandomPacketSpec& spec);
// packet + conjugate partner
TestFunction random_real_test_function(std::mt19937_64& rng, const RandomPacketSpec& spec);
FoliationVector random_foliation(std::mt19937_64& rng, double rapidity_max);
LorentzTransform random_lorentz(std::mt19937_64& rng, double rapidity_max);

}  // namespace hqft
