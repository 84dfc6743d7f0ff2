#pragma once

#include "hqft/packets.hpp"

#include <cmath>
#include <random>

// Seeded generators for property tests. They are independent of the library's own
// random_* helpers so a bug there cannot hide behind matching draws.
namespace gen {

inline std::mt19937_64 rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& r, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(r);
}

inline Eigen::Vector3d unit3(std::mt19937_64& r) {
  // Marsaglia
  for (;;) {
    const double a = uniform(r, -1, 1), b = uniform(r, -1, 1), s = a * a + b * b;
    if (s >= 1.0 || s == 0.0) continue;
    const double t = 2.0 * std::sqrt(1.0 - s);
    return {a * t, b * t, 1.0 - 2.0 * s};
  }
}

inline hqft::LorentzTransform lorentz(std::mt19937_64& r, double rapidity_max) {
  const auto rot = hqft::LorentzTransform::rotation(unit3(r), uniform(r, 0.0, 2.0 * M_PI));
  return hqft::LorentzTransform::boost(uniform(r, 0.0, rapidity_max), unit3(r)) * rot;
}

inline hqft::FoliationVector foliation(std::mt19937_64& r, double rapidity_max) {
  const Eigen::Vector3d v = std::sinh(uniform(r, 0.0, rapidity_max)) * unit3(r);
  return hqft::FoliationVector::from_spatial(v);
}

inline hqft::Covector covector(std::mt19937_64& r, double scale) {
  return {uniform(r, -scale, scale), uniform(r, -scale, scale), uniform(r, -scale, scale), uniform(r, -scale, scale)};
}

// Width = A A^T + s I with A small, so it stays well conditioned.
inline hqft::Mat4 width(std::mt19937_64& r, double lo, double hi) {
  hqft::Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = uniform(r, -0.3, 0.3);
  hqft::Mat4 d = hqft::Mat4::Zero();
  for (int i = 0; i < 4; ++i) d(i, i) = uniform(r, lo, hi);
  return d * d + a * a.transpose();
}

inline hqft::GaussianPacket packet(std::mt19937_64& r) {
  hqft::GaussianPacket p;
  p.amplitude = hqft::Complex(uniform(r, 0.5, 1.5), uniform(r, -0.5, 0.5));
  p.center = hqft::FourVector(uniform(r, -1, 1), uniform(r, -1, 1), uniform(r, -1, 1), uniform(r, -1, 1));
  p.carrier = covector(r, 0.8);
  p.width = width(r, 0.7, 1.3);
  return p;
}

inline hqft::TestFunction real_function(std::mt19937_64& r) {
  return hqft::TestFunction::real_part_of(packet(r)) + hqft::TestFunction::real_part_of(packet(r));
}

}  // namespace gen
