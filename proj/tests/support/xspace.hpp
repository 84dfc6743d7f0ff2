#pragma once

#include "hqft/packets.hpp"

#include <array>
#include <cmath>

// Direct-space oracles: closed-form Gaussian overlaps and a lattice Riemann sum,
// neither of which touches the momentum-space machinery under test.
namespace xspace {

using hqft::Complex;
using hqft::Mat4;
using hqft::Vec4;

// int conj(p(X)) q(X) d^4X in closed form.
inline Complex overlap(const hqft::GaussianPacket& p, const hqft::GaussianPacket& q) {
  const Mat4 sp = p.width.inverse(), sq = q.width.inverse();
  const Mat4 a = sp + sq;
  const Vec4 xp = p.center.components(), xq = q.center.components();
  const Vec4 kp = p.carrier.components(), kq = q.carrier.components();
  const Eigen::Matrix<Complex, 4, 1> b =
      (sp * xp + sq * xq).cast<Complex>() + Complex(0, 1) * (kq - kp).cast<Complex>();
  const Complex c = -0.5 * xp.dot(sp * xp) - 0.5 * xq.dot(sq * xq) + Complex(0, 1) * (kp.dot(xp) - kq.dot(xq));
  const Eigen::Matrix<Complex, 4, 1> ab = a.inverse().cast<Complex>() * b;
  const Complex quad = 0.5 * (b.transpose() * ab)(0, 0);
  return std::conj(p.amplitude) * q.amplitude * 4.0 * M_PI * M_PI / std::sqrt(a.determinant()) * std::exp(quad + c);
}

inline Complex overlap(const hqft::TestFunction& f, const hqft::TestFunction& g) {
  Complex s = 0.0;
  for (const auto& p : f.packets())
    for (const auto& q : g.packets()) s += overlap(p, q);
  return s;
}

// First and second derivatives of a packet at X, from the closed form.
struct Jet {
  Complex value;
  Eigen::Matrix<Complex, 4, 1> d;
  Eigen::Matrix<Complex, 4, 4> dd;
};

inline Jet jet(const hqft::TestFunction& f, const Vec4& x) {
  Jet j{0.0, Eigen::Matrix<Complex, 4, 1>::Zero(), Eigen::Matrix<Complex, 4, 4>::Zero()};
  for (const auto& p : f.packets()) {
    const Mat4 si = p.width.inverse();
    const Vec4 u = x - p.center.components();
    const Complex v = p.amplitude * std::exp(Complex(-0.5 * u.dot(si * u), p.carrier.components().dot(u)));
    const Eigen::Matrix<Complex, 4, 1> g = Complex(0, 1) * p.carrier.components().cast<Complex>() - (si * u).cast<Complex>();
    j.value += v;
    j.d += v * g;
    j.dd += v * (g * g.transpose() - si.cast<Complex>());
  }
  return j;
}

// Riemann sum of F(X) over the cube [-half, half]^4 with `n` points per axis.
template <class F>
Complex lattice_sum(F&& fn, double half, int n) {
  const double h = 2.0 * half / n;
  Complex s = 0.0;
  Vec4 x;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          x << -half + (a + 0.5) * h, -half + (b + 0.5) * h, -half + (c + 0.5) * h, -half + (d + 0.5) * h;
          s += fn(x);
        }
  return s * std::pow(h, 4);
}

}  // namespace xspace
