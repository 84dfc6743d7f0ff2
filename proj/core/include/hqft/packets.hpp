#pragma once

#include "hqft/minkowski.hpp"
#include "hqft/symbol.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hqft {

// f(X) = amplitude * exp(i K.(X - X0)) * exp(-1/2 (X - X0)^T Sigma^{-1} (X - X0)),
// where K.(X - X0) = K_mu (X - X0)^mu and Sigma is the positive-definite width matrix.
struct GaussianPacket {
  Complex amplitude = 1.0;
  FourVector center;
  Covector carrier;
  Mat4 width = Mat4::Identity();

  // Throws std::invalid_argument if the width is not symmetric positive definite.
  void validate() const;
  GaussianPacket conjugate() const;
  Complex evaluate(const FourVector& x) const;
  // Convention f~(k) = int d^4X f(X) exp(-i k_mu X^mu).
  Complex fourier(const CVec4& k) const;
  std::string key() const;
};

// Finite linear combination of Gaussian packets.
class TestFunction {
 public:
  TestFunction() = default;
  explicit TestFunction(std::vector<GaussianPacket> packets);
  static TestFunction single(const GaussianPacket& p) { return TestFunction({p}); }
  // p + conj(p): a real test function.
  static TestFunction real_part_of(const GaussianPacket& p);

  const std::vector<GaussianPacket>& packets() const { return packets_; }
  bool empty() const { return packets_.empty(); }

  TestFunction conjugate() const;
  TestFunction operator+(const TestFunction& o) const;
  TestFunction operator*(Complex s) const;

  Complex evaluate(const FourVector& x) const;
  Complex fourier(const Covector& k) const { return fourier(k.components().cast<Complex>()); }
  Complex fourier(const CVec4& k) const;
  std::string key() const;

 private:
  std::vector<GaussianPacket> packets_;
};

// Standardised Gauss-Hermite product rule for the weight exp(-|z|^2 / 2) on R^4.
// Each packet pair maps it onto its own Gaussian envelope; `extent` dilates the
// nodes relative to that envelope (1 = the natural Gauss-Hermite scaling).
struct QuadratureGrid {
  std::vector<Vec4> nodes;
  std::vector<double> weights;
  double extent = 1.0;
  int points_per_axis = 0;
};

QuadratureGrid build_quadrature(double extent, int points_per_axis);

std::function<Complex(const Covector&)> fourier_transform(const TestFunction& f);
SymbolFunction gamma_symbol(const FoliationVector& n, double mass);

// f -> f o T^{-1} for T(X) = Lambda X + a.
GaussianPacket poincare_act(const LorentzTransform& lambda, const FourVector& a, const GaussianPacket& p);
TestFunction poincare_act(const LorentzTransform& lambda, const FourVector& a, const TestFunction& f);

// <f, A g> = int d^4k / (2 pi)^4 conj(f~(k)) A(k) g~(k).
// Polynomial symbols use a reduced exact rule; all others use the grid after a
// contour shift that removes the oscillation caused by separated centers.
Complex weighted_inner(const TestFunction& f, const SymbolFunction& a, const TestFunction& g,
                       const QuadratureGrid& grid);

// sqrt(<f, f>) by quadrature.
double l2_norm(const TestFunction& f, const QuadratureGrid& grid);

// Deterministic tree summation.
Complex pairwise_sum(const std::vector<Complex>& v);

}  // namespace hqft
