#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace hqft {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// Metric signature (+,-,-,-); units with hbar = tau = 1.
const Mat4& metric();

class Covector;

// Contravariant components V^mu.
class FourVector {
 public:
  FourVector() : v_(Vec4::Zero()) {}
  FourVector(double t, double x, double y, double z) : v_(t, x, y, z) {}
  explicit FourVector(const Vec4& v) : v_(v) {}

  double operator[](int mu) const { return v_[mu]; }
  const Vec4& components() const { return v_; }
  Covector lowered() const;

  FourVector operator+(const FourVector& o) const { return FourVector(v_ + o.v_); }
  FourVector operator-(const FourVector& o) const { return FourVector(v_ - o.v_); }
  FourVector operator*(double s) const { return FourVector(v_ * s); }

 private:
  Vec4 v_;
};

// Covariant components k_mu.
class Covector {
 public:
  Covector() : k_(Vec4::Zero()) {}
  Covector(double k0, double k1, double k2, double k3) : k_(k0, k1, k2, k3) {}
  explicit Covector(const Vec4& k) : k_(k) {}

  double operator[](int mu) const { return k_[mu]; }
  const Vec4& components() const { return k_; }
  FourVector raised() const;

  Covector operator+(const Covector& o) const { return Covector(k_ + o.k_); }
  Covector operator-(const Covector& o) const { return Covector(k_ - o.k_); }
  Covector operator*(double s) const { return Covector(k_ * s); }

 private:
  Vec4 k_;
};

double minkowski_dot(const FourVector& a, const FourVector& b);
double minkowski_dot(const Covector& a, const Covector& b);
// k_mu v^mu
double contract(const Covector& k, const FourVector& v);

class LorentzTransform {
 public:
  LorentzTransform() : m_(Mat4::Identity()) {}

  static LorentzTransform identity() { return {}; }
  // Throws std::invalid_argument unless M^T eta M = eta and M^0_0 > 0, det M = +1.
  static LorentzTransform from_matrix(const Mat4& m, double tol = 1e-10);
  static LorentzTransform boost(double rapidity, const Eigen::Vector3d& direction);
  static LorentzTransform rotation(const Eigen::Vector3d& axis, double angle);

  const Mat4& matrix() const { return m_; }
  LorentzTransform inverse() const;
  LorentzTransform operator*(const LorentzTransform& o) const;

  FourVector apply(const FourVector& v) const;
  // Covectors go to k Lambda^{-1} so that k_mu v^mu is invariant.
  Covector apply(const Covector& k) const;

  // Largest deviation |(M^T eta M - eta)_{ij}|.
  double defect() const;

 private:
  explicit LorentzTransform(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

FourVector lorentz_apply(const LorentzTransform& lambda, const FourVector& v);

// Future unit timelike vector, n.n = 1 and n^0 > 0.
class FoliationVector {
 public:
  FoliationVector() : n_(1.0, 0.0, 0.0, 0.0) {}

  static FoliationVector rest() { return {}; }
  // Chart (chi, theta, phi): n = (cosh chi, sinh chi * unit(theta, phi)).
  static FoliationVector from_chart(double rapidity, double theta, double phi);
  // Throws std::invalid_argument if |n.n - 1| > tol or n^0 <= 0.
  static FoliationVector from_components(const FourVector& n, double tol = 1e-12);
  // Rebuilds n^0 from the spatial part, which keeps n on the hyperboloid at any rapidity.
  static FoliationVector from_spatial(const Eigen::Vector3d& spatial);

  const FourVector& vector() const { return n_; }
  Covector lowered() const { return n_.lowered(); }
  double operator[](int mu) const { return n_[mu]; }
  double rapidity() const;
  FoliationVector transformed(const LorentzTransform& lambda) const;

 private:
  explicit FoliationVector(const FourVector& n) : n_(n) {}
  FourVector n_;
};

// Boost with rapidity acosh(n^0) along the spatial direction of n; maps rest() to n.
LorentzTransform boost_to(const FoliationVector& n);

struct FoliationSample {
  std::vector<FoliationVector> nodes;
  std::vector<double> weights;
  double rapidity_max = 0.0;
};

// Product rule on the cap chi <= rapidity_max of the invariant measure
// sinh^2 chi dchi dOmega: Gauss-Legendre in chi and cos theta, trapezoid in phi.
FoliationSample sample_hyperboloid(double rapidity_max, int n_radial, int n_angular);

std::string describe(const FourVector& v);

}  // namespace hqft
