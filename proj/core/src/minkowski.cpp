#include "hqft/minkowski.hpp"
#include "hqft/quadrature_rules.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace hqft {

const Mat4& metric() {
  static const Mat4 eta = Vec4(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return eta;
}

Covector FourVector::lowered() const { return Covector(metric() * v_); }
FourVector Covector::raised() const { return FourVector(metric() * k_); }

double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

double minkowski_dot(const Covector& a, const Covector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

double contract(const Covector& k, const FourVector& v) { return k.components().dot(v.components()); }

double LorentzTransform::defect() const {
  return (m_.transpose() * metric() * m_ - metric()).cwiseAbs().maxCoeff();
}

LorentzTransform LorentzTransform::from_matrix(const Mat4& m, double tol) {
  LorentzTransform l(m);
  // Entries grow like cosh(chi)^2 under large boosts, so scale the tolerance.
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff());
  if (l.defect() > tol * scale) throw std::invalid_argument("LorentzTransform: matrix does not preserve the metric");
  if (m(0, 0) <= 0.0) throw std::invalid_argument("LorentzTransform: not orthochronous");
  if (m.determinant() <= 0.0) throw std::invalid_argument("LorentzTransform: not proper");
  return l;
}

LorentzTransform LorentzTransform::boost(double rapidity, const Eigen::Vector3d& direction) {
  const double len = direction.norm();
  if (!(len > 0.0)) {
    if (rapidity == 0.0) return identity();
    throw std::invalid_argument("LorentzTransform::boost: zero direction");
  }
  const Eigen::Vector3d u = direction / len;
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  Mat4 m = Mat4::Identity();
  m(0, 0) = ch;
  for (int i = 0; i < 3; ++i) {
    m(0, i + 1) = sh * u[i];
    m(i + 1, 0) = sh * u[i];
    for (int j = 0; j < 3; ++j) m(i + 1, j + 1) += (ch - 1.0) * u[i] * u[j];
  }
  return LorentzTransform(m);
}

LorentzTransform LorentzTransform::rotation(const Eigen::Vector3d& axis, double angle) {
  const double len = axis.norm();
  if (!(len > 0.0)) throw std::invalid_argument("LorentzTransform::rotation: zero axis");
  Mat4 m = Mat4::Identity();
  m.block<3, 3>(1, 1) = Eigen::AngleAxisd(angle, axis / len).toRotationMatrix();
  return LorentzTransform(m);
}

LorentzTransform LorentzTransform::inverse() const {
  return LorentzTransform(metric() * m_.transpose() * metric());
}

LorentzTransform LorentzTransform::operator*(const LorentzTransform& o) const { return LorentzTransform(m_ * o.m_); }

FourVector LorentzTransform::apply(const FourVector& v) const { return FourVector(m_ * v.components()); }

Covector LorentzTransform::apply(const Covector& k) const {
  // (k Lambda^{-1})_nu = k_mu (Lambda^{-1})^mu_nu
  const Mat4 inv = metric() * m_.transpose() * metric();
  return Covector(inv.transpose() * k.components());
}

FourVector lorentz_apply(const LorentzTransform& lambda, const FourVector& v) { return lambda.apply(v); }

FoliationVector FoliationVector::from_chart(double rapidity, double theta, double phi) {
  if (rapidity < 0.0) throw std::invalid_argument("FoliationVector::from_chart: negative rapidity");
  const double sh = std::sinh(rapidity);
  return FoliationVector(FourVector(std::cosh(rapidity), sh * std::sin(theta) * std::cos(phi),
                                    sh * std::sin(theta) * std::sin(phi), sh * std::cos(theta)));
}

FoliationVector FoliationVector::from_components(const FourVector& n, double tol) {
  if (!(n[0] > 0.0)) throw std::invalid_argument("FoliationVector: n^0 must be positive");
  const double norm = minkowski_dot(n, n);
  if (!(std::abs(norm - 1.0) <= tol)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "FoliationVector: n.n = %.17g is not 1", norm);
    throw std::invalid_argument(buf);
  }
  return FoliationVector(n);
}

FoliationVector FoliationVector::from_spatial(const Eigen::Vector3d& s) {
  return FoliationVector(FourVector(std::sqrt(1.0 + s.squaredNorm()), s[0], s[1], s[2]));
}

double FoliationVector::rapidity() const { return std::asinh(n_.components().tail<3>().norm()); }

FoliationVector FoliationVector::transformed(const LorentzTransform& lambda) const {
  const FourVector m = lambda.apply(n_);
  return from_spatial(m.components().tail<3>());
}

LorentzTransform boost_to(const FoliationVector& n) {
  const Eigen::Vector3d s = n.vector().components().tail<3>();
  if (s.norm() == 0.0) return LorentzTransform::identity();
  return LorentzTransform::boost(n.rapidity(), s);
}

FoliationSample sample_hyperboloid(double rapidity_max, int n_radial, int n_angular) {
  if (!(rapidity_max > 0.0) || n_radial < 1 || n_angular < 1)
    throw std::invalid_argument("sample_hyperboloid: need rapidity_max > 0 and positive node counts");
  const Rule1D gr = gauss_legendre(n_radial);
  const Rule1D gt = gauss_legendre(n_angular);
  const int n_phi = 2 * n_angular - 1;
  FoliationSample s;
  s.rapidity_max = rapidity_max;
  for (int i = 0; i < n_radial; ++i) {
    const double chi = 0.5 * rapidity_max * (gr.nodes[i] + 1.0);
    const double wchi = 0.5 * rapidity_max * gr.weights[i] * std::sinh(chi) * std::sinh(chi);
    for (int j = 0; j < n_angular; ++j) {
      const double theta = std::acos(gt.nodes[j]);
      for (int l = 0; l < n_phi; ++l) {
        const double phi = 2.0 * std::numbers::pi * l / n_phi;
        s.nodes.push_back(FoliationVector::from_chart(chi, theta, phi));
        s.weights.push_back(wchi * gt.weights[j] * 2.0 * std::numbers::pi / n_phi);
      }
    }
  }
  return s;
}

std::string describe(const FourVector& v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g, %.6g)", v[0], v[1], v[2], v[3]);
  return buf;
}

Rule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Rule1D r;
  for (int k = 0; k < n; ++k) {
    r.nodes.push_back(es.eigenvalues()[k]);
    const double v = es.eigenvectors()(0, k);
    r.weights.push_back(2.0 * v * v);
  }
  return r;
}

Rule1D gauss_hermite_standard(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite_standard: n < 1");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(double(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Rule1D r;
  for (int k = 0; k < n; ++k) {
    r.nodes.push_back(es.eigenvalues()[k]);
    const double v = es.eigenvectors()(0, k);
    r.weights.push_back(v * v);
  }
  return r;
}

Rule1D gauss_jacobi_unit(int n, double beta) {
  if (n < 1 || !(beta > -1.0)) throw std::invalid_argument("gauss_jacobi_unit: need n >= 1 and beta > -1");
  // Jacobi weight (1 + x)^beta on [-1, 1] (alpha = 0), then u = (1 + x) / 2.
  const double a = 0.0, b = beta;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    j(k, k) = k == 0 ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double kk = k + 1.0, t = 2.0 * kk + a + b;
      j(k, k + 1) = j(k + 1, k) =
          std::sqrt(4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (t * t * (t + 1.0) * (t - 1.0)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  const double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 2.0);
  Rule1D r;
  for (int k = 0; k < n; ++k) {
    const double v = es.eigenvectors()(0, k);
    r.nodes.push_back(0.5 * (es.eigenvalues()[k] + 1.0));
    r.weights.push_back(mu0 * v * v * std::pow(0.5, b + 1.0));
  }
  return r;
}

}  // namespace hqft
