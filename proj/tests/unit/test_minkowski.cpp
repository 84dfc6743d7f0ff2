#include "generators.hpp"
#include "hqft/minkowski.hpp"
#include "hqft/quadrature_rules.hpp"

#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <numbers>

using namespace hqft;

TEST_CASE("boost of the rest vector by ln 2 along z") {
  const auto l = LorentzTransform::boost(std::log(2.0), Eigen::Vector3d::UnitZ());
  const FourVector v = l.apply(FourVector(1, 0, 0, 0));
  CHECK(v[0] == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(v[3] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(v[1] == 0.0);
  CHECK(v[2] == 0.0);
}

TEST_CASE("metric signature and dot products") {
  const FourVector a(2, 1, 0, 0), b(1, 0, 3, 0);
  CHECK(minkowski_dot(a, a) == 3.0);
  CHECK(minkowski_dot(a, b) == 2.0);
  CHECK(contract(Covector(1, 2, 3, 4), FourVector(1, 1, 1, 1)) == 10.0);
  CHECK(metric()(1, 1) == -1.0);
}

TEST_CASE("from_matrix rejects non-Lorentz matrices") {
  Mat4 m = Mat4::Identity();
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(LorentzTransform::from_matrix(m), std::invalid_argument);
  Mat4 p = Mat4::Identity();
  p(1, 1) = -1.0;  // parity
  CHECK_THROWS_AS(LorentzTransform::from_matrix(p), std::invalid_argument);
  Mat4 t = Mat4::Identity();
  t(0, 0) = -1.0;  // time reversal
  CHECK_THROWS_AS(LorentzTransform::from_matrix(t), std::invalid_argument);
}

TEST_CASE("property: Lorentz transforms preserve the metric and compose") {
  auto r = gen::rng(101);
  for (int i = 0; i < 300; ++i) {
    const auto l1 = gen::lorentz(r, 2.5), l2 = gen::lorentz(r, 2.5);
    CHECK(l1.defect() < 1e-12);
    CHECK((l1 * l1.inverse()).matrix().isIdentity(1e-10));
    const Covector k = gen::covector(r, 3.0);
    const FourVector v(gen::uniform(r, -2, 2), gen::uniform(r, -2, 2), gen::uniform(r, -2, 2), gen::uniform(r, -2, 2));
    CHECK(contract(l1.apply(k), l1.apply(v)) == doctest::Approx(contract(k, v)).epsilon(1e-10));
    const FourVector w1 = (l1 * l2).apply(v), w2 = l1.apply(l2.apply(v));
    CHECK((w1.components() - w2.components()).norm() < 1e-9 * std::max(1.0, w1.components().norm()));
  }
}

TEST_CASE("property: foliation vectors stay on the future hyperboloid") {
  auto r = gen::rng(102);
  for (int i = 0; i < 300; ++i) {
    const auto n = gen::foliation(r, 3.0).transformed(gen::lorentz(r, 2.0));
    CHECK(minkowski_dot(n.vector(), n.vector()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n[0] > 0.0);
  }
  const auto n = FoliationVector::from_chart(1.2, 0.4, 2.0);
  CHECK(n.rapidity() == doctest::Approx(1.2).epsilon(1e-14));
  const auto moved = FoliationVector::rest().transformed(boost_to(n));
  CHECK((moved.vector().components() - n.vector().components()).norm() < 1e-13);
  CHECK_THROWS_AS(FoliationVector::from_components(FourVector(1, 1, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(FoliationVector::from_components(FourVector(-1, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("hyperboloid sample reproduces the cap volume") {
  // 4 pi int_0^X sinh^2 = pi (sinh 2X - 2X)
  for (double x : {0.5, 1.0, 2.0, 3.0}) {
    const auto s = sample_hyperboloid(x, 16, 6);
    double v = 0.0;
    for (double w : s.weights) v += w;
    CHECK(v == doctest::Approx(std::numbers::pi * (std::sinh(2 * x) - 2 * x)).epsilon(1e-10));
  }
  // int cosh(chi) over the cap = 4 pi sinh^3 X / 3
  const auto s = sample_hyperboloid(1.5, 16, 6);
  double v = 0.0;
  for (size_t j = 0; j < s.nodes.size(); ++j) v += s.weights[j] * s.nodes[j][0];
  CHECK(v == doctest::Approx(4.0 * std::numbers::pi * std::pow(std::sinh(1.5), 3) / 3.0).epsilon(1e-10));
  CHECK_THROWS(sample_hyperboloid(-1.0, 4, 4));
}

TEST_CASE("one-dimensional rules integrate their polynomial classes exactly") {
  const Rule1D gl = gauss_legendre(8);
  for (int k = 0; k < 16; ++k) {
    double s = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], k);
    CHECK(s == doctest::Approx(k % 2 ? 0.0 : 2.0 / (k + 1)).epsilon(1e-13));
  }
  const Rule1D gh = gauss_hermite_standard(10);
  double dfact = 1.0;
  for (int k = 0; k < 20; k += 2) {
    double s = 0.0;
    for (size_t i = 0; i < gh.nodes.size(); ++i) s += gh.weights[i] * std::pow(gh.nodes[i], k);
    CHECK(s == doctest::Approx(dfact).epsilon(1e-11));  // E[x^k] = (k-1)!!
    dfact *= (k + 1);
  }
  for (double beta : {-0.5, -0.75, 0.3, 2.0}) {
    const Rule1D gj = gauss_jacobi_unit(12, beta);
    for (int k = 0; k < 24; ++k) {
      double s = 0.0;
      for (size_t i = 0; i < gj.nodes.size(); ++i) s += gj.weights[i] * std::pow(gj.nodes[i], k);
      CHECK(s == doctest::Approx(1.0 / (beta + k + 1)).epsilon(1e-12));
    }
    // A non-polynomial check against the beta function: int u^beta (1-u)^{1/2}.
    double s = 0.0;
    const Rule1D fine = gauss_jacobi_unit(40, beta);
    for (size_t i = 0; i < fine.nodes.size(); ++i) s += fine.weights[i] * std::sqrt(1.0 - fine.nodes[i]);
    CHECK(s == doctest::Approx(boost::math::beta(beta + 1.0, 1.5)).epsilon(1e-5));
  }
}
