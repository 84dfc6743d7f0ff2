#include "generators.hpp"
#include "xspace.hpp"

#include "hqft/packets.hpp"

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

using namespace hqft;

namespace {

const QuadratureGrid& grid() {
  static const QuadratureGrid g = build_quadrature(1.0, 12);
  return g;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("fourier transform of a packet has the Gaussian closed form") {
  auto r = gen::rng(201);
  const GaussianPacket p = gen::packet(r);
  for (int i = 0; i < 20; ++i) {
    const Covector k = gen::covector(r, 1.5);
    const Vec4 d = k.components() - p.carrier.components();
    const Complex expect = p.amplitude * 4.0 * M_PI * M_PI * std::sqrt(p.width.determinant()) *
                           std::exp(Complex(-0.5 * d.dot(p.width * d), -k.components().dot(p.center.components())));
    CHECK(rel(TestFunction({p}).fourier(k), expect) < 1e-13);
  }
}

TEST_CASE("property: L2 inner products match the direct-space closed form") {
  auto r = gen::rng(202);
  for (int i = 0; i < 40; ++i) {
    const TestFunction f({gen::packet(r), gen::packet(r)}), g({gen::packet(r)});
    const Complex ours = weighted_inner(f, SymbolFunction::constant(1.0), g, grid());
    const Complex oracle = xspace::overlap(f, g);
    CHECK(std::abs(ours - oracle) < 1e-10 * std::max(1.0, std::abs(oracle)));
  }
}

TEST_CASE("Parseval: momentum quadrature against a direct-space lattice sum") {
  auto r = gen::rng(203);
  GaussianPacket p = gen::packet(r);
  p.center = FourVector();
  const TestFunction f({p});
  const double quad = weighted_inner(f, SymbolFunction::constant(1.0), f, grid()).real();
  const Complex lat = xspace::lattice_sum([&](const Vec4& x) { return std::norm(f.evaluate(FourVector(x))); }, 7.0, 28);
  CHECK(std::abs(quad - lat.real()) / quad < 1e-6);
}

TEST_CASE("polynomial symbols match derivatives in direct space") {
  // k_mu -> -i d_mu, so gamma_n -> (eta - n n):dd + m^2.
  auto r = gen::rng(204);
  GaussianPacket a = gen::packet(r), b = gen::packet(r);
  a.center = FourVector(0.2, -0.1, 0.0, 0.1);
  b.center = FourVector(-0.1, 0.0, 0.2, 0.0);
  const TestFunction f({a}), g({b});
  const FoliationVector n = FoliationVector::from_chart(0.8, 1.0, 0.3);
  const double m = 1.3;
  Mat4 op = metric();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) op(i, j) -= n[i] * n[j];

  const auto gamma = xspace::lattice_sum(
      [&](const Vec4& x) {
        const auto jf = xspace::jet(f, x), jg = xspace::jet(g, x);
        Complex lap = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) lap += op(i, j) * jg.dd(i, j);
        return std::conj(jf.value) * (lap + m * m * jg.value);
      },
      7.0, 30);
  CHECK(rel(weighted_inner(f, gamma_symbol(n, m), g, grid()), gamma) < 1e-7);

  for (int mu = 0; mu < 4; ++mu) {
    const auto mom = xspace::lattice_sum(
        [&](const Vec4& x) { return std::conj(xspace::jet(f, x).value) * Complex(0, -1) * xspace::jet(g, x).d[mu]; },
        7.0, 30);
    CHECK(std::abs(weighted_inner(f, SymbolFunction::momentum(mu), g, grid()) - mom) < 1e-7 * std::abs(gamma));
  }
}

TEST_CASE("fractional gamma powers match a radial momentum-space oracle") {
  // Rest n and isotropic widths with a common center: the angular integral is
  // elementary and the radial one is done by adaptive Gauss-Kronrod.
  const double sp = 1.3, sq = 0.7, m = 1.0;
  const Vec4 kp(0.3, 0.5, -0.2, 0.1), kq(-0.1, 0.2, 0.4, 0.0);
  GaussianPacket p, q;
  p.carrier = Covector(kp);
  q.carrier = Covector(kq);
  p.width = sp * sp * Mat4::Identity();
  q.width = sq * sq * Mat4::Identity();
  const double pp = sp * sp + sq * sq;
  const Vec4 c = (sp * sp * kp + sq * sq * kq) / pp;
  const double e0 = sp * sp * kp.squaredNorm() + sq * sq * kq.squaredNorm() - pp * c.squaredNorm();
  const double bn = pp * c.tail<3>().norm(), cs2 = c.tail<3>().squaredNorm();
  for (double power : {-1.0, -0.5, -0.25, 0.25, 0.5, 1.5}) {
    auto radial = [&](double k) {
      const double g = -0.5 * pp * (k * k + cs2);
      const double ang = bn * k < 1e-8 ? 4 * M_PI * std::exp(g)
                                       : 4 * M_PI * (std::exp(g + bn * k) - std::exp(g - bn * k)) / (2 * bn * k);
      return k * k * ang * std::pow(k * k + m * m, power);
    };
    const double rad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        radial, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-15);
    const double oracle = std::pow(sp * sq, 4) * std::exp(-0.5 * e0) * std::sqrt(2 * M_PI / pp) * rad;
    const Complex ours =
        weighted_inner(TestFunction({p}), SymbolFunction::gamma_power(FoliationVector::rest(), m, power),
                       TestFunction({q}), grid());
    CHECK(rel(ours, oracle) < 1e-10);
  }
}

TEST_CASE("property: Poincare action moves packets as f(Lambda^{-1}(X - a))") {
  auto r = gen::rng(205);
  for (int i = 0; i < 50; ++i) {
    const TestFunction f = gen::real_function(r);
    const auto l = gen::lorentz(r, 1.5);
    const FourVector a(gen::uniform(r, -1, 1), gen::uniform(r, -1, 1), gen::uniform(r, -1, 1), gen::uniform(r, -1, 1));
    const TestFunction moved = poincare_act(l, a, f);
    const FourVector x(gen::uniform(r, -2, 2), gen::uniform(r, -2, 2), gen::uniform(r, -2, 2), gen::uniform(r, -2, 2));
    const FourVector back = l.inverse().apply(FourVector(x.components() - a.components()));
    CHECK(std::abs(moved.evaluate(x) - f.evaluate(back)) < 1e-12);
  }
}

TEST_CASE("property: fractional covariance, hermiticity and positivity") {
  auto r = gen::rng(206);
  const double m = 0.8;
  for (int i = 0; i < 10; ++i) {
    const TestFunction f = gen::real_function(r), g = gen::real_function(r);
    const auto n = gen::foliation(r, 1.5);
    const auto l = gen::lorentz(r, 1.5);
    for (double power : {-0.5, 0.5}) {
      const auto s = SymbolFunction::gamma_power(n, m, power);
      const Complex a = weighted_inner(f, s, g, grid());
      const Complex b = weighted_inner(poincare_act(l, FourVector(), f), SymbolFunction::gamma_power(n.transformed(l), m, power),
                                       poincare_act(l, FourVector(), g), grid());
      CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)));
      CHECK(std::abs(a - std::conj(weighted_inner(g, s, f, grid()))) < 1e-12 * std::max(1.0, std::abs(a)));
      const Complex ff = weighted_inner(f, s, f, grid());
      CHECK(ff.real() > 0.0);
      CHECK(std::abs(ff.imag()) < 1e-12 * ff.real());
    }
    // gamma >= m^2 gives <f, gamma^{1/2} f> >= m ||f||^2
    const double nf = weighted_inner(f, SymbolFunction::constant(1.0), f, grid()).real();
    CHECK(weighted_inner(f, SymbolFunction::gamma_power(n, m, 0.5), f, grid()).real() >= m * nf * (1 - 1e-12));
  }
}

TEST_CASE("invalid packets are rejected") {
  GaussianPacket p;
  p.width(0, 0) = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  GaussianPacket q;
  q.width(0, 1) = 0.5;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  CHECK_THROWS(build_quadrature(1.0, 0));
}
