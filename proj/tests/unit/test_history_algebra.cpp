#include "generators.hpp"
#include "xspace.hpp"

#include "hqft/fock.hpp"
#include "hqft/fock_vector.hpp"
#include "hqft/history_algebra.hpp"

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

using namespace hqft;

namespace {

const QuadratureGrid& grid() {
  static const QuadratureGrid g = build_quadrature(1.0, 12);
  return g;
}

const Complex kI(0.0, 1.0);

}  // namespace

TEST_CASE("property: canonical commutators against the direct-space overlap") {
  auto r = gen::rng(301);
  const double m = 1.0;
  for (int i = 0; i < 25; ++i) {
    const TestFunction f = gen::real_function(r), g = gen::real_function(r);
    const auto n = gen::foliation(r, 2.0);
    const Complex fg = xspace::overlap(f, g);
    const double scale = std::max(1.0, std::abs(fg));
    const auto phf = make_field(FieldKind::phi, n, f, m), pig = make_field(FieldKind::pi, n, g, m);
    CHECK(std::abs(commutator_value(phf, pig, grid()) - kI * fg) < 1e-10 * scale);
    CHECK(std::abs(commutator_value(phf, make_field(FieldKind::phi, n, g, m), grid())) < 1e-12 * scale);
    CHECK(std::abs(commutator_value(make_field(FieldKind::pi, n, f, m), pig, grid())) < 1e-12 * scale);
    CHECK(std::abs(commutator_value(pig, phf, grid()) + kI * fg) < 1e-10 * scale);
    const auto cphi = make_field(FieldKind::covariant_phi, std::nullopt, f, m);
    const auto cpi = make_field(FieldKind::covariant_pi, std::nullopt, g, m);
    CHECK(std::abs(commutator_value(cphi, cpi, grid()) - kI * fg) < 1e-10 * scale);
  }
}

TEST_CASE("property: Heisenberg evolution is a one-parameter group preserving the CCR") {
  auto r = gen::rng(302);
  for (int i = 0; i < 10; ++i) {
    const TestFunction f = gen::real_function(r), g = gen::real_function(r);
    const auto n = gen::foliation(r, 1.5);
    const double s1 = gen::uniform(r, -2, 2), s2 = gen::uniform(r, -2, 2);
    const auto phi = make_field(FieldKind::phi, n, f, 1.0), pi = make_field(FieldKind::pi, n, g, 1.0);
    const auto a = heisenberg_evolve(n, s2, heisenberg_evolve(n, s1, phi, 1.0), 1.0);
    const auto b = heisenberg_evolve(n, s1 + s2, phi, 1.0);
    for (size_t j = 0; j < a.annihilation.size(); ++j) {
      const CVec4 k = gen::covector(r, 3.0).components().cast<Complex>();
      CHECK(std::abs(a.annihilation[j].fourier(k) - b.annihilation[j].fourier(k)) <
            1e-12 * std::max(1.0, std::abs(b.annihilation[j].fourier(k))));
    }
    const Complex before = commutator_value(phi, pi, grid());
    const Complex after =
        commutator_value(heisenberg_evolve(n, s1, phi, 1.0), heisenberg_evolve(n, s1, pi, 1.0), grid());
    CHECK(std::abs(after - before) < 1e-10 * std::max(1.0, std::abs(before)));
  }
}

TEST_CASE("Bogoliubov coefficients: worked value and hyperbolic identity") {
  const FoliationVector n = FoliationVector::rest();
  const FoliationVector n1 = n.transformed(LorentzTransform::boost(1.0, Eigen::Vector3d::UnitZ()));
  // gamma_n(0,0,0,1) = 2, gamma_n'(0,0,0,1) = sinh^2(1) + 2
  const double ratio = std::pow((std::sinh(1.0) * std::sinh(1.0) + 2.0) / 2.0, 0.25);
  const auto pair = bogoliubov(n, n1, 1.0);
  const CVec4 k(0, 0, 0, 1);
  CHECK(std::abs(pair.beta.evaluate(k) - 0.5 * (ratio - 1.0 / ratio)) < 1e-15);
  CHECK(std::abs(pair.beta.evaluate(k)) == doctest::Approx(0.1317).epsilon(1e-3));
  auto r = gen::rng(303);
  for (int i = 0; i < 200; ++i) {
    const CVec4 q = gen::covector(r, 5.0).components().cast<Complex>();
    const Complex a = pair.alpha.evaluate(q), b = pair.beta.evaluate(q);
    CHECK(std::abs(a * a - b * b - 1.0) < 1e-12);
  }
  CHECK(bogoliubov(n1, n1, 1.0).beta.is_zero());
}

TEST_CASE("HS norm of beta against a nested adaptive integral") {
  // n rest, n' boosted along z: the integrand depends on k0, k3 and rho = |(k1, k2)|.
  const double chi = 0.7, m = 1.0, radius = 3.0;
  const double c = std::cosh(chi), s = std::sinh(chi);
  auto beta2 = [&](double k0, double k3, double rho) {
    const double g = k3 * k3 + rho * rho + m * m;
    const double gp = (c * k0 + s * k3) * (c * k0 + s * k3) - k0 * k0 + k3 * k3 + rho * rho + m * m;
    const double q = std::pow(gp / g, 0.25);
    return 0.25 * (q - 1.0 / q) * (q - 1.0 / q);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  const double total = GK::integrate(
      [&](double th) {
        return GK::integrate(
            [&](double u) {
              const double top = std::sqrt(std::max(0.0, radius * radius - u * u));
              return u * GK::integrate([&](double rho) { return 2 * M_PI * rho * beta2(u * std::cos(th), u * std::sin(th), rho); },
                                       0.0, top, 5, 1e-12);
            },
            0.0, radius, 5, 1e-12);
      },
      0.0, 2 * M_PI, 5, 1e-12);
  const double oracle = total / std::pow(2 * M_PI, 4);
  const auto pair = bogoliubov(FoliationVector::rest(),
                               FoliationVector::rest().transformed(LorentzTransform::boost(chi, Eigen::Vector3d::UnitZ())), m);
  CHECK(beta_hs_norm(pair, radius) == doctest::Approx(oracle).epsilon(1e-6));
  CHECK_THROWS_AS(beta_hs_norm(pair, -1.0), std::invalid_argument);
}

TEST_CASE("energy and internal momentum") {
  auto r = gen::rng(304);
  for (int i = 0; i < 10; ++i) {
    const TestFunction f = gen::real_function(r), g = gen::real_function(r);
    const auto n = gen::foliation(r, 1.5);
    const Complex e = energy_matrix_element(n, f, g, 1.0, grid());
    Complex contracted = 0.0;
    for (int mu = 0; mu < 4; ++mu) contracted += n[mu] * internal_momentum_element(n, mu, f, g, 1.0, grid());
    CHECK(std::abs(contracted - e) < 1e-10 * std::max(1.0, std::abs(e)));
    CHECK(history_hamiltonian(n, 1.0).vacuum_expectation() == 0.0);
  }
}

TEST_CASE("truncated Fock space: ladder algebra and number operator") {
  auto r = gen::rng(305);
  std::vector<TestFunction> dict{gen::real_function(r), gen::real_function(r)};
  const auto fock = TruncatedFock::build(dict, 3, grid());
  CHECK(fock.modes() == 2);
  CHECK((fock.mode_gram(grid()) - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  // Mode symbol 1 gives the number operator.
  const Eigen::MatrixXcd num = fock.quadratic_matrix(SymbolFunction::constant(1.0), grid());
  for (Eigen::Index s = 0; s < fock.dimension(); ++s)
    CHECK(std::abs(num(s, s) - double(fock.total_occupation(s))) < 1e-12);
  CHECK((num - Eigen::MatrixXcd(num.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK(protected_commutator_residual(fock, fock.annihilator(a).cast<Complex>(), fock.creator(b).cast<Complex>(),
                                         a == b ? 1.0 : 0.0) < 1e-12);
  const auto n = gen::foliation(r, 1.0);
  std::vector<std::pair<TestFunction, TestFunction>> pairs{{dict[0], dict[1]}, {dict[1], dict[1]}};
  CHECK(verify_field_algebra(n, fock, pairs, 1.0, grid()).max_residual() < 1e-10);
}

TEST_CASE("Fock vectors: CCR on states and norms") {
  auto r = gen::rng(306);
  OneParticleCache cache(grid());
  const TestFunction f = gen::real_function(r), g = gen::real_function(r), h = gen::real_function(r);
  const FockVector v = FockVector::vacuum().create(Coefficient::of(h)) + FockVector::vacuum() * 0.5;
  const auto n = gen::foliation(r, 1.0);
  const auto phi = make_field(FieldKind::phi, n, f, 1.0), pi = make_field(FieldKind::pi, n, g, 1.0);
  const FockVector d = v.apply(pi, cache).apply(phi, cache) - v.apply(phi, cache).apply(pi, cache);
  const Complex expect = kI * xspace::overlap(f, g);
  // [phi, pi] v = i <f, g> v, tested through the inner product with v.
  CHECK(std::abs(fock_inner(v, d, cache) - expect * fock_inner(v, v, cache)) < 1e-10);
  // ||a^dagger(h) Omega||^2 = ||h||^2
  const FockVector one = FockVector::vacuum().create(Coefficient::of(h));
  CHECK(std::abs(fock_inner(one, one, cache) - xspace::overlap(h, h)) < 1e-10 * std::abs(xspace::overlap(h, h)));
  // Annihilators kill the vacuum.
  CHECK(FockVector::vacuum().annihilate(Coefficient::of(f), cache).is_zero());
}
