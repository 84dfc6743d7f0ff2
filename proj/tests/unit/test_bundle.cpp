#include "generators.hpp"
#include "xspace.hpp"

#include "hqft/bundle.hpp"
#include "hqft/history_algebra.hpp"

#include <doctest.h>

using namespace hqft;

namespace {

const QuadratureGrid& grid() {
  static const QuadratureGrid g = build_quadrature(1.0, 10);
  return g;
}

double fnorm(const FockVector& v, OneParticleCache& c) { return std::sqrt(std::max(0.0, fock_inner(v, v, c).real())); }

}  // namespace

TEST_CASE("ground section norm is the sample volume") {
  BundleContext ctx(1.0, grid(), sample_hyperboloid(1.0, 8, 4));
  double vol = 0.0;
  for (double w : ctx.sample.weights) vol += w;
  CHECK(section_inner(ctx, BundleSection::ground(), BundleSection::ground()).real() == doctest::Approx(vol).epsilon(1e-14));
}

TEST_CASE("fiberwise canonical relations") {
  auto r = gen::rng(601);
  BundleContext ctx(1.0, grid(), sample_hyperboloid(1.0, 6, 4));
  const TestFunction f = gen::real_function(r), g = gen::real_function(r), h = gen::real_function(r);
  const FockVector v = FockVector::vacuum() + FockVector::vacuum().create(Coefficient::of(h));
  const BundleSection psi = BundleSection::product(cap_amplitude(FoliationVector::rest(), 1.0), v);
  const Complex fg = xspace::overlap(f, g);
  for (int i = 0; i < 5; ++i) {
    const auto n = gen::foliation(r, 1.0);
    const FockVector base = psi(n);
    const FockVector d = apply_field(ctx, f, apply_varpi(ctx, g, psi))(n) - apply_varpi(ctx, g, apply_field(ctx, f, psi))(n);
    CHECK(fnorm(d - base * (Complex(0, 1) * fg), *ctx.cache) < 1e-6 * fnorm(base, *ctx.cache));
    for (int mu = 0; mu < 4; ++mu) {
      // n_mu acts by multiplication
      const FockVector nm = apply_n(mu, psi)(n) - base * n.lowered()[mu];
      CHECK(nm.is_zero());
    }
    CHECK(apply_H(ctx, BundleSection::ground())(n).is_zero());
  }
}

TEST_CASE("internal time profiles") {
  const auto sample = sample_hyperboloid(1.0, 4, 2);
  CHECK_NOTHROW(InternalTimeProfile::constant(0.5).validate(sample));
  CHECK_THROWS_AS(InternalTimeProfile::constant(-0.5).validate(sample), std::invalid_argument);
  const auto p = InternalTimeProfile::polynomial(PolyFunction::coordinate(0));
  CHECK(p(FoliationVector::from_chart(1.0, 0.2, 0.3)) == doctest::Approx(std::cosh(1.0)));
  std::vector<double> values(sample.nodes.size(), 1.0);
  const auto t = InternalTimeProfile::tabulated(sample, values);
  CHECK(t(sample.nodes[3]) == 1.0);
  CHECK_THROWS_AS(t(FoliationVector::from_chart(2.5, 0.1, 0.1)), std::out_of_range);
}

TEST_CASE("lifted Lorentz action on cap-supported sections") {
  auto r = gen::rng(602);
  BundleContext ctx(1.0, grid(), sample_hyperboloid(3.0, 16, 8));
  const TestFunction h = gen::real_function(r);
  const FockVector v = FockVector::vacuum() * 0.3 + FockVector::vacuum().create(Coefficient::of(h));
  const BundleSection psi = BundleSection::product(cap_amplitude(FoliationVector::rest(), 6.0), v);
  const double norm2 = section_inner(ctx, psi, psi).real();
  const auto l1 = LorentzTransform::boost(0.4, Eigen::Vector3d(1, 0, 0));
  const auto l2 = LorentzTransform::boost(0.3, Eigen::Vector3d(0, 1, 1));
  const BundleSection w = apply_W(l1, psi);
  CHECK(std::abs(section_inner(ctx, w, w).real() - norm2) < 1e-5 * norm2);
  const BundleSection two = apply_W(l2, w), one = apply_W(l2 * l1, psi);
  const BundleSection d([&](const FoliationVector& n) { return two(n) - one(n); });
  CHECK(std::sqrt(std::max(0.0, section_inner(ctx, d, d).real()) / norm2) < 1e-6);
  // W(Lambda) W(Lambda^{-1}) = 1 fiber by fiber
  const auto n = gen::foliation(r, 0.5);
  const FockVector back = apply_W(l1, apply_W(l1.inverse(), psi))(n) - psi(n);
  CHECK(fnorm(back, *ctx.cache) < 1e-6 * fnorm(psi(n), *ctx.cache));
}

TEST_CASE("polynomial sections: p kills n-independent amplitudes and the constraint") {
  const PolySection c{PolyFunction::constant(ExactComplex(2)), FockVector::vacuum()};
  CHECK(apply_p(0, 1, c).amplitude.is_zero());
  const PolySection q{PolyFunction::norm_squared() - PolyFunction::constant(ExactComplex(1)), FockVector::vacuum()};
  CHECK(apply_p(1, 3, q).amplitude.is_zero());
  const PolySection x{PolyFunction::coordinate(1), FockVector::vacuum()};
  CHECK(apply_p(1, 2, x).amplitude == PolyFunction::coordinate(2) * kExactI);
}
