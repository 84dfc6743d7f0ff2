#include "generators.hpp"

#include "hqft/extended_algebra.hpp"
#include "hqft/foliation.hpp"
#include "hqft/history_algebra.hpp"

#include <doctest.h>

using namespace hqft;

TEST_CASE("monomial basis size is binomial(d + 4, 4)") {
  CHECK(monomial_basis(0).size() == 1);
  CHECK(monomial_basis(2).size() == 15);
  CHECK(monomial_basis(4).size() == 70);
}

TEST_CASE("p^12 rotates n^1 into n^2") {
  // p^ab = i(n^a d/dn_b - n^b d/dn_a) and d n^c / d n_b = eta^cb.
  const PolyFunction x = PolyFunction::coordinate(1), y = PolyFunction::coordinate(2);
  CHECK(apply_p(1, 2, x) == y * kExactI);
  CHECK(apply_p(1, 2, y) == x * (-kExactI));
  CHECK(apply_p(1, 2, PolyFunction::norm_squared()).is_zero());
  CHECK(apply_p(2, 1, x) == y * (-kExactI));
}

TEST_CASE("flow of p^12 is the rotation R_z(-theta)") {
  const NumericPoly p = to_numeric(PolyFunction::coordinate(1) * PolyFunction::coordinate(2) * PolyFunction::coordinate(1));
  auto r = gen::rng(501);
  for (int i = 0; i < 10; ++i) {
    const double theta = gen::uniform(r, -0.5, 0.5);
    const auto rot = LorentzTransform::rotation(Eigen::Vector3d::UnitZ(), -theta);
    const FourVector n = gen::foliation(r, 1.0).vector();
    CHECK(std::abs(flow_p(1, 2, theta, p).evaluate(n) - p.evaluate(rot.apply(n))) < 1e-12);
  }
}

TEST_CASE("foliation algebra: every family holds except pp under the +i structure sign") {
  for (auto placement : {IndexPlacement::Upper, IndexPlacement::Lower}) {
    const auto printed = verify_foliation_algebra(3, placement, StructureSign::Printed);
    const auto realized = verify_foliation_algebra(3, placement, StructureSign::Realized);
    CHECK(realized.failures() == 0);
    for (const char* fam : {"nn", "np", "casimir", "tangency", "antisymmetry"}) {
      CHECK(printed.failures(fam) == 0);
      CHECK(printed.count(fam) > 0);
    }
    // Each pair of distinct generators with a shared index yields a nonzero bracket with the wrong sign.
    CHECK(printed.failures("pp") == 12);
    CHECK(printed.count("pp") == 15);
  }
  CHECK_THROWS(verify_foliation_algebra(1));
}

TEST_CASE("apply_n respects the degree cap") {
  PolyFunction p = PolyFunction::coordinate(0) * PolyFunction::coordinate(1);
  CHECK_NOTHROW(apply_n(0, p, 3));
  CHECK_THROWS_AS(apply_n(0, p, 2), std::length_error);
}

TEST_CASE("property: extended algebra satisfies Jacobi with the realised sign") {
  auto r = gen::rng(502);
  const QuadratureGrid grid = build_quadrature(1.0, 10);
  ExtendedAlgebra alg(grid);
  const Coefficient f = Coefficient::of(gen::real_function(r)), g = Coefficient::of(gen::real_function(r));
  std::vector<ExtendedElement> gens{alg.phi(f), alg.varpi(g), alg.n(0), alg.n(2), alg.p(0, 1), alg.p(1, 3),
                                    alg.pi(1, g), alg.pi(0, f, 0.7)};
  for (const auto& a : gens)
    for (const auto& b : gens) {
      CHECK(alg.norm(alg.bracket(a, b) + alg.bracket(b, a)) < 1e-12);
      for (const auto& c : gens) CHECK(alg.jacobi_residual(a, b, c) < 1e-10);
    }
  // [phi(f), varpi(g)] = i <f, g>
  const auto br = alg.bracket(alg.phi(f), alg.varpi(g));
  const auto expected = alg.unit(std::complex<double>(0, 1) * l2_inner(f, g, grid));
  CHECK(alg.norm(br - expected) < 1e-12);
  ExtendedAlgebra printed(build_quadrature(1.0, 10), StructureSign::Printed);
  CHECK(printed.jacobi_residual(printed.n(0), printed.p(0, 1), printed.p(1, 2)) > 0.5);
}
