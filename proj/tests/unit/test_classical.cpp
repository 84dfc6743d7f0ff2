#include "generators.hpp"
#include "xspace.hpp"

#include "hqft/classical.hpp"

#include <doctest.h>

using namespace hqft;

namespace {

QuadraticFunctional random_functional(std::mt19937_64& r, const LatticeSpec& lat) {
  QuadraticFunctional f(lat);
  std::uniform_int_distribution<int> idx(0, lat.variable_count() - 1);
  for (int i = 0; i < 10; ++i) f.linear[idx(r)] += gen::uniform(r, -1, 1);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < 10; ++i) {
    const int a = idx(r), b = idx(r);
    const double v = gen::uniform(r, -1, 1);
    t.emplace_back(a, b, v);
    t.emplace_back(b, a, v);
  }
  f.quadratic.setFromTriplets(t.begin(), t.end());
  return f;
}

}  // namespace

TEST_CASE("lattice layout and validation") {
  LatticeSpec lat{3, 0.5, FourVector()};
  CHECK(lat.site_count() == 81);
  CHECK(lat.variable_count() == 405);
  CHECK(lat.cell_volume() == doctest::Approx(0.0625));
  CHECK(LatticeSpec::pi_index(2, 4) == 23);
  LatticeSpec bad{1, 0.5, FourVector()};
  CHECK_THROWS(bad.validate());
  LatticeSpec neg{3, -0.5, FourVector()};
  CHECK_THROWS(neg.validate());
}

TEST_CASE("smeared brackets are lattice sums of f n.g") {
  auto r = gen::rng(401);
  const LatticeSpec lat{3, 0.8, FourVector(0.1, 0, 0, 0)};
  const auto n = gen::foliation(r, 1.5);
  std::vector<double> f(lat.site_count());
  std::vector<Vec4> g(lat.site_count());
  double expect = 0.0;
  for (int x = 0; x < lat.site_count(); ++x) {
    f[x] = gen::uniform(r, -1, 1);
    g[x] = Vec4(gen::uniform(r, -1, 1), gen::uniform(r, -1, 1), gen::uniform(r, -1, 1), gen::uniform(r, -1, 1));
    double ng = 0.0;
    for (int mu = 0; mu < 4; ++mu) ng += n.lowered()[mu] * g[x][mu];
    expect += lat.cell_volume() * f[x] * ng;
  }
  const auto br = poisson_bracket(QuadraticFunctional::smeared_phi(lat, f), QuadraticFunctional::smeared_pi(lat, g), n, lat);
  CHECK(br.is_affine());
  CHECK(br.constant == doctest::Approx(expect).epsilon(1e-12));
  CHECK(br.linear.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("property: Poisson bracket is antisymmetric, Leibniz and Jacobi") {
  auto r = gen::rng(402);
  const LatticeSpec lat{2, 0.6, FourVector()};
  for (int i = 0; i < 20; ++i) {
    const auto n = gen::foliation(r, 2.0);
    const auto f = random_functional(r, lat), g = random_functional(r, lat), h = random_functional(r, lat);
    CHECK((poisson_bracket(f, g, n, lat) + poisson_bracket(g, f, n, lat)).max_abs() < 1e-12);
    CHECK(jacobi_residual(f, g, h, n, lat) < 1e-10);
    QuadraticFunctional a = random_functional(r, lat), b = random_functional(r, lat);
    a.quadratic.setZero();
    b.quadratic.setZero();
    const auto lhs = poisson_bracket(f, QuadraticFunctional::product(a, b), n, lat);
    const auto rhs = QuadraticFunctional::product(poisson_bracket(f, a, n, lat), b) +
                     QuadraticFunctional::product(a, poisson_bracket(f, b, n, lat));
    CHECK((lhs - rhs).max_abs() * lat.cell_volume() < 1e-12);
  }
}

TEST_CASE("Poisson tensor is antisymmetric with the n_mu / Delta^4 entries") {
  const LatticeSpec lat{2, 0.5, FourVector()};
  const auto n = FoliationVector::from_chart(0.9, 0.3, 1.1);
  const Eigen::SparseMatrix<double> p = poisson_tensor(lat, n);
  CHECK(Eigen::MatrixXd(p + Eigen::SparseMatrix<double>(p.transpose())).cwiseAbs().maxCoeff() == 0.0);
  for (int mu = 0; mu < 4; ++mu)
    CHECK(p.coeff(LatticeSpec::phi_index(5), LatticeSpec::pi_index(mu, 5)) ==
          doctest::Approx(n.lowered()[mu] / lat.cell_volume()).epsilon(1e-14));
}

TEST_CASE("correspondence improves with lattice refinement for smooth smearings") {
  GaussianPacket a, b;
  a.carrier = Covector(0.2, 0.1, 0.0, -0.1);
  b.center = FourVector(0.3, 0.0, -0.2, 0.1);
  b.carrier = Covector(-0.1, 0.0, 0.3, 0.0);
  const TestFunction f = TestFunction::real_part_of(a), g = TestFunction::real_part_of(b);
  const auto grid = build_quadrature(1.0, 12);
  const auto n = FoliationVector::from_chart(0.5, 0.7, 0.2);
  double prev = 1e300;
  for (int sites : {4, 6, 8}) {
    const auto res = correspondence_check(f, g, n.vector(), n, lattice_covering(f, g, sites), 1.0, grid);
    CHECK(res.relative_deviation < prev);
    prev = res.relative_deviation;
  }
  CHECK(prev < 0.05);
  // The quantum side is the direct-space overlap.
  const auto res = correspondence_check(f, g, n.vector(), n, lattice_covering(f, g, 8), 1.0, grid);
  CHECK(std::abs(res.quantum - xspace::overlap(f, g)) < 1e-10);
}
