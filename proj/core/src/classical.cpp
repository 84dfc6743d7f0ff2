#include "hqft/classical.hpp"
#include "hqft/history_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hqft {

FourVector LatticeSpec::position(int site) const {
  Vec4 x;
  int s = site;
  for (int mu = 3; mu >= 0; --mu) {
    const int i = s % sites;
    s /= sites;
    x[mu] = center[mu] + (i - 0.5 * (sites - 1)) * spacing;
  }
  return FourVector(x);
}

void LatticeSpec::validate() const {
  if (sites < 2) throw std::invalid_argument("LatticeSpec: need at least 2 sites per axis");
  if (!(spacing > 0.0)) throw std::invalid_argument("LatticeSpec: spacing must be positive");
}

LatticeSpec lattice_covering(const TestFunction& f, const TestFunction& g, int sites, double half_widths) {
  Vec4 c = Vec4::Zero();
  double w = 0.0;
  int count = 0;
  for (const auto* t : {&f, &g})
    for (const auto& p : t->packets()) {
      c += p.center.components();
      w = std::max(w, std::sqrt(p.width.diagonal().maxCoeff()));
      ++count;
    }
  if (count == 0) throw std::invalid_argument("lattice_covering: empty test functions");
  LatticeSpec l;
  l.sites = sites;
  l.spacing = 2.0 * half_widths * w / sites;
  l.center = FourVector(c / count);
  l.validate();
  return l;
}

QuadraticFunctional::QuadraticFunctional(const LatticeSpec& lattice)
    : linear(Eigen::VectorXd::Zero(lattice.variable_count())),
      quadratic(lattice.variable_count(), lattice.variable_count()) {}

QuadraticFunctional QuadraticFunctional::phi_at(const LatticeSpec& lattice, int site) {
  QuadraticFunctional f(lattice);
  f.linear[LatticeSpec::phi_index(site)] = 1.0;
  return f;
}

QuadraticFunctional QuadraticFunctional::pi_at(const LatticeSpec& lattice, int mu, int site) {
  QuadraticFunctional f(lattice);
  f.linear[LatticeSpec::pi_index(mu, site)] = 1.0;
  return f;
}

QuadraticFunctional QuadraticFunctional::smeared_phi(const LatticeSpec& lattice, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != lattice.site_count()) throw std::invalid_argument("smeared_phi: size mismatch");
  QuadraticFunctional f(lattice);
  for (int x = 0; x < lattice.site_count(); ++x) f.linear[LatticeSpec::phi_index(x)] = v[x] * lattice.cell_volume();
  return f;
}

QuadraticFunctional QuadraticFunctional::smeared_pi(const LatticeSpec& lattice, const std::vector<Vec4>& g) {
  if (static_cast<int>(g.size()) != lattice.site_count()) throw std::invalid_argument("smeared_pi: size mismatch");
  QuadraticFunctional f(lattice);
  for (int x = 0; x < lattice.site_count(); ++x)
    for (int mu = 0; mu < 4; ++mu) f.linear[LatticeSpec::pi_index(mu, x)] = g[x][mu] * lattice.cell_volume();
  return f;
}

QuadraticFunctional QuadraticFunctional::product(const QuadraticFunctional& a, const QuadraticFunctional& b) {
  if (!a.is_affine() || !b.is_affine()) throw std::invalid_argument("QuadraticFunctional::product: operands must be affine");
  QuadraticFunctional r = a * 0.0;
  r.constant = a.constant * b.constant;
  r.linear = a.constant * b.linear + b.constant * a.linear;
  // (l_a . v)(l_b . v) = 1/2 v^T (l_a l_b^T + l_b l_a^T) v
  const Eigen::SparseVector<double> la = a.linear.sparseView(), lb = b.linear.sparseView();
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::SparseVector<double>::InnerIterator i(la); i; ++i)
    for (Eigen::SparseVector<double>::InnerIterator j(lb); j; ++j) {
      trip.emplace_back(i.index(), j.index(), i.value() * j.value());
      trip.emplace_back(j.index(), i.index(), i.value() * j.value());
    }
  r.quadratic.setFromTriplets(trip.begin(), trip.end());
  return r;
}

double QuadraticFunctional::evaluate(const Eigen::VectorXd& v) const {
  return constant + linear.dot(v) + 0.5 * v.dot(quadratic * v);
}

double QuadraticFunctional::max_abs() const {
  double m = std::abs(constant);
  if (linear.size()) m = std::max(m, linear.cwiseAbs().maxCoeff());
  for (int k = 0; k < quadratic.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(quadratic, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

QuadraticFunctional QuadraticFunctional::operator+(const QuadraticFunctional& o) const {
  QuadraticFunctional r = *this;
  r.constant += o.constant;
  r.linear += o.linear;
  r.quadratic = quadratic + o.quadratic;
  return r;
}

QuadraticFunctional QuadraticFunctional::operator-(const QuadraticFunctional& o) const { return *this + o * -1.0; }

QuadraticFunctional QuadraticFunctional::operator*(double s) const {
  QuadraticFunctional r = *this;
  r.constant *= s;
  r.linear *= s;
  r.quadratic = quadratic * s;
  return r;
}

Eigen::SparseMatrix<double> poisson_tensor(const LatticeSpec& lattice, const FoliationVector& n) {
  const Covector nl = n.lowered();
  const double inv = 1.0 / lattice.cell_volume();
  std::vector<Eigen::Triplet<double>> trip;
  for (int x = 0; x < lattice.site_count(); ++x)
    for (int mu = 0; mu < 4; ++mu) {
      if (nl[mu] == 0.0) continue;
      trip.emplace_back(LatticeSpec::phi_index(x), LatticeSpec::pi_index(mu, x), nl[mu] * inv);
      trip.emplace_back(LatticeSpec::pi_index(mu, x), LatticeSpec::phi_index(x), -nl[mu] * inv);
    }
  Eigen::SparseMatrix<double> j(lattice.variable_count(), lattice.variable_count());
  j.setFromTriplets(trip.begin(), trip.end());
  return j;
}

QuadraticFunctional poisson_bracket(const QuadraticFunctional& f, const QuadraticFunctional& g,
                                    const FoliationVector& n, const LatticeSpec& lattice) {
  const Eigen::SparseMatrix<double> j = poisson_tensor(lattice, n);
  // grad F = l_F + Q_F v, so {F,G} = (l_F + Q_F v)^T J (l_G + Q_G v).
  QuadraticFunctional r(lattice);
  r.constant = f.linear.dot(j * g.linear);
  r.linear = f.quadratic * (j * g.linear) - g.quadratic * (j * f.linear);
  const Eigen::SparseMatrix<double> a = f.quadratic * j * g.quadratic;
  const Eigen::SparseMatrix<double> b = g.quadratic * j * f.quadratic;
  r.quadratic = (a - b).pruned();
  return r;
}

double jacobi_residual(const QuadraticFunctional& f, const QuadraticFunctional& g, const QuadraticFunctional& h,
                       const FoliationVector& n, const LatticeSpec& lattice) {
  const auto t1 = poisson_bracket(f, poisson_bracket(g, h, n, lattice), n, lattice);
  const auto t2 = poisson_bracket(g, poisson_bracket(h, f, n, lattice), n, lattice);
  const auto t3 = poisson_bracket(h, poisson_bracket(f, g, n, lattice), n, lattice);
  return (t1 + t2 + t3).max_abs();
}

CorrespondenceResult correspondence_check(const TestFunction& f, const TestFunction& g, const FourVector& polarization,
                                          const FoliationVector& n, const LatticeSpec& lattice, double mass,
                                          const QuadratureGrid& grid) {
  lattice.validate();
  std::vector<double> fv(lattice.site_count());
  std::vector<Vec4> gv(lattice.site_count());
  for (int x = 0; x < lattice.site_count(); ++x) {
    const FourVector pos = lattice.position(x);
    fv[x] = f.evaluate(pos).real();
    gv[x] = polarization.components() * g.evaluate(pos).real();
  }
  const auto F = QuadraticFunctional::smeared_phi(lattice, fv);
  const auto G = QuadraticFunctional::smeared_pi(lattice, gv);
  CorrespondenceResult r;
  r.classical = poisson_bracket(F, G, n, lattice).constant;

  const double nv = contract(n.lowered(), polarization);
  const auto phi = make_field(FieldKind::phi, n, f, mass);
  const auto pi = make_field(FieldKind::pi, n, g * nv, mass);
  r.quantum = commutator_value(phi, pi, grid) / Complex(0.0, 1.0);
  r.relative_deviation = std::abs(r.classical - r.quantum) / std::max(std::abs(r.quantum), 1e-300);
  return r;
}

}  // namespace hqft
