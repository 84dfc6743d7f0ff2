#pragma once

#include "hqft/packets.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace hqft {

// Cell-centred periodic lattice with `sites` points per axis around `center`.
// Variables per site: phi, then pi_0 .. pi_3 (lower index).
struct LatticeSpec {
  int sites = 4;
  double spacing = 1.0;
  FourVector center;

  int site_count() const { return sites * sites * sites * sites; }
  int variable_count() const { return 5 * site_count(); }
  double cell_volume() const { return spacing * spacing * spacing * spacing; }
  FourVector position(int site) const;
  static int phi_index(int site) { return 5 * site; }
  static int pi_index(int mu, int site) { return 5 * site + 1 + mu; }
  void validate() const;
};

// Lattice that covers +-half_widths packet widths around the mean centre of f and g.
LatticeSpec lattice_covering(const TestFunction& f, const TestFunction& g, int sites, double half_widths = 4.0);

// F(v) = constant + linear . v + 1/2 v^T Q v on the lattice phase space.
class QuadraticFunctional {
 public:
  explicit QuadraticFunctional(const LatticeSpec& lattice);

  static QuadraticFunctional phi_at(const LatticeSpec& lattice, int site);
  static QuadraticFunctional pi_at(const LatticeSpec& lattice, int mu, int site);
  // sum_x f(x) phi_x Delta^4
  static QuadraticFunctional smeared_phi(const LatticeSpec& lattice, const std::vector<double>& f);
  // sum_x g^mu(x) pi_{mu,x} Delta^4
  static QuadraticFunctional smeared_pi(const LatticeSpec& lattice, const std::vector<Vec4>& g);
  // Product of two affine functionals; throws std::invalid_argument otherwise.
  static QuadraticFunctional product(const QuadraticFunctional& a, const QuadraticFunctional& b);

  double constant = 0.0;
  Eigen::VectorXd linear;
  Eigen::SparseMatrix<double> quadratic;

  double evaluate(const Eigen::VectorXd& state) const;
  bool is_affine() const { return quadratic.nonZeros() == 0; }
  // Largest absolute coefficient; the residual measure for bracket identities.
  double max_abs() const;
  int dimension() const { return static_cast<int>(linear.size()); }

  QuadraticFunctional operator+(const QuadraticFunctional& o) const;
  QuadraticFunctional operator-(const QuadraticFunctional& o) const;
  QuadraticFunctional operator*(double s) const;
};

// Constant antisymmetric tensor with {phi_x, pi_{mu,y}} = n_mu delta_xy / Delta^4.
Eigen::SparseMatrix<double> poisson_tensor(const LatticeSpec& lattice, const FoliationVector& n);

QuadraticFunctional poisson_bracket(const QuadraticFunctional& f, const QuadraticFunctional& g,
                                    const FoliationVector& n, const LatticeSpec& lattice);

// max |{F,{G,H}} + {G,{H,F}} + {H,{F,G}}| over coefficients.
double jacobi_residual(const QuadraticFunctional& f, const QuadraticFunctional& g, const QuadraticFunctional& h,
                       const FoliationVector& n, const LatticeSpec& lattice);

struct CorrespondenceResult {
  Complex classical;  // {phi(f), pi(v g)}_n from the lattice
  Complex quantum;    // [phi_n(f), pi_n((n.v) g)] / i
  double relative_deviation = 0.0;
};

// Master-field identification pi_mu = n_mu varpi: the smeared momentum
// int g^mu pi_mu pairs with the quantum pi_n smeared by (n.v) g, with g^mu = v^mu g.
// f and g must be real.
CorrespondenceResult correspondence_check(const TestFunction& f, const TestFunction& g, const FourVector& polarization,
                                          const FoliationVector& n, const LatticeSpec& lattice, double mass,
                                          const QuadratureGrid& grid);

}  // namespace hqft
