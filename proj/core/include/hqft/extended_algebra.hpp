#pragma once

#include "hqft/foliation.hpp"
#include "hqft/history_algebra.hpp"

#include <map>
#include <string>
#include <vector>

namespace hqft {

// Generators of the field-plus-foliation algebra. Smeared fields carry a smearing
// registered with the owning ExtendedAlgebra.
struct ExtendedGenerator {
  enum class Kind { Unit, Phi, Varpi, P };
  Kind kind = Kind::Unit;
  int a = 0, b = 0;       // P: p^{ab} with a < b
  std::string smearing;   // Phi, Varpi: registry key
  std::string key() const;
};

// Finite sum of Q_i(n) X_i with polynomial coefficients on the left.
struct ExtendedElement {
  struct Term {
    ExtendedGenerator gen;
    NumericPoly coeff;
  };
  std::map<std::string, Term> terms;

  ExtendedElement operator+(const ExtendedElement& o) const;
  ExtendedElement operator-(const ExtendedElement& o) const;
  ExtendedElement operator*(std::complex<double> s) const;
  // Left multiplication by a polynomial in n.
  ExtendedElement times(const NumericPoly& q) const;
  void add(const ExtendedGenerator& g, const NumericPoly& q);
};

// Brackets follow the realization on sections over H+: n_mu multiplies, p^{ab}
// acts as i(n^a d/dn_b - n^b d/dn_a) on the n-dependence, varpi is the master
// momentum field, [phi(u), varpi(v)] = i int u v, and all other basic brackets
// vanish. The [p, p] structure sign is selectable so the printed one can be
// exercised as well.
class ExtendedAlgebra {
 public:
  explicit ExtendedAlgebra(QuadratureGrid grid, StructureSign pp_sign = StructureSign::Realized);

  ExtendedElement unit(std::complex<double> c = 1.0) const;
  ExtendedElement n(int mu) const;
  ExtendedElement p(int a, int b) const;
  ExtendedElement phi(const Coefficient& f);
  ExtendedElement varpi(const Coefficient& g);
  // pi_mu(g) = n_mu varpi(g) + b int g (d_mu phi - n_mu n.d phi)
  ExtendedElement pi(int mu, const Coefficient& g, double b = 0.0);

  ExtendedElement bracket(const ExtendedElement& x, const ExtendedElement& y);
  // Max over monomials of the coefficient size: |c| for unit and p terms, the L2
  // norm of the combined smearing for field terms.
  double norm(const ExtendedElement& x);
  double jacobi_residual(const ExtendedElement& a, const ExtendedElement& b, const ExtendedElement& c);

  StructureSign pp_sign() const { return sign_; }

 private:
  std::string register_smearing(const Coefficient& c);
  std::complex<double> pairing(const std::string& u, const std::string& v);
  std::complex<double> inner(const std::string& u, const std::string& v);
  ExtendedElement basic_bracket(const ExtendedGenerator& x, const ExtendedGenerator& y);

  QuadratureGrid grid_;
  StructureSign sign_;
  std::map<std::string, Coefficient> smearings_;
  std::map<std::pair<std::string, std::string>, std::complex<double>> pair_cache_, inner_cache_;
};

}  // namespace hqft
