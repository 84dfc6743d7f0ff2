#pragma once

#include "hqft/packets.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hqft {

// Function whose Fourier transform is symbol(k) * base~(k).
struct Coefficient {
  TestFunction base;
  SymbolFunction symbol = SymbolFunction::constant(1.0);

  static Coefficient of(const TestFunction& f) { return {f, SymbolFunction::constant(1.0)}; }
  Coefficient with_symbol(const SymbolFunction& s) const { return {base, s * symbol}; }
  // Pointwise complex conjugate.
  Coefficient conjugate() const { return {base.conjugate(), symbol.reflected().conjugated()}; }
  // d/dX^mu
  Coefficient derivative(int mu) const;
  Coefficient transformed(const LorentzTransform& lambda, const FourVector& a = FourVector()) const;
  Complex fourier(const CVec4& k) const { return symbol.evaluate(k) * base.fourier(k); }
  std::string key() const { return base.key() + symbol.key(); }
};

// int d^4X u(X) v(X)
Complex bilinear_pairing(const Coefficient& u, const Coefficient& v, const QuadratureGrid& grid);
// <u, v> = int d^4X conj(u(X)) v(X)
Complex l2_inner(const Coefficient& u, const Coefficient& v, const QuadratureGrid& grid);

enum class FieldKind { phi, pi, covariant_phi, covariant_pi, composite };
std::string to_string(FieldKind k);

// Linear in b and b^dagger: sum_j int a_j(X) b(X) d^4X + sum_j int beta_j(X) b^dagger(X) d^4X,
// with [b(X), b^dagger(X')] = delta^4(X - X').
struct SmearedFieldOp {
  FieldKind kind = FieldKind::composite;
  std::optional<FoliationVector> foliation;
  std::vector<Coefficient> annihilation;
  std::vector<Coefficient> creation;

  SmearedFieldOp operator+(const SmearedFieldOp& o) const;
  SmearedFieldOp operator*(Complex s) const;
};

// phi_n(f) = int f (1/sqrt 2) Gamma^{-1/4}(b + b^dagger),
// pi_n(f) = int f (1/(i sqrt 2)) Gamma^{1/4}(b - b^dagger), Gamma symbol gamma_n.
// The covariant kinds drop Gamma; n is ignored for them.
SmearedFieldOp make_field(FieldKind kind, const std::optional<FoliationVector>& n, const Coefficient& f,
                          double mass);
inline SmearedFieldOp make_field(FieldKind kind, const std::optional<FoliationVector>& n, const TestFunction& f,
                                 double mass) {
  return make_field(kind, n, Coefficient::of(f), mass);
}

// c-number value of [A, B].
Complex commutator_value(const SmearedFieldOp& a, const SmearedFieldOp& b, const QuadratureGrid& grid);

// Conjugation by exp(i s H_n): a -> exp(-i s sqrt gamma) a, beta -> exp(i s sqrt gamma) beta.
SmearedFieldOp heisenberg_evolve(const FoliationVector& n, double s, const SmearedFieldOp& op, double mass);

// b_{n'}(k) = alpha(k) b_n(k) + beta(k) b_n^dagger(-k).
struct BogoliubovPair {
  FoliationVector n, n_prime;
  double mass = 1.0;
  SymbolFunction alpha, beta;
};
BogoliubovPair bogoliubov(const FoliationVector& n, const FoliationVector& n_prime, double mass);

// Radial Gauss-Legendre on dyadic panels [0,1], [1,2], [2,4], ... times a product
// rule on S^3 (Gauss-Legendre in the two polar angles with their sin weights,
// trapezoid in the azimuth).
struct BallQuadrature {
  int radial_per_panel = 16;
  int polar = 24;
  int azimuth = 24;
};

// int_{|k| <= R} |beta(k)|^2 d^4k / (2 pi)^4, |k| the Euclidean norm of the components.
double beta_hs_norm(const BogoliubovPair& pair, double cutoff, const BallQuadrature& rule = {});

// Normal-ordered int b^dagger T b for a one-particle symbol T.
class QuadraticObservable {
 public:
  explicit QuadraticObservable(SymbolFunction one_particle) : symbol_(std::move(one_particle)) {}
  const SymbolFunction& symbol() const { return symbol_; }
  // <1_f| Q |1_g>
  Complex one_particle_element(const TestFunction& f, const TestFunction& g, const QuadratureGrid& grid) const {
    return weighted_inner(f, symbol_, g, grid);
  }
  // Normal ordering leaves no constant term, so <0|Q|0> vanishes identically.
  double vacuum_expectation() const { return 0.0; }

 private:
  SymbolFunction symbol_;
};

QuadraticObservable history_hamiltonian(const FoliationVector& n, double mass);

// Internal momentum p_mu(k) = n_mu sqrt(gamma_n(k)) - kperp_mu, kperp_mu = k_mu - n_mu (n.k).
//
// Write b, b^dagger for the n-representation operators and D_mu for the derivative
// transverse to n. The longitudinal part of the internal momentum is n_mu H_n with
// one-particle symbol n_mu sqrt(gamma_n). The transverse part int pi_n D_mu phi_n
// normal-orders to i int b^dagger D_mu b plus bb and b^dagger b^dagger pieces; the
// latter are int of antisymmetric kernels against symmetric products and vanish.
// With D_mu -> i kperp_mu this leaves the one-particle symbol -kperp_mu.
struct MomentumSymbol {
  SymbolFunction longitudinal;
  SymbolFunction transverse;
  SymbolFunction total() const { return longitudinal + transverse; }
};
MomentumSymbol internal_momentum_symbol(const FoliationVector& n, int mu, double mass);
Complex energy_matrix_element(const FoliationVector& n, const TestFunction& f, const TestFunction& g, double mass,
                              const QuadratureGrid& grid);
Complex internal_momentum_element(const FoliationVector& n, int mu, const TestFunction& f, const TestFunction& g,
                                  double mass, const QuadratureGrid& grid);

}  // namespace hqft
