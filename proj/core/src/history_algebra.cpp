#include "hqft/history_algebra.hpp"
#include "hqft/quadrature_rules.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hqft {

namespace {
const Complex kI(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}  // namespace

Coefficient Coefficient::derivative(int mu) const {
  return {base, symbol * (SymbolFunction::momentum(mu) * kI)};
}

Coefficient Coefficient::transformed(const LorentzTransform& lambda, const FourVector& a) const {
  return {poincare_act(lambda, a, base), symbol.transported(lambda)};
}

Complex bilinear_pairing(const Coefficient& u, const Coefficient& v, const QuadratureGrid& grid) {
  return weighted_inner(u.base.conjugate(), u.symbol.reflected() * v.symbol, v.base, grid);
}

Complex l2_inner(const Coefficient& u, const Coefficient& v, const QuadratureGrid& grid) {
  return weighted_inner(u.base, u.symbol.conjugated() * v.symbol, v.base, grid);
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::phi: return "phi";
    case FieldKind::pi: return "pi";
    case FieldKind::covariant_phi: return "covariant_phi";
    case FieldKind::covariant_pi: return "covariant_pi";
    case FieldKind::composite: return "composite";
  }
  return "?";
}

SmearedFieldOp SmearedFieldOp::operator+(const SmearedFieldOp& o) const {
  SmearedFieldOp r;
  r.foliation = foliation;
  r.annihilation = annihilation;
  r.creation = creation;
  r.annihilation.insert(r.annihilation.end(), o.annihilation.begin(), o.annihilation.end());
  r.creation.insert(r.creation.end(), o.creation.begin(), o.creation.end());
  return r;
}

SmearedFieldOp SmearedFieldOp::operator*(Complex s) const {
  SmearedFieldOp r = *this;
  r.kind = FieldKind::composite;
  for (auto& c : r.annihilation) c.symbol = c.symbol * s;
  for (auto& c : r.creation) c.symbol = c.symbol * s;
  return r;
}

SmearedFieldOp make_field(FieldKind kind, const std::optional<FoliationVector>& n, const Coefficient& f,
                          double mass) {
  SmearedFieldOp op;
  op.kind = kind;
  SymbolFunction s_a, s_c;
  switch (kind) {
    case FieldKind::phi:
    case FieldKind::pi: {
      if (!n) throw std::invalid_argument("make_field: n-representation fields need a foliation vector");
      op.foliation = n;
      if (kind == FieldKind::phi) {
        s_a = SymbolFunction::gamma_power(*n, mass, -0.25) * kInvSqrt2;
        s_c = s_a;
      } else {
        s_a = SymbolFunction::gamma_power(*n, mass, 0.25) * (-kI * kInvSqrt2);
        s_c = SymbolFunction::gamma_power(*n, mass, 0.25) * (kI * kInvSqrt2);
      }
      break;
    }
    case FieldKind::covariant_phi:
      s_a = s_c = SymbolFunction::constant(kInvSqrt2);
      break;
    case FieldKind::covariant_pi:
      s_a = SymbolFunction::constant(-kI * kInvSqrt2);
      s_c = SymbolFunction::constant(kI * kInvSqrt2);
      break;
    case FieldKind::composite:
      throw std::invalid_argument("make_field: composite is not a basic field kind");
  }
  op.annihilation.push_back(f.with_symbol(s_a));
  op.creation.push_back(f.with_symbol(s_c));
  return op;
}

Complex commutator_value(const SmearedFieldOp& a, const SmearedFieldOp& b, const QuadratureGrid& grid) {
  std::vector<Complex> parts;
  for (const auto& x : a.annihilation)
    for (const auto& y : b.creation) parts.push_back(bilinear_pairing(x, y, grid));
  for (const auto& x : b.annihilation)
    for (const auto& y : a.creation) parts.push_back(-bilinear_pairing(x, y, grid));
  return pairwise_sum(parts);
}

SmearedFieldOp heisenberg_evolve(const FoliationVector& n, double s, const SmearedFieldOp& op, double mass) {
  SmearedFieldOp r = op;
  const SymbolFunction down = SymbolFunction::exp_sqrt_gamma(n, mass, -kI * s);
  const SymbolFunction up = SymbolFunction::exp_sqrt_gamma(n, mass, kI * s);
  for (auto& c : r.annihilation) c.symbol = c.symbol * down;
  for (auto& c : r.creation) c.symbol = c.symbol * up;
  return r;
}

BogoliubovPair bogoliubov(const FoliationVector& n, const FoliationVector& n_prime, double mass) {
  // r = (gamma'/gamma)^{1/4}; alpha = (r + 1/r)/2, beta = (r - 1/r)/2.
  const SymbolFunction r = SymbolFunction::gamma_power(n_prime, mass, 0.25) * SymbolFunction::gamma_power(n, mass, -0.25);
  const SymbolFunction rinv =
      SymbolFunction::gamma_power(n_prime, mass, -0.25) * SymbolFunction::gamma_power(n, mass, 0.25);
  return {n, n_prime, mass, (r + rinv) * 0.5, (r - rinv) * 0.5};
}

double beta_hs_norm(const BogoliubovPair& pair, double cutoff, const BallQuadrature& rule) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("beta_hs_norm: cutoff must be positive");
  if (pair.beta.is_zero()) return 0.0;
  std::vector<double> edges{0.0};
  for (double e = 1.0; e < cutoff; e *= 2.0) edges.push_back(e);
  edges.push_back(cutoff);

  const Rule1D gr = gauss_legendre(rule.radial_per_panel);
  const Rule1D gp = gauss_legendre(rule.polar);
  const int n_az = rule.azimuth;

  // Angular nodes are shared by every shell.
  std::vector<Vec4> dirs;
  std::vector<double> dw;
  for (int i = 0; i < rule.polar; ++i) {
    const double psi = 0.5 * std::numbers::pi * (gp.nodes[i] + 1.0);
    const double wpsi = 0.5 * std::numbers::pi * gp.weights[i] * std::sin(psi) * std::sin(psi);
    for (int j = 0; j < rule.polar; ++j) {
      const double ct = gp.nodes[j], st = std::sqrt(1.0 - ct * ct);
      for (int l = 0; l < n_az; ++l) {
        const double ph = 2.0 * std::numbers::pi * l / n_az;
        dirs.emplace_back(std::cos(psi), std::sin(psi) * ct, std::sin(psi) * st * std::cos(ph),
                          std::sin(psi) * st * std::sin(ph));
        dw.push_back(wpsi * gp.weights[j] * 2.0 * std::numbers::pi / n_az);
      }
    }
  }

  std::vector<Complex> shells;
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p], b = edges[p + 1];
    for (int i = 0; i < rule.radial_per_panel; ++i) {
      const double r = a + 0.5 * (b - a) * (gr.nodes[i] + 1.0);
      const double wr = 0.5 * (b - a) * gr.weights[i] * r * r * r;
      std::vector<Complex> ang(dirs.size());
      for (size_t d = 0; d < dirs.size(); ++d) {
        const Complex v = pair.beta.evaluate((dirs[d] * r).cast<Complex>());
        ang[d] = dw[d] * std::norm(v);
      }
      shells.push_back(wr * pairwise_sum(ang));
    }
  }
  const double two_pi4 = std::pow(2.0 * std::numbers::pi, 4);
  return pairwise_sum(shells).real() / two_pi4;
}

QuadraticObservable history_hamiltonian(const FoliationVector& n, double mass) {
  return QuadraticObservable(SymbolFunction::gamma_power(n, mass, 0.5));
}

MomentumSymbol internal_momentum_symbol(const FoliationVector& n, int mu, double mass) {
  if (mu < 0 || mu > 3) throw std::out_of_range("internal_momentum_symbol: index");
  const Covector nl = n.lowered();
  Vec4 l = -nl[mu] * n.vector().components();
  l[mu] += 1.0;
  MomentumSymbol m;
  m.longitudinal = SymbolFunction::gamma_power(n, mass, 0.5) * nl[mu];
  m.transverse = SymbolFunction::linear(FourVector(-l));
  return m;
}

Complex energy_matrix_element(const FoliationVector& n, const TestFunction& f, const TestFunction& g, double mass,
                              const QuadratureGrid& grid) {
  return history_hamiltonian(n, mass).one_particle_element(f, g, grid);
}

Complex internal_momentum_element(const FoliationVector& n, int mu, const TestFunction& f, const TestFunction& g,
                                  double mass, const QuadratureGrid& grid) {
  return weighted_inner(f, internal_momentum_symbol(n, mu, mass).total(), g, grid);
}

}  // namespace hqft
