#include "hqft/extended_algebra.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace hqft {

namespace {

using C = std::complex<double>;

int eta(int i, int j) { return i == j ? (i == 0 ? 1 : -1) : 0; }

// Collapses sum_j c_j (l_j . k) into a single linear form.
SymbolFunction merge_linear(const SymbolFunction& s) {
  SymbolFunction rest;
  Eigen::Vector4cd l = Eigen::Vector4cd::Zero();
  for (const auto& t : s.terms()) {
    if (t.factors.size() == 1 && t.factors[0].kind == SymbolFactor::Kind::Linear) {
      l += t.scale * t.factors[0].vec.cast<C>();
    } else {
      rest = rest + SymbolFunction::from_term(t);
    }
  }
  return rest + SymbolFunction::linear(FourVector(l.real())) + SymbolFunction::linear(FourVector(l.imag())) * C(0.0, 1.0);
}

ExtendedGenerator p_gen(int a, int b) {
  ExtendedGenerator g;
  g.kind = ExtendedGenerator::Kind::P;
  g.a = a;
  g.b = b;
  return g;
}

}  // namespace

std::string ExtendedGenerator::key() const {
  switch (kind) {
    case Kind::Unit: return "1";
    case Kind::Phi: return "phi:" + smearing;
    case Kind::Varpi: return "varpi:" + smearing;
    case Kind::P: return "p" + std::to_string(a) + std::to_string(b);
  }
  return "?";
}

void ExtendedElement::add(const ExtendedGenerator& g, const NumericPoly& q) {
  if (q.is_zero()) return;
  const std::string k = g.key();
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms.emplace(k, Term{g, q});
  } else {
    it->second.coeff = it->second.coeff + q;
    if (it->second.coeff.is_zero()) terms.erase(it);
  }
}

ExtendedElement ExtendedElement::operator+(const ExtendedElement& o) const {
  ExtendedElement r = *this;
  for (const auto& [k, t] : o.terms) r.add(t.gen, t.coeff);
  return r;
}

ExtendedElement ExtendedElement::operator-(const ExtendedElement& o) const { return *this + o * C(-1.0); }

ExtendedElement ExtendedElement::operator*(C s) const {
  ExtendedElement r;
  for (const auto& [k, t] : terms) r.add(t.gen, t.coeff * s);
  return r;
}

ExtendedElement ExtendedElement::times(const NumericPoly& q) const {
  ExtendedElement r;
  for (const auto& [k, t] : terms) r.add(t.gen, q * t.coeff);
  return r;
}

ExtendedAlgebra::ExtendedAlgebra(QuadratureGrid grid, StructureSign pp_sign) : grid_(std::move(grid)), sign_(pp_sign) {}

ExtendedElement ExtendedAlgebra::unit(C c) const {
  ExtendedElement e;
  e.add({}, NumericPoly::constant(c));
  return e;
}

ExtendedElement ExtendedAlgebra::n(int mu) const {
  ExtendedElement e;
  e.add({}, NumericPoly::lowered_coordinate(mu));
  return e;
}

ExtendedElement ExtendedAlgebra::p(int a, int b) const {
  if (a == b) throw std::invalid_argument("ExtendedAlgebra::p: indices must differ");
  ExtendedElement e;
  if (a < b)
    e.add(p_gen(a, b), NumericPoly::constant(1.0));
  else
    e.add(p_gen(b, a), NumericPoly::constant(-1.0));
  return e;
}

std::string ExtendedAlgebra::register_smearing(const Coefficient& c) {
  const std::string k = c.key();
  smearings_.emplace(k, c);
  return k;
}

ExtendedElement ExtendedAlgebra::phi(const Coefficient& f) {
  ExtendedGenerator g;
  g.kind = ExtendedGenerator::Kind::Phi;
  g.smearing = register_smearing(f);
  ExtendedElement e;
  e.add(g, NumericPoly::constant(1.0));
  return e;
}

ExtendedElement ExtendedAlgebra::varpi(const Coefficient& f) {
  ExtendedGenerator g;
  g.kind = ExtendedGenerator::Kind::Varpi;
  g.smearing = register_smearing(f);
  ExtendedElement e;
  e.add(g, NumericPoly::constant(1.0));
  return e;
}

ExtendedElement ExtendedAlgebra::pi(int mu, const Coefficient& g, double b) {
  // int g d_mu phi = phi(-d_mu g)
  ExtendedElement e = varpi(g).times(NumericPoly::lowered_coordinate(mu));
  if (b != 0.0) {
    e = e + phi(g.derivative(mu)) * C(-b);
    for (int nu = 0; nu < 4; ++nu)
      e = e + phi(g.derivative(nu)).times(NumericPoly::lowered_coordinate(mu) * NumericPoly::coordinate(nu)) * C(b);
  }
  return e;
}

C ExtendedAlgebra::pairing(const std::string& u, const std::string& v) {
  // Symmetric, so cache under the sorted key pair and compute once.
  auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
  auto it = pair_cache_.find(key);
  if (it != pair_cache_.end()) return it->second;
  const C val = bilinear_pairing(smearings_.at(key.first), smearings_.at(key.second), grid_);
  pair_cache_.emplace(key, val);
  return val;
}

C ExtendedAlgebra::inner(const std::string& u, const std::string& v) {
  auto key = std::make_pair(u, v);
  auto it = inner_cache_.find(key);
  if (it != inner_cache_.end()) return it->second;
  const C val = l2_inner(smearings_.at(u), smearings_.at(v), grid_);
  inner_cache_.emplace(key, val);
  inner_cache_.emplace(std::make_pair(v, u), std::conj(val));
  return val;
}

ExtendedElement ExtendedAlgebra::basic_bracket(const ExtendedGenerator& x, const ExtendedGenerator& y) {
  using K = ExtendedGenerator::Kind;
  ExtendedElement r;
  const C i(0.0, 1.0);
  if (x.kind == K::Phi && y.kind == K::Varpi) return unit(i * pairing(x.smearing, y.smearing));
  if (x.kind == K::Varpi && y.kind == K::Phi) return unit(-i * pairing(x.smearing, y.smearing));
  if (x.kind == K::P && y.kind == K::P) {
    const int a = x.a, b = x.b, c = y.a, d = y.b;
    const C s = sign_ == StructureSign::Printed ? i : -i;
    auto pp = [&](int u, int v, int coeff) {
      if (coeff == 0 || u == v) return;
      r = r + p(u, v) * C(coeff);
    };
    pp(b, d, eta(a, c));
    pp(a, d, -eta(b, c));
    pp(a, c, eta(b, d));
    pp(b, c, -eta(a, d));
    return r * s;
  }
  return r;
}

ExtendedElement ExtendedAlgebra::bracket(const ExtendedElement& x, const ExtendedElement& y) {
  using K = ExtendedGenerator::Kind;
  ExtendedElement r;
  for (const auto& [kx, tx] : x.terms)
    for (const auto& [ky, ty] : y.terms) {
      // [P X, Q Y] = P Q [X, Y] + P [X, Q] Y - Q [Y, P] X
      r = r + basic_bracket(tx.gen, ty.gen).times(tx.coeff * ty.coeff);
      if (tx.gen.kind == K::P) {
        const NumericPoly xq = apply_p(tx.gen.a, tx.gen.b, ty.coeff);
        ExtendedElement e;
        e.add(ty.gen, tx.coeff * xq);
        r = r + e;
      }
      if (ty.gen.kind == K::P) {
        const NumericPoly yp = apply_p(ty.gen.a, ty.gen.b, tx.coeff);
        ExtendedElement e;
        e.add(tx.gen, ty.coeff * yp);
        r = r - e;
      }
    }
  return r;
}

double ExtendedAlgebra::norm(const ExtendedElement& x) {
  using K = ExtendedGenerator::Kind;
  double m = 0.0;
  // Field terms grouped by kind and monomial: sum_i c_i u_i measured in L2.
  std::map<std::pair<int, Monomial>, std::vector<std::pair<std::string, C>>> fields;
  for (const auto& [k, t] : x.terms) {
    for (const auto& [mono, c] : t.coeff.terms()) {
      if (t.gen.kind == K::Phi || t.gen.kind == K::Varpi)
        fields[{static_cast<int>(t.gen.kind), mono}].emplace_back(t.gen.smearing, c);
      else
        m = std::max(m, std::abs(c));
    }
  }
  for (const auto& [key, list] : fields) {
    // Combine per base function first so that cancelling derivative smearings
    // cancel in the symbol rather than inside a Gram quadratic form.
    std::map<std::string, Coefficient> combined;
    for (const auto& [u, cu] : list) {
      const Coefficient& cf = smearings_.at(u);
      auto it = combined.find(cf.base.key());
      if (it == combined.end())
        combined.emplace(cf.base.key(), Coefficient{cf.base, cf.symbol * cu});
      else
        it->second.symbol = it->second.symbol + cf.symbol * cu;
    }
    std::vector<Coefficient> parts;
    for (auto& [k, cf] : combined) {
      cf.symbol = merge_linear(cf.symbol);
      if (!cf.symbol.is_zero()) parts.push_back(cf);
    }
    C s = 0.0;
    for (const auto& u : parts)
      for (const auto& v : parts) s += l2_inner(u, v, grid_);
    m = std::max(m, std::sqrt(std::max(0.0, s.real())));
  }
  return m;
}

double ExtendedAlgebra::jacobi_residual(const ExtendedElement& a, const ExtendedElement& b, const ExtendedElement& c) {
  const ExtendedElement j = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
  return norm(j);
}

}  // namespace hqft
