#include "hqft/foliation.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace hqft {

namespace {

template <class C>
C unit_i() {
  if constexpr (std::is_same_v<C, ExactComplex>)
    return kExactI;
  else
    return C(0.0, 1.0);
}

template <class C>
bool coeff_zero(const C& c) {
  if constexpr (std::is_same_v<C, ExactComplex>)
    return c.is_zero();
  else
    return c == C(0.0);
}

int eta(int mu) { return mu == 0 ? 1 : -1; }

void check_index(int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("foliation: index out of range");
}

}  // namespace

std::string ExactComplex::str() const {
  std::ostringstream os;
  os << "(" << re << (im < 0 ? " - " : " + ") << (im < 0 ? Rational(-im) : im) << "i)";
  return os.str();
}

template <class C>
void BasicPoly<C>::add(const Monomial& m, const C& c) {
  if (coeff_zero(c)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second = it->second + c;
    if (coeff_zero(it->second)) terms_.erase(it);
  }
}

template <class C>
BasicPoly<C> BasicPoly<C>::constant(const C& c) {
  BasicPoly p;
  p.add({0, 0, 0, 0}, c);
  return p;
}

template <class C>
BasicPoly<C> BasicPoly<C>::monomial(const Monomial& m, const C& c) {
  BasicPoly p;
  p.add(m, c);
  return p;
}

template <class C>
BasicPoly<C> BasicPoly<C>::coordinate(int mu) {
  check_index(mu);
  Monomial m{0, 0, 0, 0};
  m[mu] = 1;
  return monomial(m);
}

template <class C>
BasicPoly<C> BasicPoly<C>::lowered_coordinate(int mu) {
  return coordinate(mu) * C(eta(mu));
}

template <class C>
BasicPoly<C> BasicPoly<C>::norm_squared() {
  BasicPoly p;
  for (int mu = 0; mu < 4; ++mu) p = p + coordinate(mu) * lowered_coordinate(mu);
  return p;
}

template <class C>
int BasicPoly<C>::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2] + m[3]);
  return d;
}

template <class C>
BasicPoly<C> BasicPoly<C>::operator+(const BasicPoly& o) const {
  BasicPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add(m, c);
  return r;
}

template <class C>
BasicPoly<C> BasicPoly<C>::operator-() const {
  BasicPoly r;
  for (const auto& [m, c] : terms_) r.add(m, C(0) - c);
  return r;
}

template <class C>
BasicPoly<C> BasicPoly<C>::operator-(const BasicPoly& o) const {
  return *this + (-o);
}

template <class C>
BasicPoly<C> BasicPoly<C>::operator*(const BasicPoly& o) const {
  BasicPoly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m;
      for (int i = 0; i < 4; ++i) m[i] = m1[i] + m2[i];
      r.add(m, c1 * c2);
    }
  return r;
}

template <class C>
BasicPoly<C> BasicPoly<C>::operator*(const C& s) const {
  BasicPoly r;
  for (const auto& [m, c] : terms_) r.add(m, c * s);
  return r;
}

template <class C>
BasicPoly<C> BasicPoly<C>::derivative(int mu) const {
  check_index(mu);
  BasicPoly r;
  for (const auto& [m, c] : terms_) {
    if (m[mu] == 0) continue;
    Monomial d = m;
    --d[mu];
    r.add(d, c * C(m[mu]));
  }
  return r;
}

template <class C>
std::complex<double> BasicPoly<C>::evaluate(const FourVector& n) const {
  std::complex<double> s = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = 1.0;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < m[i]; ++k) v *= n[i];
    if constexpr (std::is_same_v<C, ExactComplex>)
      s += c.to_complex() * v;
    else
      s += c * v;
  }
  return s;
}

template <class C>
std::string BasicPoly<C>::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if constexpr (std::is_same_v<C, ExactComplex>)
      os << c.str();
    else
      os << c;
    for (int i = 0; i < 4; ++i)
      if (m[i]) os << "*n" << i << (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
  }
  return os.str();
}

template class BasicPoly<ExactComplex>;
template class BasicPoly<std::complex<double>>;

NumericPoly to_numeric(const PolyFunction& p) {
  NumericPoly r;
  for (const auto& [m, c] : p.terms()) r = r + NumericPoly::monomial(m, c.to_complex());
  return r;
}

PolyFunction apply_n(int mu, const PolyFunction& p, int d_max, IndexPlacement placement) {
  check_index(mu);
  if (!p.is_zero() && p.degree() + 1 > d_max)
    throw std::length_error("apply_n: degree " + std::to_string(p.degree() + 1) + " exceeds d_max " +
                            std::to_string(d_max));
  const PolyFunction x =
      placement == IndexPlacement::Upper ? PolyFunction::lowered_coordinate(mu) : PolyFunction::coordinate(mu);
  return x * p;
}

template <class C>
BasicPoly<C> apply_p(int a, int b, const BasicPoly<C>& p, IndexPlacement placement) {
  check_index(a);
  check_index(b);
  if (a == b) throw std::invalid_argument("apply_p: indices must differ");
  if (placement == IndexPlacement::Upper) {
    // d/dn_b = eta^{b b} d/dn^b
    const BasicPoly<C> t = BasicPoly<C>::coordinate(a) * p.derivative(b) * C(eta(b)) -
                           BasicPoly<C>::coordinate(b) * p.derivative(a) * C(eta(a));
    return t * unit_i<C>();
  }
  const BasicPoly<C> t = BasicPoly<C>::lowered_coordinate(a) * p.derivative(b) -
                         BasicPoly<C>::lowered_coordinate(b) * p.derivative(a);
  return t * unit_i<C>();
}

template PolyFunction apply_p(int, int, const PolyFunction&, IndexPlacement);
template NumericPoly apply_p(int, int, const NumericPoly&, IndexPlacement);

std::vector<Monomial> monomial_basis(int d) {
  std::vector<Monomial> out;
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b)
      for (int c = 0; a + b + c <= d; ++c)
        for (int e = 0; a + b + c + e <= d; ++e) out.push_back({a, b, c, e});
  return out;
}

int FoliationAlgebraReport::failures(const std::string& family) const {
  int n = 0;
  for (const auto& c : checks)
    if ((family.empty() || c.family == family) && !c.pass) ++n;
  return n;
}

int FoliationAlgebraReport::count(const std::string& family) const {
  int n = 0;
  for (const auto& c : checks)
    if (family.empty() || c.family == family) ++n;
  return n;
}

FoliationAlgebraReport verify_foliation_algebra(int d_max, IndexPlacement placement, StructureSign sign) {
  if (d_max < 2) throw std::invalid_argument("verify_foliation_algebra: d_max must be at least 2");
  using Op = std::function<PolyFunction(const PolyFunction&)>;
  const auto basis = monomial_basis(d_max);
  const bool upper = placement == IndexPlacement::Upper;
  // Headroom: [n.n, n_a] raises degree by 3.
  const int cap = d_max + 3;

  // n-generator carries the index opposite to p's.
  auto n_op = [&](int mu) -> Op { return [=](const PolyFunction& p) { return apply_n(mu, p, cap, placement); }; };
  // The other-height n, e.g. n^mu when n_mu is the generator.
  auto n_dual = [&](int mu) -> Op {
    return [=](const PolyFunction& p) {
      return (upper ? PolyFunction::coordinate(mu) : PolyFunction::lowered_coordinate(mu)) * p;
    };
  };
  auto p_op = [&](int a, int b) -> Op {
    return [=](const PolyFunction& p) {
      if (a == b) return PolyFunction();
      return apply_p(a, b, p, placement);
    };
  };
  auto same = [&](const Op& lhs, const Op& rhs) {
    for (const auto& m : basis) {
      const PolyFunction p = PolyFunction::monomial(m);
      if (!(lhs(p) == rhs(p))) return false;
    }
    return true;
  };
  auto comm = [](const Op& x, const Op& y) -> Op {
    return [=](const PolyFunction& p) { return x(y(p)) - y(x(p)); };
  };
  auto zero = [](const PolyFunction&) { return PolyFunction(); };
  const std::string up = upper ? "^" : "_", dn = upper ? "_" : "^";

  FoliationAlgebraReport rep;
  rep.d_max = d_max;
  rep.placement = placement;
  rep.sign = sign;

  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      rep.checks.push_back({"nn", "[n" + dn + std::to_string(a) + ",n" + dn + std::to_string(b) + "]",
                            same(comm(n_op(a), n_op(b)), zero)});

  std::vector<std::pair<int, int>> gens;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) gens.emplace_back(a, b);

  const ExactComplex ci = sign == StructureSign::Printed ? kExactI : -kExactI;
  for (size_t x = 0; x < gens.size(); ++x)
    for (size_t y = x + 1; y < gens.size(); ++y) {
      const auto [a, b] = gens[x];
      const auto [c, d] = gens[y];
      auto eta2 = [](int i, int j) { return i == j ? eta(i) : 0; };
      Op rhs = [=](const PolyFunction& p) {
        PolyFunction r = p_op(b, d)(p) * ExactComplex(eta2(a, c)) - p_op(a, d)(p) * ExactComplex(eta2(b, c)) +
                         p_op(a, c)(p) * ExactComplex(eta2(b, d)) - p_op(b, c)(p) * ExactComplex(eta2(a, d));
        return r * ci;
      };
      rep.checks.push_back({"pp",
                            "[p" + up + std::to_string(a) + std::to_string(b) + ",p" + up + std::to_string(c) +
                                std::to_string(d) + "]",
                            same(comm(p_op(a, b), p_op(c, d)), rhs)});
    }

  for (int al = 0; al < 4; ++al)
    for (const auto& [b, c] : gens) {
      Op rhs = [=](const PolyFunction& p) {
        PolyFunction r;
        if (al == b) r = r + n_dual(c)(p);
        if (al == c) r = r - n_dual(b)(p);
        return r * kExactI;
      };
      rep.checks.push_back({"np",
                            "[n" + dn + std::to_string(al) + ",p" + up + std::to_string(b) + std::to_string(c) + "]",
                            same(comm(n_op(al), p_op(b, c)), rhs)});
    }

  const PolyFunction casimir = PolyFunction::norm_squared();
  Op cas = [=](const PolyFunction& p) { return casimir * p; };
  for (const auto& [a, b] : gens)
    rep.checks.push_back({"casimir", "[n.n,p" + up + std::to_string(a) + std::to_string(b) + "]",
                          same(comm(cas, p_op(a, b)), zero)});
  for (int a = 0; a < 4; ++a)
    rep.checks.push_back({"casimir", "[n.n,n" + dn + std::to_string(a) + "]", same(comm(cas, n_op(a)), zero)});

  const PolyFunction constraint = casimir - PolyFunction::constant(1);
  for (const auto& [a, b] : gens)
    rep.checks.push_back({"tangency", "p" + up + std::to_string(a) + std::to_string(b) + "(n.n-1)",
                          p_op(a, b)(constraint).is_zero()});
  for (const auto& [a, b] : gens) {
    Op neg = [=](const PolyFunction& p) { return -apply_p(b, a, p, placement); };
    rep.checks.push_back({"antisymmetry", "p" + up + std::to_string(a) + std::to_string(b), same(p_op(a, b), neg)});
  }
  return rep;
}

NumericPoly flow_p(int a, int b, double theta, const NumericPoly& p, int terms) {
  NumericPoly sum = p, term = p;
  for (int k = 1; k < terms; ++k) {
    term = apply_p(a, b, term) * std::complex<double>(0.0, -theta / k);
    sum = sum + term;
  }
  return sum;
}

}  // namespace hqft
