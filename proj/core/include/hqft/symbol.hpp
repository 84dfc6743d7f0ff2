#pragma once

#include "hqft/minkowski.hpp"

#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace hqft {

using Complex = std::complex<double>;
using CVec4 = Eigen::Vector4cd;

// gamma_n(k) = (n^mu k_mu)^2 - eta^{mu nu} k_mu k_nu + m^2, evaluated at complex covectors.
Complex gamma_value(const FourVector& n, double mass, const CVec4& k);
double gamma_value(const FoliationVector& n, double mass, const Covector& k);

struct SymbolFactor {
  enum class Kind { GammaPower, Linear, ExpSqrtGamma };
  Kind kind = Kind::Linear;
  Vec4 vec = Vec4::Zero();  // n^mu for gamma factors, l^mu for linear factors (l^mu k_mu)
  double mass = 0.0;
  double power = 0.0;       // GammaPower: gamma^power
  Complex rate = 0.0;       // ExpSqrtGamma: exp(rate * sqrt(gamma))

  Complex evaluate(const CVec4& k) const;
  std::string key() const;
};

struct SymbolTerm {
  Complex scale = 1.0;
  std::vector<SymbolFactor> factors;  // canonical order, gamma factors with equal (n, m) merged
};

// Multiplier in momentum space: a finite sum of products of gamma powers,
// linear forms and exp(c sqrt(gamma)). Products are simplified structurally,
// so gamma^{-1/4} * gamma^{1/4} collapses to the constant 1 with no rounding.
class SymbolFunction {
 public:
  SymbolFunction() = default;  // the zero symbol

  static SymbolFunction constant(Complex c);
  static SymbolFunction gamma_power(const FoliationVector& n, double mass, double power);
  static SymbolFunction gamma(const FoliationVector& n, double mass) { return gamma_power(n, mass, 1.0); }
  static SymbolFunction linear(const FourVector& l);
  // k -> k_mu
  static SymbolFunction momentum(int mu);
  static SymbolFunction exp_sqrt_gamma(const FoliationVector& n, double mass, Complex rate);
  static SymbolFunction from_term(const SymbolTerm& t);

  Complex evaluate(const CVec4& k) const;
  Complex operator()(const Covector& k) const { return evaluate(k.components().cast<Complex>()); }

  SymbolFunction operator*(const SymbolFunction& o) const;
  SymbolFunction operator+(const SymbolFunction& o) const;
  SymbolFunction operator-(const SymbolFunction& o) const;
  SymbolFunction operator*(Complex s) const;
  // Only for single-term symbols; linear factors need a non-negative integer power.
  SymbolFunction pow(double p) const;

  // k -> s(-k)
  SymbolFunction reflected() const;
  // k -> conj(s(conj k)); equals conj(s(k)) on real k.
  SymbolFunction conjugated() const;
  // k -> s(k Lambda), i.e. every n and l is replaced by Lambda n, Lambda l.
  SymbolFunction transported(const LorentzTransform& lambda) const;

  // Largest t in [0, inf) for which k + i t y keeps Re gamma >= m^2 / 2 for every
  // non-polynomial factor; infinity when the symbol is entire.
  double max_shift(const Vec4& y) const;
  // Total degree in k if every term is polynomial, else -1.
  int polynomial_degree() const;

  bool is_zero() const { return terms_.empty(); }
  const std::vector<SymbolTerm>& terms() const { return terms_; }
  std::string key() const;

 private:
  void add_term(SymbolTerm t);
  static SymbolTerm multiply(const SymbolTerm& a, const SymbolTerm& b);
  std::vector<SymbolTerm> terms_;
};

inline SymbolFunction operator*(Complex s, const SymbolFunction& f) { return f * s; }

}  // namespace hqft
