#pragma once

#include "hqft/minkowski.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace hqft {

using Rational = boost::multiprecision::cpp_rational;

struct ExactComplex {
  Rational re, im;

  ExactComplex() = default;
  ExactComplex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(int r) : re(r) {}

  ExactComplex operator+(const ExactComplex& o) const { return {re + o.re, im + o.im}; }
  ExactComplex operator-(const ExactComplex& o) const { return {re - o.re, im - o.im}; }
  ExactComplex operator-() const { return {-re, -im}; }
  ExactComplex operator*(const ExactComplex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  bool operator==(const ExactComplex& o) const { return re == o.re && im == o.im; }
  bool is_zero() const { return re == 0 && im == 0; }
  std::complex<double> to_complex() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
  std::string str() const;
};

inline const ExactComplex kExactI{Rational(0), Rational(1)};

// Exponents of n^0 .. n^3 (contravariant coordinates).
using Monomial = std::array<int, 4>;

// Polynomial in n^0 .. n^3 with coefficients C, stored in canonical sorted-monomial form.
template <class C>
class BasicPoly {
 public:
  BasicPoly() = default;
  static BasicPoly constant(const C& c);
  static BasicPoly monomial(const Monomial& m, const C& c = C(1));
  // n^mu
  static BasicPoly coordinate(int mu);
  // n_mu = eta_{mu mu} n^mu
  static BasicPoly lowered_coordinate(int mu);
  // eta^{mu nu} n_mu n_nu
  static BasicPoly norm_squared();

  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, C>& terms() const { return terms_; }

  BasicPoly operator+(const BasicPoly& o) const;
  BasicPoly operator-(const BasicPoly& o) const;
  BasicPoly operator-() const;
  BasicPoly operator*(const BasicPoly& o) const;
  BasicPoly operator*(const C& s) const;
  bool operator==(const BasicPoly& o) const { return terms_ == o.terms_; }

  // d/dn^mu
  BasicPoly derivative(int mu) const;
  std::complex<double> evaluate(const FourVector& n) const;
  std::string str() const;

 private:
  void add(const Monomial& m, const C& c);
  std::map<Monomial, C> terms_;
};

using PolyFunction = BasicPoly<ExactComplex>;
using NumericPoly = BasicPoly<std::complex<double>>;

NumericPoly to_numeric(const PolyFunction& p);

// Upper: p^{ab} = i (n^a d/dn_b - n^b d/dn_a) with d/dn_b = eta^{b nu} d/dn^nu.
// Lower: p_{ab} = i (n_a d/dn^b - n_b d/dn^a).
enum class IndexPlacement { Upper, Lower };

// Multiply by n_mu (Upper placement) or n^mu (Lower placement). Throws
// std::length_error when the result would exceed d_max.
PolyFunction apply_n(int mu, const PolyFunction& p, int d_max, IndexPlacement placement = IndexPlacement::Upper);
template <class C>
BasicPoly<C> apply_p(int a, int b, const BasicPoly<C>& p, IndexPlacement placement = IndexPlacement::Upper);

// Sign in front of i in [p, p] = +-i (eta p - eta p + eta p - eta p).
// Printed: +i. Realized: the sign produced by the differential operators above.
enum class StructureSign { Printed, Realized };

struct PairCheck {
  std::string family;  // "nn", "pp", "np", "casimir", "tangency", "antisymmetry"
  std::string label;
  bool pass = false;
};

struct FoliationAlgebraReport {
  int d_max = 0;
  IndexPlacement placement = IndexPlacement::Upper;
  StructureSign sign = StructureSign::Printed;
  std::vector<PairCheck> checks;
  int failures(const std::string& family = "") const;
  int count(const std::string& family = "") const;
};

// Every generator pair evaluated as a linear map on all monomials whose image stays
// within degree d_max, compared exactly with the structure constants.
FoliationAlgebraReport verify_foliation_algebra(int d_max, IndexPlacement placement = IndexPlacement::Upper,
                                                StructureSign sign = StructureSign::Printed);

// All monomials of total degree <= d.
std::vector<Monomial> monomial_basis(int d);

// exp(-i theta p^{ab}) applied to P by the truncated series sum_k (-i theta)^k p^k P / k!.
NumericPoly flow_p(int a, int b, double theta, const NumericPoly& p, int terms = 30);

}  // namespace hqft
