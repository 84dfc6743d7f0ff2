#pragma once

#include "hqft/foliation.hpp"
#include "hqft/fock_vector.hpp"

#include <functional>
#include <memory>

namespace hqft {

// Every fiber is identified with one packet Fock space, so a section is an
// evaluation rule n -> FockVector that can be queried anywhere on H+.
class BundleSection {
 public:
  using Rule = std::function<FockVector(const FoliationVector&)>;

  explicit BundleSection(Rule rule) : rule_(std::move(rule)) {}
  FockVector operator()(const FoliationVector& n) const { return rule_(n); }

  // Omega(n) = |0>
  static BundleSection ground();
  static BundleSection product(std::function<Complex(const FoliationVector&)> amplitude, FockVector fiber);

 private:
  Rule rule_;
};

// Polynomial amplitude times a fixed fiber vector; the domain of p^{ab}.
struct PolySection {
  PolyFunction amplitude;
  FockVector fiber;
  BundleSection section() const;
};

PolySection apply_p(int a, int b, const PolySection& psi);
PolySection apply_n(int mu, const PolySection& psi, int d_max);

// s: H+ -> [0, inf)
class InternalTimeProfile {
 public:
  static InternalTimeProfile constant(double s);
  static InternalTimeProfile polynomial(const PolyFunction& p);
  // Values at the nodes of `sample`; evaluation elsewhere throws std::out_of_range.
  static InternalTimeProfile tabulated(const FoliationSample& sample, std::vector<double> values);

  double operator()(const FoliationVector& n) const { return rule_(n); }
  // Throws std::invalid_argument if s(n) < 0 or non-finite at a sample node.
  void validate(const FoliationSample& sample) const;

 private:
  explicit InternalTimeProfile(std::function<double(const FoliationVector&)> r) : rule_(std::move(r)) {}
  std::function<double(const FoliationVector&)> rule_;
};

struct BundleContext {
  BundleContext(double mass, const QuadratureGrid& grid, FoliationSample sample)
      : mass(mass), cache(std::make_shared<OneParticleCache>(grid)), sample(std::move(sample)) {}
  double mass;
  std::shared_ptr<OneParticleCache> cache;
  FoliationSample sample;
};

// sum_j mu_j <Psi1(n_j), Psi2(n_j)>
Complex section_inner(BundleContext& ctx, const BundleSection& a, const BundleSection& b);
Complex fiber_inner(BundleContext& ctx, const FockVector& a, const FockVector& b);

BundleSection apply_field(const BundleContext& ctx, const TestFunction& f, const BundleSection& psi);
// Master momentum field: pi_n(g) in the fiber over n.
BundleSection apply_varpi(const BundleContext& ctx, const TestFunction& g, const BundleSection& psi);
BundleSection apply_n(int mu, const BundleSection& psi);
// pi_mu = n_mu varpi
BundleSection apply_pi(const BundleContext& ctx, int mu, const TestFunction& g, const BundleSection& psi);
// pi_mu = n_mu varpi + b (d_mu phi - n_mu n.d phi), derivatives taken on the smearing.
BundleSection apply_pi_variant(const BundleContext& ctx, int mu, const TestFunction& g, double b,
                               const BundleSection& psi);
SmearedFieldOp pi_variant_fiber_op(int mu, const FoliationVector& n, const Coefficient& g, double b, double mass);

BundleSection apply_H(const BundleContext& ctx, const BundleSection& psi);
BundleSection apply_H_s(const BundleContext& ctx, const InternalTimeProfile& s, const BundleSection& psi);
// phi(f; s] = exp(i H[s]) phi(f) exp(-i H[s]), fiber by fiber.
SmearedFieldOp evolved_field_fiber_op(const FoliationVector& n, const InternalTimeProfile& s, const TestFunction& f,
                                      double mass);
BundleSection apply_evolved_field(const BundleContext& ctx, const InternalTimeProfile& s, const TestFunction& f,
                                  const BundleSection& psi);
// Single global internal time s at every fiber.
BundleSection apply_evolved_field(const BundleContext& ctx, double s, const TestFunction& f,
                                  const BundleSection& psi);

// U(n; Lambda): the common-trivialisation action, independent of n.
FockVector apply_intertwiner(const FoliationVector& n, const LorentzTransform& lambda, const FockVector& v);
// (W(Lambda) Psi)(n) = U(Lambda^{-1} n; Lambda) Psi(Lambda^{-1} n)
BundleSection apply_W(const LorentzTransform& lambda, const BundleSection& psi);
// Translations act in every fiber and not on H+.
BundleSection apply_W_translation(const FourVector& a, const BundleSection& psi);

// exp(-alpha (n.u - 1)) for a unit timelike u: a bump on H+ centred at u.
std::function<Complex(const FoliationVector&)> cap_amplitude(const FoliationVector& center, double alpha);

}  // namespace hqft
