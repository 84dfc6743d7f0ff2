#include "hqft/bundle.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>
#include <mutex>
#include <exception>

namespace hqft {

BundleSection BundleSection::ground() {
  return BundleSection([](const FoliationVector&) { return FockVector::vacuum(); });
}

BundleSection BundleSection::product(std::function<Complex(const FoliationVector&)> amplitude, FockVector fiber) {
  return BundleSection([amplitude = std::move(amplitude), fiber = std::move(fiber)](const FoliationVector& n) {
    return fiber * amplitude(n);
  });
}

BundleSection PolySection::section() const {
  return BundleSection([amp = amplitude, fib = fiber](const FoliationVector& n) {
    return fib * amp.evaluate(n.vector());
  });
}

PolySection apply_p(int a, int b, const PolySection& psi) { return {apply_p(a, b, psi.amplitude), psi.fiber}; }

PolySection apply_n(int mu, const PolySection& psi, int d_max) {
  return {apply_n(mu, psi.amplitude, d_max), psi.fiber};
}

InternalTimeProfile InternalTimeProfile::constant(double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("InternalTimeProfile: s must be non-negative");
  return InternalTimeProfile([s](const FoliationVector&) { return s; });
}

InternalTimeProfile InternalTimeProfile::polynomial(const PolyFunction& p) {
  return InternalTimeProfile([p](const FoliationVector& n) { return p.evaluate(n.vector()).real(); });
}

InternalTimeProfile InternalTimeProfile::tabulated(const FoliationSample& sample, std::vector<double> values) {
  if (values.size() != sample.nodes.size())
    throw std::invalid_argument("InternalTimeProfile: table size does not match the sample");
  std::map<std::array<double, 4>, double> table;
  for (size_t j = 0; j < values.size(); ++j) {
    const auto& v = sample.nodes[j].vector();
    table[{v[0], v[1], v[2], v[3]}] = values[j];
  }
  return InternalTimeProfile([table](const FoliationVector& n) {
    const auto& v = n.vector();
    auto it = table.find({v[0], v[1], v[2], v[3]});
    if (it == table.end()) throw std::out_of_range("InternalTimeProfile: n is not a tabulated node");
    return it->second;
  });
}

void InternalTimeProfile::validate(const FoliationSample& sample) const {
  for (const auto& n : sample.nodes) {
    const double s = rule_(n);
    if (!std::isfinite(s) || s < 0.0)
      throw std::invalid_argument("InternalTimeProfile: s(n) < 0 at n = " + describe(n.vector()));
  }
}

Complex fiber_inner(BundleContext& ctx, const FockVector& a, const FockVector& b) {
  return fock_inner(a, b, *ctx.cache);
}

// Nodes are split across threads; each writes its own slot and the slots are
// summed in node order, so the result does not depend on scheduling.
Complex section_inner(BundleContext& ctx, const BundleSection& a, const BundleSection& b) {
  const size_t count = ctx.sample.nodes.size();
  std::vector<Complex> parts(count);
  const size_t workers = std::max<size_t>(1, std::min<size_t>(std::thread::hardware_concurrency(), count));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (size_t j = w; j < count; j += workers) {
          const auto& n = ctx.sample.nodes[j];
          parts[j] = ctx.sample.weights[j] * fock_inner(a(n), b(n), *ctx.cache);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return pairwise_sum(parts);
}

namespace {

BundleSection fiberwise(const BundleContext& ctx, const BundleSection& psi,
                        std::function<SmearedFieldOp(const FoliationVector&)> op) {
  auto cache = ctx.cache;
  return BundleSection([=](const FoliationVector& n) { return psi(n).apply(op(n), *cache); });
}

}  // namespace

BundleSection apply_field(const BundleContext& ctx, const TestFunction& f, const BundleSection& psi) {
  const double m = ctx.mass;
  return fiberwise(ctx, psi, [=](const FoliationVector& n) { return make_field(FieldKind::phi, n, f, m); });
}

BundleSection apply_varpi(const BundleContext& ctx, const TestFunction& g, const BundleSection& psi) {
  const double m = ctx.mass;
  return fiberwise(ctx, psi, [=](const FoliationVector& n) { return make_field(FieldKind::pi, n, g, m); });
}

BundleSection apply_n(int mu, const BundleSection& psi) {
  if (mu < 0 || mu > 3) throw std::out_of_range("apply_n: index");
  return BundleSection([=](const FoliationVector& n) { return psi(n) * n.lowered()[mu]; });
}

BundleSection apply_pi(const BundleContext& ctx, int mu, const TestFunction& g, const BundleSection& psi) {
  return apply_n(mu, apply_varpi(ctx, g, psi));
}

SmearedFieldOp pi_variant_fiber_op(int mu, const FoliationVector& n, const Coefficient& g, double b, double mass) {
  const Covector nl = n.lowered();
  SmearedFieldOp op = make_field(FieldKind::pi, n, g, mass) * nl[mu];
  if (b != 0.0) {
    // int g (d_mu phi - n_mu n^nu d_nu phi) = phi(-d_mu g + n_mu n^nu d_nu g)
    op = op + make_field(FieldKind::phi, n, g.derivative(mu), mass) * (-b);
    for (int nu = 0; nu < 4; ++nu)
      if (n[nu] != 0.0) op = op + make_field(FieldKind::phi, n, g.derivative(nu), mass) * (b * nl[mu] * n[nu]);
  }
  op.kind = FieldKind::composite;
  op.foliation = n;
  return op;
}

BundleSection apply_pi_variant(const BundleContext& ctx, int mu, const TestFunction& g, double b,
                               const BundleSection& psi) {
  const double m = ctx.mass;
  const Coefficient gc = Coefficient::of(g);
  return fiberwise(ctx, psi, [=](const FoliationVector& n) { return pi_variant_fiber_op(mu, n, gc, b, m); });
}

BundleSection apply_H(const BundleContext& ctx, const BundleSection& psi) {
  const double m = ctx.mass;
  return BundleSection(
      [=](const FoliationVector& n) { return psi(n).apply_one_body(SymbolFunction::gamma_power(n, m, 0.5)); });
}

BundleSection apply_H_s(const BundleContext& ctx, const InternalTimeProfile& s, const BundleSection& psi) {
  const BundleSection h = apply_H(ctx, psi);
  return BundleSection([=](const FoliationVector& n) { return h(n) * s(n); });
}

SmearedFieldOp evolved_field_fiber_op(const FoliationVector& n, const InternalTimeProfile& s, const TestFunction& f,
                                      double mass) {
  return heisenberg_evolve(n, s(n), make_field(FieldKind::phi, n, f, mass), mass);
}

BundleSection apply_evolved_field(const BundleContext& ctx, const InternalTimeProfile& s, const TestFunction& f,
                                  const BundleSection& psi) {
  const double m = ctx.mass;
  return fiberwise(ctx, psi, [=](const FoliationVector& n) { return evolved_field_fiber_op(n, s, f, m); });
}

BundleSection apply_evolved_field(const BundleContext& ctx, double s, const TestFunction& f,
                                  const BundleSection& psi) {
  return apply_evolved_field(ctx, InternalTimeProfile::constant(s), f, psi);
}

FockVector apply_intertwiner(const FoliationVector&, const LorentzTransform& lambda, const FockVector& v) {
  return v.transformed(lambda);
}

BundleSection apply_W(const LorentzTransform& lambda, const BundleSection& psi) {
  const LorentzTransform inv = lambda.inverse();
  return BundleSection([=](const FoliationVector& n) {
    const FoliationVector m = n.transformed(inv);
    return apply_intertwiner(m, lambda, psi(m));
  });
}

BundleSection apply_W_translation(const FourVector& a, const BundleSection& psi) {
  return BundleSection(
      [=](const FoliationVector& n) { return psi(n).transformed(LorentzTransform::identity(), a); });
}

std::function<Complex(const FoliationVector&)> cap_amplitude(const FoliationVector& center, double alpha) {
  return [=](const FoliationVector& n) {
    return Complex(std::exp(-alpha * (minkowski_dot(n.vector(), center.vector()) - 1.0)));
  };
}

}  // namespace hqft
