#include "hqft/suites.hpp"

#include "hqft/bundle.hpp"
#include "hqft/classical.hpp"
#include "hqft/extended_algebra.hpp"
#include "hqft/fock.hpp"
#include "hqft/foliation.hpp"
#include "hqft/history_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace hqft {

namespace {

const Complex kI(0.0, 1.0);

std::mt19937_64 stream(const RunConfig& c, unsigned salt) {
  std::seed_seq seq{static_cast<unsigned>(c.seed & 0xffffffffu), static_cast<unsigned>(c.seed >> 32), salt};
  return std::mt19937_64(seq);
}

std::string fmt(const std::string& what, long long a, long long b = -1) {
  return what + "#" + std::to_string(a) + (b >= 0 ? "/" + std::to_string(b) : "");
}


// Single packet with unit L2 norm: int |a|^2 exp(-u^T S^{-1} u) d^4u = |a|^2 pi^2 sqrt(det S).
GaussianPacket unit_packet(GaussianPacket p) {
  p.amplitude = 1.0 / (std::numbers::pi * std::sqrt(std::sqrt(p.width.determinant())));
  return p;
}

Covector random_covector(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Covector(u(rng), u(rng), u(rng), u(rng));
}

std::vector<TestFunction> dictionary_functions(const RunConfig& c) {
  std::vector<TestFunction> d;
  for (const auto& [name, p] : c.dictionary) d.push_back(TestFunction::real_part_of(p));
  if (d.empty()) {
    auto rng = stream(c, 101);
    RandomPacketSpec spec = c.random_packets;
    spec.center_spread = std::max(spec.center_spread, 1.5);
    for (int i = 0; i < c.fock_modes; ++i) d.push_back(random_real_test_function(rng, spec));
  }
  return d;
}

double fock_norm(const FockVector& v, OneParticleCache& cache) {
  return std::sqrt(std::max(0.0, fock_inner(v, v, cache).real()));
}

// Largest difference between matching packet records of two Fock vectors whose
// terms agree up to rounding.
double record_distance(const FockVector& a, const FockVector& b) {
  if (a.terms().size() != b.terms().size()) return std::numeric_limits<double>::infinity();
  auto packet_gap = [](const GaussianPacket& p, const GaussianPacket& q) {
    double d = std::abs(p.amplitude - q.amplitude);
    d = std::max(d, (p.center.components() - q.center.components()).cwiseAbs().maxCoeff());
    d = std::max(d, (p.carrier.components() - q.carrier.components()).cwiseAbs().maxCoeff());
    return std::max(d, (p.width - q.width).cwiseAbs().maxCoeff());
  };
  auto term_gap = [&](const FockVector::Term& s, const FockVector::Term& t) {
    if (s.particles.size() != t.particles.size()) return std::numeric_limits<double>::infinity();
    double d = std::abs(s.amplitude - t.amplitude);
    for (size_t i = 0; i < s.particles.size(); ++i) {
      const auto& ps = s.particles[i].base.packets();
      const auto& pt = t.particles[i].base.packets();
      if (ps.size() != pt.size()) return std::numeric_limits<double>::infinity();
      for (size_t k = 0; k < ps.size(); ++k) d = std::max(d, packet_gap(ps[k], pt[k]));
    }
    return d;
  };
  double worst = 0.0;
  for (const auto& s : a.terms()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : b.terms()) best = std::min(best, term_gap(s, t));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("log_log_slope: need matching sizes >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------- geometry

std::vector<TestRecord> geometry_checks(const RunConfig& c) {
  auto rng = stream(c, 1);
  const double tol = c.tolerance("geometry");
  const int samples = c.property_samples;
  std::vector<TestRecord> out;

  double defect = 0.0, proper = 0.0, dot = 0.0, closure = 0.0;
  std::normal_distribution<double> g;
  for (int i = 0; i < samples; ++i) {
    const LorentzTransform l1 = random_lorentz(rng, 3.0), l2 = random_lorentz(rng, 3.0);
    defect = std::max(defect, l1.defect());
    const Mat4& m = l1.matrix();
    proper = std::max({proper, std::abs(m.determinant() - 1.0), std::max(0.0, 1.0 - m(0, 0))});
    const FourVector a(g(rng), g(rng), g(rng), g(rng)), b(g(rng), g(rng), g(rng), g(rng));
    const double scale = std::max(1.0, a.components().norm() * b.components().norm());
    dot = std::max(dot, std::abs(minkowski_dot(l1.apply(a), l1.apply(b)) - minkowski_dot(a, b)) / scale);
    const LorentzTransform l12 = l1 * l2;
    // Rounding in both quantities grows like the condition number, about entry^2.
    const double entry = std::max(1.0, l12.matrix().cwiseAbs().maxCoeff());
    closure = std::max({closure, l12.defect() / (entry * entry),
                        std::abs(l12.matrix().determinant() - 1.0) / (entry * entry)});
  }
  const std::string in = "random Lorentz, rapidity<=3, n=" + std::to_string(samples);
  out.push_back(make_record("geometry.metric_preservation", "Lambda^T eta Lambda = eta", in, defect, tol));
  out.push_back(make_record("geometry.proper_orthochronous", "det Lambda = 1, Lambda^0_0 >= 1", in, proper, tol));
  out.push_back(make_record("geometry.dot_isometry", "(Lambda a).(Lambda b) = a.b", in, dot, tol));
  out.push_back(make_record("geometry.composition_closure", "Lambda1 Lambda2 proper orthochronous", in, closure, tol));

  const LorentzTransform half = LorentzTransform::boost(std::log(2.0), Eigen::Vector3d::UnitZ());
  const Vec4 e = half.apply(FourVector(1, 0, 0, 0)).components() - Vec4(1.25, 0, 0, 0.75);
  out.push_back(make_record("geometry.boost_ln2", "boost(ln 2, z)(1,0,0,0) = (1.25,0,0,0.75)", "exact",
                            e.cwiseAbs().maxCoeff(), tol));

  const FoliationSample s = sample_hyperboloid(c.sample_rapidity_max, c.sample_radial, c.sample_angular);
  double on_shell = 0.0, min_w = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < s.nodes.size(); ++j) {
    on_shell = std::max(on_shell, std::abs(minkowski_dot(s.nodes[j].vector(), s.nodes[j].vector()) - 1.0));
    min_w = std::min(min_w, s.weights[j]);
  }
  const std::string sin = "sample chi<=" + std::to_string(c.sample_rapidity_max);
  out.push_back(make_record("geometry.sample_on_shell", "n.n = 1 at every node", sin, on_shell, tol));
  out.push_back(make_record("geometry.sample_weights", "weights > 0", sin, min_w > 0.0 ? 0.0 : 1.0, 0.0));

  // 4 pi int_0^1 sinh^2 = pi (sinh 2 - 2)
  const FoliationSample unit = sample_hyperboloid(1.0, c.sample_radial, c.sample_angular);
  double vol = 0.0;
  for (double w : unit.weights) vol += w;
  const double exact = std::numbers::pi * (std::sinh(2.0) - 2.0);
  out.push_back(make_record("geometry.cap_volume", "sum of weights = pi (sinh 2 - 2) for chi <= 1", "chi<=1",
                            std::abs(vol - exact) / exact, c.tolerance("quadrature")));

  // Rotations about z fix the pole.
  double pole = 0.0;
  for (int i = 0; i < 16; ++i) {
    const auto r = LorentzTransform::rotation(Eigen::Vector3d::UnitZ(), 0.4 * i);
    pole = std::max(pole, (FoliationVector::rest().transformed(r).vector().components() - Vec4(1, 0, 0, 0))
                              .cwiseAbs()
                              .maxCoeff());
  }
  out.push_back(make_record("geometry.pole_stabilizer", "R_z n_rest = n_rest", "16 angles", pole, tol));
  return out;
}

// ---------------------------------------------------------------- packets

std::vector<TestRecord> packet_checks(const RunConfig& c) {
  auto rng = stream(c, 2);
  const QuadratureGrid grid = c.grid();
  const double m = c.mass;
  std::vector<TestRecord> out;
  const int pairs = std::max(1, c.property_samples / 4);

  double norm_err = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const TestFunction f({unit_packet(random_packet(rng, c.random_packets))});
    norm_err = std::max(norm_err, std::abs(weighted_inner(f, SymbolFunction::constant(1.0), f, grid) - 1.0));
  }
  out.push_back(make_record("packets.normalization", "<f,f> = 1 for closed-form normalised packets",
                            fmt("packets", pairs), norm_err, c.tolerance("quadrature")));

  double far = 0.0;
  for (int i = 0; i < pairs; ++i) {
    GaussianPacket p = unit_packet(random_packet(rng, c.random_packets));
    GaussianPacket q = unit_packet(random_packet(rng, c.random_packets));
    const double width = std::sqrt(p.width.eigenvalues().real().maxCoeff()) +
                         std::sqrt(q.width.eigenvalues().real().maxCoeff());
    q.center = p.center + FourVector(0.0, 10.0 * width, 0.0, 0.0);
    far = std::max(far, std::abs(weighted_inner(TestFunction({p}), SymbolFunction::constant(1.0), TestFunction({q}), grid)));
  }
  out.push_back(make_record("packets.far_separated", "|<f,g>| small for centres 10 widths apart", fmt("pairs", pairs),
                            far, c.tolerance("separation")));

  double l2_cov = 0.0, gamma_cov = 0.0, conj_sym = 0.0, trans = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const TestFunction f = random_real_test_function(rng, c.random_packets);
    const TestFunction g = random_real_test_function(rng, c.random_packets);
    const FoliationVector n = random_foliation(rng, 2.0);
    const LorentzTransform l = random_lorentz(rng, 2.0);
    const FourVector zero;
    const TestFunction lf = poincare_act(l, zero, f), lg = poincare_act(l, zero, g);
    const double scale = l2_norm(f, grid) * l2_norm(g, grid);
    const SymbolFunction one = SymbolFunction::constant(1.0);
    l2_cov = std::max(l2_cov, std::abs(weighted_inner(lf, one, lg, grid) - weighted_inner(f, one, g, grid)) / scale);
    for (double p : {-0.5, -0.25, 0.25, 0.5}) {
      const Complex a = weighted_inner(f, SymbolFunction::gamma_power(n, m, p), g, grid);
      const Complex b = weighted_inner(lf, SymbolFunction::gamma_power(n.transformed(l), m, p), lg, grid);
      gamma_cov = std::max(gamma_cov, std::abs(a - b) / std::max(std::abs(a), scale));
    }
    const SymbolFunction sym = SymbolFunction::gamma_power(n, m, 0.5) * SymbolFunction::momentum(1) * Complex(0.3, 0.7);
    const Complex lhs = weighted_inner(f, sym, g, grid);
    const Complex rhs = std::conj(weighted_inner(g, sym.conjugated(), f, grid));
    conj_sym = std::max(conj_sym, std::abs(lhs - rhs) / std::max(std::abs(lhs), scale));
    const FourVector a(0.7, -1.1, 0.4, 2.0);
    trans = std::max(trans, std::abs(l2_norm(poincare_act(LorentzTransform::identity(), a, f), grid) -
                                     l2_norm(f, grid)) / l2_norm(f, grid));
  }
  const std::string in = fmt("real pairs", pairs) + ", rapidity<=2";
  out.push_back(make_record("packets.lorentz_l2", "<Lambda f, Lambda g> = <f, g>", in, l2_cov, c.tolerance("covariance")));
  out.push_back(make_record("packets.lorentz_gamma", "<Lambda f, gamma_{Lambda n}^p Lambda g> = <f, gamma_n^p g>", in,
                            gamma_cov, c.tolerance("covariance")));
  out.push_back(make_record("packets.conjugate_symmetry", "<f, A g> = conj <g, conj(A) f>", in, conj_sym,
                            c.tolerance("rounding")));
  out.push_back(make_record("packets.translation_norm", "||U(a) f|| = ||f||", in, trans, c.tolerance("rounding")));

  double bound = 0.0, compose = 0.0;
  const int fuzz = 100000;
  for (int i = 0; i < fuzz; ++i) {
    const FoliationVector n = random_foliation(rng, 3.0);
    const Covector k = random_covector(rng, 10.0);
    const double gv = gamma_value(n, m, k);
    bound = std::max(bound, (m * m - gv) / (m * m));
    if (i % 10 == 0) {
      const CVec4 kc = k.components().cast<Complex>();
      const Complex q = SymbolFunction::gamma_power(n, m, 0.25).evaluate(kc);
      const Complex h = SymbolFunction::gamma_power(n, m, 0.5).evaluate(kc);
      compose = std::max(compose, std::abs(q * q - h) / std::abs(h));
    }
  }
  out.push_back(make_record("packets.gamma_lower_bound", "gamma_n(k) >= m^2", fmt("samples", fuzz),
                            std::max(0.0, bound), c.tolerance("rounding")));
  out.push_back(make_record("packets.power_compose", "(gamma^{1/4})^2 = gamma^{1/2} pointwise", fmt("samples", fuzz / 10),
                            compose, c.tolerance("power_compose")));

  double min_w = std::numeric_limits<double>::infinity();
  for (double w : grid.weights) min_w = std::min(min_w, w);
  out.push_back(make_record("packets.grid_weights", "quadrature weights > 0", fmt("points", c.quadrature_points),
                            min_w > 0.0 ? 0.0 : 1.0, 0.0));
  return out;
}

// ---------------------------------------------------------------- field algebra

std::vector<TestRecord> ccr_checks(const RunConfig& c) {
  auto rng = stream(c, 3);
  const QuadratureGrid grid = c.grid();
  const double m = c.mass;
  std::vector<FoliationVector> ns;
  for (int j = 0; j < c.ccr_foliations; ++j) ns.push_back(random_foliation(rng, 2.0));
  double pp = 0.0, qq = 0.0, pq = 0.0;
  for (int i = 0; i < c.ccr_pairs; ++i) {
    const TestFunction f = random_real_test_function(rng, c.random_packets);
    const TestFunction g = random_real_test_function(rng, c.random_packets);
    const double scale = l2_norm(f, grid) * l2_norm(g, grid);
    const Complex expected = kI * weighted_inner(f, SymbolFunction::constant(1.0), g, grid);
    for (const auto& n : ns) {
      const auto phf = make_field(FieldKind::phi, n, f, m), phg = make_field(FieldKind::phi, n, g, m);
      const auto pif = make_field(FieldKind::pi, n, f, m), pig = make_field(FieldKind::pi, n, g, m);
      pp = std::max(pp, std::abs(commutator_value(phf, phg, grid)) / scale);
      qq = std::max(qq, std::abs(commutator_value(pif, pig, grid)) / scale);
      pq = std::max(pq, std::abs(commutator_value(phf, pig, grid) - expected) / scale);
    }
  }
  const std::string in = fmt("pairs x foliations", c.ccr_pairs, c.ccr_foliations) + ", rapidity<=2";
  return {make_record("ccr.phi_pi", "[phi_n(f), pi_n(g)] = i <f, g>", in, pq, c.tolerance("ccr")),
          make_record("ccr.phi_phi", "[phi_n(f), phi_n(g)] = 0", in, pp, c.tolerance("ccr_zero")),
          make_record("ccr.pi_pi", "[pi_n(f), pi_n(g)] = 0", in, qq, c.tolerance("ccr_zero"))};
}

std::vector<TestRecord> covariance_checks(const RunConfig& c) {
  auto rng = stream(c, 4);
  const QuadratureGrid grid = c.grid();
  const double m = c.mass;
  const int pairs = std::max(1, c.ccr_pairs / 2);
  double lorentz = 0.0, translation = 0.0;
  const FourVector zero;
  for (int i = 0; i < pairs; ++i) {
    const TestFunction f = random_real_test_function(rng, c.random_packets);
    const TestFunction g = random_real_test_function(rng, c.random_packets);
    const FoliationVector n = random_foliation(rng, 2.0);
    const LorentzTransform l = random_lorentz(rng, 2.0);
    const FourVector a(random_covector(rng, 2.0).components());
    const double scale = l2_norm(f, grid) * l2_norm(g, grid);
    auto values = [&](const FoliationVector& nn, const TestFunction& ff, const TestFunction& gg) {
      std::vector<Complex> v;
      for (auto [ka, kb] : {std::pair{FieldKind::phi, FieldKind::pi}, {FieldKind::phi, FieldKind::phi},
                            {FieldKind::pi, FieldKind::pi}, {FieldKind::covariant_phi, FieldKind::covariant_pi}})
        v.push_back(commutator_value(make_field(ka, nn, ff, m), make_field(kb, nn, gg, m), grid));
      return v;
    };
    const auto base = values(n, f, g);
    const auto boosted = values(n.transformed(l), poincare_act(l, zero, f), poincare_act(l, zero, g));
    const auto shifted = values(n, poincare_act(LorentzTransform::identity(), a, f),
                                poincare_act(LorentzTransform::identity(), a, g));
    for (size_t k = 0; k < base.size(); ++k) {
      lorentz = std::max(lorentz, std::abs(boosted[k] - base[k]) / scale);
      translation = std::max(translation, std::abs(shifted[k] - base[k]) / scale);
    }
  }
  const int samples = 10000;
  double symbol = 0.0;
  for (int i = 0; i < samples; ++i) {
    const FoliationVector n = random_foliation(rng, 2.0);
    const LorentzTransform l = random_lorentz(rng, 2.0);
    const Covector k = random_covector(rng, 5.0);
    const double g0 = gamma_value(n, m, k);
    symbol = std::max(symbol, std::abs(gamma_value(n.transformed(l), m, l.apply(k)) - g0) / g0);
  }
  const std::string in = fmt("pairs", pairs) + ", rapidity<=2";
  return {make_record("covariance.lorentz", "[A(Lambda n, Lambda f), B(Lambda n, Lambda g)] = [A(n,f), B(n,g)]", in,
                      lorentz, c.tolerance("covariance")),
          make_record("covariance.translation", "[A(n, f_a), B(n, g_a)] = [A(n,f), B(n,g)]", in, translation,
                      c.tolerance("covariance")),
          make_record("covariance.symbol_identity", "gamma_{Lambda n}(k Lambda^{-1}) = gamma_n(k)",
                      fmt("samples", samples), symbol, c.tolerance("symbol_identity"))};
}

std::vector<TestRecord> evolution_checks(const RunConfig& c) {
  auto rng = stream(c, 5);
  const QuadratureGrid grid = c.grid();
  const double m = c.mass;
  double identity = 0.0, group = 0.0, preserved = 0.0;
  const int pairs = std::max(1, c.ccr_pairs / 4);
  for (int i = 0; i < pairs; ++i) {
    const TestFunction f = random_real_test_function(rng, c.random_packets);
    const TestFunction g = random_real_test_function(rng, c.random_packets);
    const FoliationVector n = random_foliation(rng, 2.0);
    std::uniform_real_distribution<double> us(-3.0, 3.0);
    const double s1 = us(rng), s2 = us(rng);
    const auto phi = make_field(FieldKind::phi, n, f, m);
    const auto pi = make_field(FieldKind::pi, n, g, m);
    const auto zero = heisenberg_evolve(n, 0.0, phi, m);
    identity = std::max(identity, zero.annihilation[0].symbol.key() == phi.annihilation[0].symbol.key() ? 0.0 : 1.0);
    const auto twice = heisenberg_evolve(n, s2, heisenberg_evolve(n, s1, phi, m), m);
    const auto once = heisenberg_evolve(n, s1 + s2, phi, m);
    for (int t = 0; t < 20; ++t) {
      const CVec4 k = random_covector(rng, 4.0).components().cast<Complex>();
      for (size_t j = 0; j < once.annihilation.size(); ++j) {
        group = std::max(group, std::abs(twice.annihilation[j].symbol.evaluate(k) - once.annihilation[j].symbol.evaluate(k)));
        group = std::max(group, std::abs(twice.creation[j].symbol.evaluate(k) - once.creation[j].symbol.evaluate(k)));
      }
    }
    const double scale = l2_norm(f, grid) * l2_norm(g, grid);
    const Complex before = commutator_value(phi, pi, grid);
    const Complex after = commutator_value(heisenberg_evolve(n, s1, phi, m), heisenberg_evolve(n, s1, pi, m), grid);
    preserved = std::max(preserved, std::abs(after - before) / scale);
  }
  const std::string in = fmt("pairs", pairs);
  return {make_record("evolution.identity", "evolve(0) = identity", in, identity, 0.0),
          make_record("evolution.group", "evolve(s2) evolve(s1) = evolve(s1 + s2)", in, group, 1e-10),
          make_record("evolution.commutator", "[phi_n(f;s), pi_n(g;s)] = [phi_n(f), pi_n(g)]", in, preserved,
                      c.tolerance("ccr"))};
}

std::vector<TestRecord> fock_checks(const RunConfig& c) {
  const QuadratureGrid grid = c.grid();
  auto rng = stream(c, 6);
  const auto dict = dictionary_functions(c);
  const TruncatedFock fock = TruncatedFock::build(dict, c.fock_n_max, grid);
  std::vector<std::pair<TestFunction, TestFunction>> pairs;
  for (size_t i = 0; i < dict.size(); ++i)
    for (size_t j = i; j < dict.size(); ++j) pairs.emplace_back(dict[i], dict[j]);
  const FoliationVector n = random_foliation(rng, 2.0);
  const FieldAlgebraReport rep = verify_field_algebra(n, fock, pairs, c.mass, grid);
  std::map<std::string, double> worst;
  for (const auto& e : rep.entries) {
    const std::string family = e.name.substr(0, e.name.rfind('['));  // drop the pair tag
    worst[family] = std::max(worst[family], e.residual);
  }
  std::vector<TestRecord> out;
  const std::string in = fmt("modes x n_max", fock.modes(), fock.n_max());
  for (const auto& [family, r] : worst) {
    const bool vac = family == "vacuum_sector";
    out.push_back(make_record("fock." + family,
                              vac ? "fields map |0> into the one-particle sector" : family + " on the protected subspace",
                              in, r, c.tolerance("ccr_zero")));
  }
  double gram = (fock.mode_gram(grid) - Eigen::MatrixXcd::Identity(fock.modes(), fock.modes())).cwiseAbs().maxCoeff();
  out.push_back(make_record("fock.mode_gram", "<e_a, e_b> = delta_ab", in, gram, c.tolerance("ccr_zero")));
  double ladder = 0.0;
  for (int a = 0; a < fock.modes(); ++a)
    for (int b = 0; b < fock.modes(); ++b) {
      const Eigen::MatrixXcd ba = fock.annihilator(a).cast<Complex>(), bb = fock.creator(b).cast<Complex>();
      ladder = std::max(ladder, protected_commutator_residual(fock, ba, bb, a == b ? 1.0 : 0.0));
    }
  out.push_back(make_record("fock.ladder", "[b_a, b_b^dagger] = delta_ab", in, ladder, c.tolerance("rounding")));
  return out;
}

std::vector<TestRecord> energy_checks(const RunConfig& c) {
  const QuadratureGrid grid = c.grid();
  auto rng = stream(c, 7);
  const double m = c.mass;
  const auto dict = dictionary_functions(c);
  const TruncatedFock fock = TruncatedFock::build(dict, c.fock_n_max, grid);
  double herm = 0.0, psd = 0.0, vac = 0.0, one = 0.0, bound = 0.0;
  for (const FoliationVector& n : {FoliationVector::rest(), random_foliation(rng, 2.0)}) {
    const SymbolFunction root = SymbolFunction::gamma_power(n, m, 0.5);
    const Eigen::MatrixXcd h = fock.quadratic_matrix(root, grid);
    herm = std::max(herm, (h - h.adjoint()).cwiseAbs().maxCoeff());
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(0.5 * (h + h.adjoint())).eigenvalues();
    psd = std::max(psd, std::max(0.0, -ev.minCoeff()));
    vac = std::max({vac, h.col(0).cwiseAbs().maxCoeff(), h.row(0).cwiseAbs().maxCoeff()});
    for (Eigen::Index s = 0; s < fock.dimension(); ++s) {
      if (fock.total_occupation(s) != 1) continue;
      for (Eigen::Index t = 0; t < fock.dimension(); ++t) {
        if (fock.total_occupation(t) != 1) continue;
        const auto& os = fock.occupation(s);
        const auto& ot = fock.occupation(t);
        const int a = static_cast<int>(std::find(os.begin(), os.end(), 1) - os.begin());
        const int b = static_cast<int>(std::find(ot.begin(), ot.end(), 1) - ot.begin());
        const Complex direct = weighted_inner(fock.mode_functions()[a], root, fock.mode_functions()[b], grid);
        one = std::max(one, std::abs(h(s, t) - direct));
      }
    }
    for (const auto& f : dict) {
      const double nf = weighted_inner(f, SymbolFunction::constant(1.0), f, grid).real();
      const double e = energy_matrix_element(n, f, f, m, grid).real();
      bound = std::max(bound, (m * nf - e) / nf);
    }
  }
  const std::string in = fmt("modes x n_max", fock.modes(), fock.n_max()) + ", n in {rest, random}";
  std::vector<TestRecord> out{
      make_record("energy.hermitian", "H = H^dagger", in, herm, c.tolerance("hermitian")),
      make_record("energy.positive", "spectrum of H >= 0", in, psd, c.tolerance("hermitian")),
      make_record("energy.vacuum", "H |0> = 0 exactly", in, vac, 0.0),
      make_record("energy.one_particle", "<1_a|H|1_b> = <e_a, sqrt(gamma_n) e_b>", in, one, c.tolerance("one_particle")),
      make_record("energy.lower_bound", "<f, sqrt(gamma_n) f> >= m ||f||^2", in, std::max(0.0, bound),
                  c.tolerance("one_particle"))};

  // Momentum-space width 0.1: x-space covariance 100 I.
  const Covector k0(0.0, 0.6, -0.4, 0.3);
  GaussianPacket peak;
  peak.carrier = k0;
  peak.width = 100.0 * Mat4::Identity();
  peak = unit_packet(peak);
  const TruncatedFock single = TruncatedFock::build({TestFunction({peak})}, 1, grid);
  const Eigen::MatrixXcd h1 = single.quadratic_matrix(SymbolFunction::gamma_power(FoliationVector::rest(), m, 0.5), grid);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h1).eigenvalues();
  const double expected = std::sqrt(k0.components().tail<3>().squaredNorm() + m * m);
  out.push_back(make_record("energy.peaked_packet", "one-particle eigenvalue = sqrt(|k0|^2 + m^2)",
                            "n rest, k-width 0.1, k0 = (0.6,-0.4,0.3)", std::abs(ev.maxCoeff() - expected) / expected,
                            c.tolerance("peaked_energy")));
  return out;
}

std::vector<TestRecord> momentum_checks(const RunConfig& c) {
  const QuadratureGrid grid = c.grid();
  auto rng = stream(c, 8);
  const double m = c.mass;
  double longitudinal = 0.0, transverse = 0.0, rest = 0.0;
  const int pairs = std::max(1, c.ccr_pairs / 2);
  for (int i = 0; i < pairs; ++i) {
    const TestFunction f = random_real_test_function(rng, c.random_packets);
    const TestFunction g = random_real_test_function(rng, c.random_packets);
    const FoliationVector n = random_foliation(rng, 2.0);
    const double scale = l2_norm(f, grid) * l2_norm(g, grid);
    const Complex energy = energy_matrix_element(n, f, g, m, grid);
    Complex contracted = 0.0;
    SymbolFunction trans;
    for (int mu = 0; mu < 4; ++mu) {
      contracted += n[mu] * internal_momentum_element(n, mu, f, g, m, grid);
      trans = trans + internal_momentum_symbol(n, mu, m).transverse * n[mu];
    }
    longitudinal = std::max(longitudinal, std::abs(contracted - energy) / scale);
    transverse = std::max(transverse, std::abs(weighted_inner(f, trans, g, grid)) / scale);
    const FoliationVector r = FoliationVector::rest();
    rest = std::max(rest, std::abs(internal_momentum_element(r, 0, f, g, m, grid) - energy_matrix_element(r, f, g, m, grid)) /
                              scale);
  }
  const std::string in = fmt("pairs", pairs) + ", rapidity<=2";
  return {make_record("momentum.longitudinal", "n^mu <f, P_mu g> = <f, H g>", in, longitudinal, c.tolerance("momentum")),
          make_record("momentum.transverse", "n^mu (transverse part)_mu = 0", in, transverse, c.tolerance("transverse")),
          make_record("momentum.rest_frame", "P_0 = H at n = (1,0,0,0)", in, rest, c.tolerance("momentum"))};
}

// ---------------------------------------------------------------- bogoliubov

std::vector<TestRecord> bogoliubov_checks(const RunConfig& c) {
  auto rng = stream(c, 9);
  const double m = c.mass;
  const BallQuadrature rule{c.ball_radial, c.ball_polar, c.ball_azimuth};
  const FoliationVector n = FoliationVector::rest();
  const FoliationVector np =
      n.transformed(LorentzTransform::boost(c.bogoliubov_rapidity, Eigen::Vector3d(1.0, 0.5, -0.3)));
  std::vector<TestRecord> out;

  const BogoliubovPair same = bogoliubov(np, np, m);
  double same_norm = same.beta.is_zero() ? 0.0 : 1.0;
  for (double r : c.cutoffs) same_norm = std::max(same_norm, beta_hs_norm(same, r, rule));
  out.push_back(make_record("bogoliubov.identical", "beta = 0 and ||beta||_HS = 0 at every cutoff for n' = n",
                            "n' = n", same_norm, 0.0));

  const BogoliubovPair pair = bogoliubov(n, np, m);
  double identity = 0.0, largest = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const CVec4 k = random_covector(rng, 6.0).components().cast<Complex>();
    const Complex a = pair.alpha.evaluate(k), b = pair.beta.evaluate(k);
    identity = std::max(identity, std::abs(a * a - b * b - 1.0));
    largest = std::max(largest, std::abs(b));
  }
  const std::string in = "n rest, n' rapidity " + std::to_string(c.bogoliubov_rapidity);
  out.push_back(make_record("bogoliubov.hyperbolic", "alpha^2 - beta^2 = 1", in, identity, c.tolerance("symbol_identity")));
  out.push_back(make_record("bogoliubov.nonzero", "beta not identically zero for n' != n", in, largest > 0.0 ? 0.0 : 1.0,
                            0.0));

  // n' = boost(1, z) n, k = (0,0,0,1): gamma_n = 2, gamma_n' = sinh^2 1 + 2.
  {
    const FoliationVector n1 = n.transformed(LorentzTransform::boost(1.0, Eigen::Vector3d::UnitZ()));
    const double r = std::pow((std::sinh(1.0) * std::sinh(1.0) + 2.0) / 2.0, 0.25);
    const Complex b = bogoliubov(n, n1, 1.0).beta.evaluate(CVec4(0.0, 0.0, 0.0, 1.0));
    out.push_back(make_record("bogoliubov.worked_value", "beta = (r - 1/r)/2, r = (gamma_n'/gamma_n)^{1/4}",
                              "n' = boost(1,z) n, k = (0,0,0,1)", std::abs(b - 0.5 * (r - 1.0 / r)),
                              c.tolerance("symbol_identity")));
  }

  std::vector<double> values;
  for (double r : c.cutoffs) values.push_back(beta_hs_norm(pair, r, rule));
  int violations = 0;
  for (size_t i = 1; i < values.size(); ++i) violations += values[i] > values[i - 1] ? 0 : 1;
  out.push_back(make_record("bogoliubov.increasing", "||beta||_HS strictly increasing in the cutoff", in, violations, 0.0));
  if (values.size() >= 2) {
    const double slope = log_log_slope(c.cutoffs, values);
    out.push_back(make_record("bogoliubov.slope", "log-log slope of ||beta||_HS against R = 4", in, std::abs(slope - 4.0),
                              c.tolerance("slope")));
    const FoliationVector n1 = n.transformed(LorentzTransform::boost(1.0, Eigen::Vector3d(1.0, 0.5, -0.3)));
    const BogoliubovPair p1 = bogoliubov(n, n1, m);
    std::vector<double> v1;
    for (double r : c.cutoffs) v1.push_back(beta_hs_norm(p1, r, rule));
    out.push_back(make_record("bogoliubov.slope_rapidity1", "log-log slope at n' rapidity 1 (finite-R drift)",
                              "n' rapidity 1", std::abs(log_log_slope(c.cutoffs, v1) - 4.0), c.tolerance("slope"), true));
  }
  return out;
}

// ---------------------------------------------------------------- classical

namespace {

QuadraticFunctional random_quadratic(std::mt19937_64& rng, const LatticeSpec& lat, int entries) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> idx(0, lat.variable_count() - 1);
  QuadraticFunctional f(lat);
  f.constant = u(rng);
  for (int i = 0; i < entries; ++i) f.linear[idx(rng)] += u(rng);
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < entries; ++i) {
    const int a = idx(rng), b = idx(rng);
    const double v = u(rng);
    trip.emplace_back(a, b, v);
    if (a != b) trip.emplace_back(b, a, v);
  }
  f.quadratic.setFromTriplets(trip.begin(), trip.end());
  return f;
}

}  // namespace

std::vector<TestRecord> classical_checks(const RunConfig& c) {
  auto rng = stream(c, 10);
  std::vector<TestRecord> out;
  const FoliationVector n = random_foliation(rng, 2.0);
  const LatticeSpec lat{2, 0.7, FourVector()};
  const double d4 = lat.cell_volume();
  const int samples = std::max(10, c.property_samples / 4);
  std::uniform_int_distribution<int> site(0, lat.site_count() - 1);
  const std::string in = "L=2, spacing 0.7, random n, rapidity<=2";

  double coord = 0.0, zero = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int x = site(rng), y = i % 4 == 0 ? x : site(rng);
    for (int mu = 0; mu < 4; ++mu) {
      const double v = poisson_bracket(QuadraticFunctional::phi_at(lat, x), QuadraticFunctional::pi_at(lat, mu, y), n, lat)
                           .constant;
      coord = std::max(coord, std::abs(v - (x == y ? n.lowered()[mu] / d4 : 0.0)) * d4);
      for (int nu = 0; nu < 4; ++nu)
        zero = std::max(zero, poisson_bracket(QuadraticFunctional::pi_at(lat, mu, x),
                                              QuadraticFunctional::pi_at(lat, nu, y), n, lat).max_abs());
    }
    zero = std::max(zero, poisson_bracket(QuadraticFunctional::phi_at(lat, x), QuadraticFunctional::phi_at(lat, y), n, lat)
                              .max_abs());
  }
  out.push_back(make_record("classical.phi_pi", "{phi_x, pi_mu,y} = n_mu delta_xy / Delta^4", in, coord,
                            c.tolerance("classical")));
  out.push_back(make_record("classical.zero_brackets", "{phi, phi} = {pi, pi} = 0", in, zero, c.tolerance("classical")));

  double anti = 0.0, jac = 0.0, leibniz = 0.0;
  for (int i = 0; i < samples / 5 + 1; ++i) {
    const auto f = random_quadratic(rng, lat, 12), g = random_quadratic(rng, lat, 12), h = random_quadratic(rng, lat, 12);
    anti = std::max(anti, poisson_bracket(f, f, n, lat).max_abs());
    anti = std::max(anti, (poisson_bracket(f, g, n, lat) + poisson_bracket(g, f, n, lat)).max_abs());
    jac = std::max(jac, jacobi_residual(f, g, h, n, lat));
    auto affine = [&]() {
      QuadraticFunctional a = random_quadratic(rng, lat, 6);
      a.quadratic.setZero();
      return a;
    };
    const auto a = affine(), b = affine(), e = affine();
    const auto lhs = poisson_bracket(a, QuadraticFunctional::product(b, e), n, lat);
    const auto rhs = QuadraticFunctional::product(poisson_bracket(a, b, n, lat), e) +
                     QuadraticFunctional::product(b, poisson_bracket(a, e, n, lat));
    leibniz = std::max(leibniz, (lhs - rhs).max_abs() * d4);
  }
  out.push_back(make_record("classical.antisymmetry", "{F, G} = -{G, F}", in, anti, c.tolerance("classical")));
  out.push_back(make_record("classical.jacobi", "{F,{G,H}} + cyclic = 0", in, jac, c.tolerance("classical_jacobi")));
  out.push_back(make_record("classical.leibniz", "{F, G H} = {F, G} H + G {F, H}", in, leibniz, c.tolerance("classical")));

  double cov = 0.0, degenerate = 0.0;
  const LorentzTransform l = random_lorentz(rng, 2.0);
  const FoliationVector ln = n.transformed(l);
  for (int mu = 0; mu < 4; ++mu) {
    const double v = poisson_bracket(QuadraticFunctional::phi_at(lat, 3), QuadraticFunctional::pi_at(lat, mu, 3), ln, lat)
                         .constant;
    cov = std::max(cov, std::abs(v * d4 - ln.lowered()[mu]));
  }
  // pi_mu - n_mu n^nu pi_nu at one site
  for (int mu = 0; mu < 4; ++mu) {
    QuadraticFunctional t = QuadraticFunctional::pi_at(lat, mu, 5);
    for (int nu = 0; nu < 4; ++nu) t = t - QuadraticFunctional::pi_at(lat, nu, 5) * (n.lowered()[mu] * n[nu]);
    degenerate = std::max(degenerate, poisson_bracket(QuadraticFunctional::phi_at(lat, 5), t, n, lat).max_abs() * d4);
  }
  out.push_back(make_record("classical.covariant_n", "{phi_x, pi_mu,x}_{Lambda n} = (Lambda n)_mu / Delta^4", in, cov,
                            c.tolerance("classical")));
  out.push_back(make_record("classical.degenerate", "{phi, pi_mu - n_mu n.pi} = 0", in, degenerate,
                            c.tolerance("classical")));
  return out;
}

namespace {

struct CorrespondenceCase {
  TestFunction f, g;
  FoliationVector n;
  FourVector v;
  std::string label;
};

// Smooth single packets: width near 1, small carrier, so a lattice spanning +-4 widths
// resolves them. The rough case uses the general random dictionary.
TestFunction smooth_smearing(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.9, 1.1);
  GaussianPacket p;
  p.center = FourVector(0.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng));
  p.carrier = Covector(0.4 * u(rng), 0.4 * u(rng), 0.4 * u(rng), 0.4 * u(rng));
  const double s = w(rng);
  p.width = s * s * Mat4::Identity();
  return TestFunction::real_part_of(p);
}

std::vector<CorrespondenceCase> correspondence_cases(const RunConfig& c) {
  auto rng = stream(c, 11);
  std::vector<CorrespondenceCase> cases;
  cases.push_back({smooth_smearing(rng), smooth_smearing(rng), FoliationVector::rest(), FourVector(1, 0, 0, 0),
                   "n rest, g timelike"});
  const FoliationVector n = random_foliation(rng, 1.0);
  cases.push_back({smooth_smearing(rng), smooth_smearing(rng), n, n.vector(), "random n, g along n"});
  cases.push_back({random_real_test_function(rng, c.random_packets), random_real_test_function(rng, c.random_packets), n,
                   n.vector(), "rough random smearings"});
  return cases;
}

}  // namespace

std::vector<TestRecord> correspondence_checks(const RunConfig& c) {
  const QuadratureGrid grid = c.grid();
  std::vector<TestRecord> out;
  const auto cases = correspondence_cases(c);
  double finest = 0.0;
  int violations = 0;
  std::ostringstream trail;
  for (const auto& k : cases) {
    const bool rough = &k == &cases.back();
    double prev = std::numeric_limits<double>::infinity();
    for (int sites : c.lattice_sites) {
      const LatticeSpec lat = lattice_covering(k.f, k.g, sites, c.lattice_half_widths);
      const double dev = correspondence_check(k.f, k.g, k.v, k.n, lat, c.mass, grid).relative_deviation;
      out.push_back(make_record("correspondence.L" + std::to_string(sites) + " (" + k.label + ")",
                                "lattice {phi(f), pi(g)}_n against [phi_n(f), pi_n(g)]/i", k.label, dev,
                                c.tolerance("correspondence"), true));
      if (!rough) violations += dev < prev ? 0 : 1;
      prev = dev;
    }
    if (!rough) finest = std::max(finest, prev);
  }
  std::string sizes;
  for (int s : c.lattice_sites) sizes += (sizes.empty() ? "" : ",") + std::to_string(s);
  out.push_back(make_record("correspondence.finest", "relative deviation at the finest lattice", "L in {" + sizes + "}",
                            finest, c.tolerance("correspondence")));
  out.push_back(make_record("correspondence.monotone", "deviation decreases with L", "L in {" + sizes + "}", violations,
                            0.0));

  // Transverse polarisation gives zero on both sides; so do far-apart smearings.
  const auto& k = cases[1];
  FourVector t(0.0, 1.0, -0.5, 0.25);
  t = t - k.n.vector() * minkowski_dot(t, k.n.vector());
  const LatticeSpec lat = lattice_covering(k.f, k.g, c.lattice_sites.front(), c.lattice_half_widths);
  const auto tr = correspondence_check(k.f, k.g, t, k.n, lat, c.mass, grid);
  out.push_back(make_record("correspondence.transverse", "n.v = 0 gives 0 on both sides", k.label,
                            std::max(std::abs(tr.classical), std::abs(tr.quantum)), c.tolerance("rounding")));
  const TestFunction far = poincare_act(LorentzTransform::identity(), FourVector(0.0, 30.0, 0.0, 0.0), k.g);
  const auto fr = correspondence_check(k.f, far, k.n.vector(), k.n, lat, c.mass, grid);
  out.push_back(make_record("correspondence.disjoint", "far-apart smearings give 0 on both sides", "offset 30",
                            std::max(std::abs(fr.classical), std::abs(fr.quantum)), c.tolerance("separation")));
  return out;
}

// ---------------------------------------------------------------- foliation

std::vector<TestRecord> foliation_checks(const RunConfig& c) {
  std::vector<TestRecord> out;
  const std::vector<std::string> families{"nn", "pp", "np", "casimir", "tangency", "antisymmetry"};
  const std::map<std::string, std::string> anchor{
      {"nn", "[n_a, n_b] = 0"},
      {"pp", "[p^ab, p^cd] = i(eta^ac p^bd - eta^bc p^ad + eta^bd p^ac - eta^ad p^bc)"},
      {"np", "[n_a, p^bc] = i(delta_a^b n^c - delta_a^c n^b)"},
      {"casimir", "[n.n, X] = 0 for every generator X"},
      {"tangency", "p^ab (n.n - 1) = 0"},
      {"antisymmetry", "p^ab = -p^ba"}};
  for (auto placement : {IndexPlacement::Upper, IndexPlacement::Lower})
    for (auto sign : {StructureSign::Printed, StructureSign::Realized}) {
      const auto rep = verify_foliation_algebra(c.foliation_d_max, placement, sign);
      const std::string tag = std::string(placement == IndexPlacement::Upper ? "upper" : "lower") +
                              (sign == StructureSign::Printed ? "" : ", realized sign");
      const bool info = sign == StructureSign::Realized;
      for (const auto& fam : families) {
        if (info && fam != "pp") continue;
        const std::string in = "d_max " + std::to_string(c.foliation_d_max) + ", " + tag + ", " +
                               std::to_string(rep.count(fam)) + " pairs";
        out.push_back(make_record("foliation." + fam + " (" + tag + ")",
                                  anchor.at(fam) + (info ? " with -i" : ""), in, rep.failures(fam), 0.0, info));
      }
    }

  // exp(-i theta p^{12}) P (n) = P(R_z(-theta) n)
  double flow = 0.0;
  const NumericPoly x = to_numeric(PolyFunction::coordinate(1)), y = to_numeric(PolyFunction::coordinate(2));
  const NumericPoly poly = x * x * y + y * 0.5;
  for (double theta : {0.05, 0.1, 0.3}) {
    const NumericPoly moved = flow_p(1, 2, theta, poly);
    const auto rot = LorentzTransform::rotation(Eigen::Vector3d::UnitZ(), -theta);
    for (const FourVector& n : {FourVector(1.2, 0.3, -0.5, 0.4), FourVector(2.0, -1.0, 0.7, 0.2)})
      flow = std::max(flow, std::abs(moved.evaluate(n) - poly.evaluate(rot.apply(n))));
  }
  out.push_back(make_record("foliation.rotation_flow", "exp(-i theta p^12) acts as the rotation R_z(-theta)",
                            "theta in {0.05, 0.1, 0.3}", flow, c.tolerance("rounding")));
  return out;
}

std::vector<TestRecord> jacobi_checks(const RunConfig& c) {
  auto rng = stream(c, 12);
  const QuadratureGrid grid = c.grid();
  std::vector<Coefficient> fs, gs;
  for (int i = 0; i < 3; ++i) {
    fs.push_back(Coefficient::of(random_real_test_function(rng, c.random_packets)));
    gs.push_back(Coefficient::of(random_real_test_function(rng, c.random_packets)));
  }
  enum Cls { Phi, Pi, N, P };
  const std::vector<std::pair<int, int>> pidx{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  auto instances = [&](ExtendedAlgebra& alg, Cls cls, int slot, double b) {
    std::vector<ExtendedElement> v;
    switch (cls) {
      case Phi: v.push_back(alg.phi(fs[slot])); break;
      case Pi:
        for (int mu = 0; mu < 4; ++mu) v.push_back(alg.pi(mu, gs[slot], b));
        break;
      case N:
        for (int mu = 0; mu < 4; ++mu) v.push_back(alg.n(mu));
        break;
      case P:
        for (auto [a, bb] : pidx) v.push_back(alg.p(a, bb));
        break;
    }
    return v;
  };
  auto run = [&](StructureSign sign, double b, bool only_npp) {
    ExtendedAlgebra alg(grid, sign);
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int bc = a; bc < 4; ++bc)
        for (int cc = bc; cc < 4; ++cc) {
          if (only_npp && !(a == N && bc == P && cc == P)) continue;
          const auto xs = instances(alg, Cls(a), 0, b), ys = instances(alg, Cls(bc), 1, b),
                     zs = instances(alg, Cls(cc), 2, b);
          for (const auto& x : xs)
            for (const auto& y : ys)
              for (const auto& z : zs) worst = std::max(worst, alg.jacobi_residual(x, y, z));
        }
    return worst;
  };
  const std::string in = "class triples from {phi, pi_mu, n, p}, all index choices";
  std::vector<TestRecord> out{
      make_record("jacobi.b0", "Jacobi identity, pi_mu = n_mu varpi", in, run(StructureSign::Realized, 0.0, false),
                  c.tolerance("jacobi")),
      make_record("jacobi.b_variant", "Jacobi identity, pi_mu with transverse b term and modified [pi, pi]",
                  in + ", b = " + std::to_string(c.pi_variant_b), run(StructureSign::Realized, c.pi_variant_b, false),
                  c.tolerance("jacobi")),
      make_record("jacobi.printed_pp_sign", "Jacobi identity (n, p, p) with the +i [p, p] structure sign",
                  "n, p, p triples", run(StructureSign::Printed, 0.0, true), c.tolerance("jacobi"), true)};

  // [pi_mu(g), p^{ab}] = i(delta_mu^a pi^b - delta_mu^b pi^a), a consequence of [n, p].
  ExtendedAlgebra alg(grid);
  double implied = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (auto [a, b] : pidx) {
      ExtendedElement rhs;
      const double eta_b = metric()(b, b), eta_a = metric()(a, a);
      if (mu == a) rhs = rhs + alg.pi(b, gs[0]) * Complex(0.0, eta_b);
      if (mu == b) rhs = rhs - alg.pi(a, gs[0]) * Complex(0.0, eta_a);
      implied = std::max(implied, alg.norm(alg.bracket(alg.pi(mu, gs[0]), alg.p(a, b)) - rhs));
    }
  out.push_back(make_record("jacobi.pi_p_implied", "[pi_mu(g), p^ab] = i(delta_mu^a pi^b - delta_mu^b pi^a)",
                            "b = 0, all mu and (a,b)", implied, c.tolerance("jacobi")));
  return out;
}

// ---------------------------------------------------------------- bundle

namespace {

FockVector sample_fiber(std::mt19937_64& rng, const RunConfig& c) {
  const TestFunction h1 = random_real_test_function(rng, c.random_packets);
  const TestFunction h2 = random_real_test_function(rng, c.random_packets);
  const FockVector vac = FockVector::vacuum();
  return vac * 0.6 + vac.create(Coefficient::of(h1)) + vac.create(Coefficient::of(h1)).create(Coefficient::of(h2)) * 0.5;
}

std::vector<FoliationVector> probe_nodes(std::mt19937_64& rng, int count, double rapidity) {
  std::vector<FoliationVector> v{FoliationVector::rest()};
  while (static_cast<int>(v.size()) < count) v.push_back(random_foliation(rng, rapidity));
  return v;
}

}  // namespace

std::vector<TestRecord> bundle_checks(const RunConfig& c) {
  auto rng = stream(c, 13);
  const QuadratureGrid grid = c.grid();
  const double m = c.mass;
  BundleContext ctx(m, grid, sample_hyperboloid(1.5, 6, 4));
  auto& cache = *ctx.cache;
  std::vector<TestRecord> out;
  const std::string small = "sample chi<=1.5, 6 x 4";

  double volume = 0.0;
  for (double w : ctx.sample.weights) volume += w;
  const Complex omega = section_inner(ctx, BundleSection::ground(), BundleSection::ground());
  out.push_back(make_record("bundle.ground_norm", "<Omega, Omega> = sum of sample weights", small,
                            std::abs(omega - volume) / volume, c.tolerance("rounding")));

  const FockVector v = sample_fiber(rng, c);
  const BundleSection psi = BundleSection::product(cap_amplitude(FoliationVector::rest(), 2.0), v);
  double cs = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto a = BundleSection::product(cap_amplitude(random_foliation(rng, 0.8), 1.0 + i), sample_fiber(rng, c));
    const auto b = BundleSection::product(cap_amplitude(random_foliation(rng, 0.8), 2.0), sample_fiber(rng, c));
    const double ab = std::norm(section_inner(ctx, a, b));
    const double aa = section_inner(ctx, a, a).real(), bb = section_inner(ctx, b, b).real();
    cs = std::max(cs, (ab - aa * bb) / (aa * bb));
  }
  out.push_back(make_record("bundle.cauchy_schwarz", "|<a,b>|^2 <= <a,a><b,b>", small + ", 4 pairs", std::max(0.0, cs),
                            c.tolerance("rounding")));

  const TestFunction f = random_real_test_function(rng, c.random_packets);
  const TestFunction g = random_real_test_function(rng, c.random_packets);
  const Complex fg = weighted_inner(f, SymbolFunction::constant(1.0), g, grid);
  const auto probes = probe_nodes(rng, 6, 1.5);
  const std::string pin = "6 fibers, rapidity<=1.5";

  const BundleSection phi_varpi = apply_field(ctx, f, apply_varpi(ctx, g, psi));
  const BundleSection varpi_phi = apply_varpi(ctx, g, apply_field(ctx, f, psi));
  double ccr = 0.0, phi_n = 0.0, phi_pi = 0.0, b0 = 0.0, transverse = 0.0, h_n = 0.0, h_s = 0.0, evolved = 0.0;
  for (const auto& n : probes) {
    const FockVector base = psi(n);
    const double nb = fock_norm(base, cache);
    ccr = std::max(ccr, fock_norm(phi_varpi(n) - varpi_phi(n) - base * (kI * fg), cache) / nb);
    for (int mu = 0; mu < 4; ++mu) {
      const FockVector d = apply_field(ctx, f, apply_n(mu, psi))(n) - apply_n(mu, apply_field(ctx, f, psi))(n);
      phi_n = std::max(phi_n, fock_norm(d, cache) / nb);
      const FockVector e = apply_field(ctx, f, apply_pi(ctx, mu, g, psi))(n) - apply_pi(ctx, mu, g, apply_field(ctx, f, psi))(n) -
                           base * (kI * n.lowered()[mu] * fg);
      phi_pi = std::max(phi_pi, fock_norm(e, cache) / nb);
      b0 = std::max(b0, fock_norm(apply_pi_variant(ctx, mu, g, 0.0, psi)(n) - apply_pi(ctx, mu, g, psi)(n), cache) / nb);
      const FockVector hn = apply_H(ctx, apply_n(mu, psi))(n) - apply_n(mu, apply_H(ctx, psi))(n);
      h_n = std::max(h_n, fock_norm(hn, cache) / nb);
    }
    FockVector contracted = FockVector::zero();
    for (int mu = 0; mu < 4; ++mu)
      contracted = contracted + (apply_pi_variant(ctx, mu, g, c.pi_variant_b, psi)(n) - apply_pi(ctx, mu, g, psi)(n)) * n[mu];
    transverse = std::max(transverse, fock_norm(contracted, cache) / nb);

    PolyFunction p0 = PolyFunction::coordinate(0);
    const auto s = InternalTimeProfile::polynomial(p0);
    h_s = std::max(h_s, fock_norm(apply_H_s(ctx, s, psi)(n) - apply_H(ctx, psi)(n) * n[0], cache) / nb);

    // phi(f; s] against exp(i s H) phi(f) exp(-i s H) built from second quantised multipliers.
    const double sn = 0.7 * n[0];
    const FockVector direct = base.apply_multiplier(SymbolFunction::exp_sqrt_gamma(n, m, Complex(0.0, -sn)))
                                  .apply(make_field(FieldKind::phi, n, f, m), cache)
                                  .apply_multiplier(SymbolFunction::exp_sqrt_gamma(n, m, Complex(0.0, sn)));
    const auto profile = InternalTimeProfile::polynomial(p0 * ExactComplex(Rational(7, 10)));
    evolved = std::max(evolved, fock_norm(apply_evolved_field(ctx, profile, f, psi)(n) - direct, cache) / nb);
  }
  out.push_back(make_record("bundle.phi_varpi", "[phi(f), varpi(g)] Psi = i <f,g> Psi", pin, ccr, c.tolerance("bundle_ccr")));
  out.push_back(make_record("bundle.phi_n", "[phi(f), n_mu] Psi = 0", pin, phi_n, c.tolerance("rounding")));
  out.push_back(make_record("bundle.phi_pi_mu", "[phi(f), pi_mu(g)] Psi = i n_mu <f,g> Psi", pin, phi_pi,
                            c.tolerance("bundle_ccr")));
  // These differences cancel only numerically, so the norm sits at sqrt(eps) rather than eps.
  out.push_back(make_record("bundle.pi_variant_b0", "b = 0 variant equals n_mu varpi", pin, b0, c.tolerance("bundle_ccr")));
  out.push_back(make_record("bundle.pi_variant_transverse", "n^mu (pi_mu - n_mu varpi) = 0", pin, transverse,
                            c.tolerance("bundle_ccr")));
  out.push_back(make_record("bundle.H_n", "[H, n_mu] Psi = 0", pin, h_n, c.tolerance("rounding")));
  out.push_back(make_record("bundle.H_s", "H[s] Psi(n) = s(n) H Psi(n) for s = n^0", pin, h_s, c.tolerance("rounding")));
  out.push_back(make_record("bundle.evolved_field", "phi(f; s] = exp(i H[s]) phi(f) exp(-i H[s])", pin + ", s = 0.7 n^0",
                            evolved, c.tolerance("bundle_ccr")));

  const FockVector h_vac = BundleSection::ground()(FoliationVector::rest()).apply_one_body(
      SymbolFunction::gamma_power(FoliationVector::rest(), m, 0.5));
  double h_omega = 0.0;
  for (const auto& n : probes) h_omega = std::max(h_omega, fock_norm(apply_H(ctx, BundleSection::ground())(n), cache));
  out.push_back(make_record("bundle.H_omega", "H Omega = 0", pin, std::max(h_omega, h_vac.is_zero() ? 0.0 : 1.0), 0.0));

  // [pi_mu(g), pi_nu(h)] with the transverse b term.
  const double b = c.pi_variant_b;
  const Coefficient gc = Coefficient::of(g), hc = Coefficient::of(f);
  double modified = 0.0;
  for (const auto& n : probes) {
    Complex dg[4];
    for (int l = 0; l < 4; ++l) dg[l] = bilinear_pairing(gc, hc.derivative(l), grid);
    Complex ndg = 0.0;
    for (int l = 0; l < 4; ++l) ndg += n[l] * dg[l];
    const Covector nl = n.lowered();
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        const Complex lhs = commutator_value(pi_variant_fiber_op(mu, n, gc, b, m), pi_variant_fiber_op(nu, n, hc, b, m), grid);
        const Complex rhs = kI * b * (nl[nu] * dg[mu] + nl[mu] * dg[nu]) - 2.0 * kI * b * nl[mu] * nl[nu] * ndg;
        modified = std::max(modified, std::abs(lhs - rhs));
      }
  }
  out.push_back(make_record("bundle.pi_variant_commutator",
                            "[pi_mu(g), pi_nu(h)] = 2ib int g (n_(nu d_mu) - n_mu n_nu n.d) h",
                            pin + ", b = " + std::to_string(b), modified, c.tolerance("pi_variant")));

  // s(n) >= 0 on the sample for the configured profile.
  PolyFunction sp = PolyFunction::constant(ExactComplex(0));
  for (int mu = 0; mu < 4; ++mu) sp = sp + PolyFunction::coordinate(mu) * ExactComplex(Rational(c.internal_time[mu]));
  sp = sp + PolyFunction::constant(ExactComplex(Rational(c.internal_time[4])));
  double negative = 0.0;
  try {
    InternalTimeProfile::polynomial(sp).validate(ctx.sample);
  } catch (const std::invalid_argument&) {
    negative = 1.0;
  }
  out.push_back(make_record("bundle.internal_time", "s(n) >= 0 on the sample", "configured profile", negative, 0.0));
  return out;
}

std::vector<TestRecord> lifted_action_checks(const RunConfig& c) {
  auto rng = stream(c, 14);
  const QuadratureGrid grid = c.grid();
  const double m = c.mass;
  BundleContext ctx(m, grid, sample_hyperboloid(c.sample_rapidity_max, c.sample_radial, c.sample_angular));
  auto& cache = *ctx.cache;
  std::vector<TestRecord> out;
  std::vector<LorentzTransform> ls;
  double max_rapidity = 0.0;
  for (const auto& b : c.boosts) {
    ls.push_back(b.transform());
    max_rapidity = std::max(max_rapidity, std::abs(b.rapidity));
  }
  if (ls.empty()) ls.push_back(LorentzTransform::identity());

  // Cap width chosen so |Psi|^2 < 1e-10 beyond rapidity_max - max boost rapidity.
  const double reach = std::max(0.5, c.sample_rapidity_max - max_rapidity);
  const double alpha = 11.6 / (std::cosh(reach) - 1.0);
  const FockVector v = sample_fiber(rng, c);
  const BundleSection psi = BundleSection::product(cap_amplitude(FoliationVector::rest(), alpha), v);
  const double norm2 = section_inner(ctx, psi, psi).real();
  const std::string in = "sample chi<=" + std::to_string(c.sample_rapidity_max) + ", cap alpha " + std::to_string(alpha) +
                         ", " + std::to_string(ls.size()) + " boosts";

  double unitarity = 0.0, group = 0.0;
  for (size_t i = 0; i < ls.size(); ++i) {
    const BundleSection w = apply_W(ls[i], psi);
    unitarity = std::max(unitarity, std::abs(section_inner(ctx, w, w).real() - norm2) / norm2);
    const LorentzTransform& l2 = ls[(i + 1) % ls.size()];
    const BundleSection d([&, w2 = apply_W(l2, w), w21 = apply_W(l2 * ls[i], psi)](const FoliationVector& n) {
      return w2(n) - w21(n);
    });
    group = std::max(group, std::sqrt(std::max(0.0, section_inner(ctx, d, d).real()) / norm2));
  }
  out.push_back(make_record("lifted.unitarity", "<W(L) Psi, W(L) Psi> = <Psi, Psi>", in, unitarity,
                            c.tolerance("w_unitarity")));
  out.push_back(make_record("lifted.group_law", "W(L2) W(L1) = W(L2 L1)", in, group, c.tolerance("group_law")));

  const BundleSection wt = apply_W_translation(c.translations.empty() ? FourVector(1, 0, 0, 0) : c.translations.front(), psi);
  out.push_back(make_record("lifted.translation_unitarity", "<W(a) Psi, W(a) Psi> = <Psi, Psi>", in,
                            std::abs(section_inner(ctx, wt, wt).real() - norm2) / norm2, c.tolerance("rounding")));

  // Intertwiners on fiber vectors whose coefficients depend on n.
  double cocycle = 0.0, isometry = 0.0;
  const TestFunction f = random_real_test_function(rng, c.random_packets);
  const auto probes = probe_nodes(rng, 4, 1.0);
  for (const auto& n : probes) {
    const FockVector fiber = v.apply(make_field(FieldKind::phi, n, f, m), cache);
    const double before = fock_inner(fiber, fiber, cache).real();
    for (size_t i = 0; i < ls.size(); ++i) {
      const LorentzTransform& l1 = ls[i];
      const LorentzTransform& l2 = ls[(i + 1) % ls.size()];
      const FockVector two = apply_intertwiner(n.transformed(l1), l2, apply_intertwiner(n, l1, fiber));
      const FockVector one = apply_intertwiner(n, l2 * l1, fiber);
      cocycle = std::max(cocycle, record_distance(two, one));
      const FockVector moved = apply_intertwiner(n, l1, fiber);
      isometry = std::max(isometry, std::abs(fock_inner(moved, moved, cache).real() - before) / before);
    }
  }
  out.push_back(make_record("lifted.cocycle", "U(L n; L') U(n; L) = U(n; L' L)", "packet records, 4 fibers", cocycle,
                            c.tolerance("cocycle")));
  out.push_back(make_record("lifted.intertwiner_norm", "||U(n; L) v|| = ||v||", "4 fibers, phi_n(f) applied", isometry,
                            c.tolerance("intertwiner_norm")));

  // W(L) phi(f) W(L)^{-1} Psi = phi(L f) Psi, fiber by fiber.
  double covariance = 0.0;
  const FourVector zero;
  for (const auto& l : ls) {
    const BundleSection lhs = apply_W(l, apply_field(ctx, f, apply_W(l.inverse(), psi)));
    const BundleSection rhs = apply_field(ctx, poincare_act(l, zero, f), psi);
    for (const auto& n : probes) {
      const double nb = fock_norm(psi(n), cache);
      covariance = std::max(covariance, fock_norm(lhs(n) - rhs(n), cache) / (nb * l2_norm(f, grid)));
    }
  }
  out.push_back(make_record("lifted.field_covariance", "W(L) phi(f) W(L)^{-1} Psi = phi(L f) Psi",
                            "4 fibers, configured boosts", covariance, c.tolerance("w_covariance")));
  return out;
}

// ---------------------------------------------------------------- runner

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"geometry", "packets",    "field-algebra", "bogoliubov",
                                              "classical", "foliation", "bundle",        "all"};
  return names;
}

namespace {

using Family = std::vector<TestRecord> (*)(const RunConfig&);

const std::map<std::string, std::vector<Family>>& suite_table() {
  static const std::map<std::string, std::vector<Family>> t{
      {"geometry", {geometry_checks}},
      {"packets", {packet_checks}},
      {"field-algebra",
       {ccr_checks, covariance_checks, evolution_checks, fock_checks, energy_checks, momentum_checks}},
      {"bogoliubov", {bogoliubov_checks}},
      {"classical", {classical_checks, correspondence_checks}},
      {"foliation", {foliation_checks, jacobi_checks}},
      {"bundle", {bundle_checks, lifted_action_checks}}};
  return t;
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

}  // namespace

Report run_suite(const RunConfig& c, const std::string& suite) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw UnknownName("unknown suite '" + suite + "'; valid suites: " + joined(names));
  Report r;
  r.suite = suite;
  r.config_digest = c.digest();
  r.seed = c.seed;
  for (const auto& name : names) {
    if (name == "all" || (suite != "all" && suite != name)) continue;
    for (Family fam : suite_table().at(name)) r.append(fam(c));
  }
  return r;
}

// ---------------------------------------------------------------- sweeps

const std::vector<std::string>& sweep_names() {
  static const std::vector<std::string> names{"beta_hs_norm", "correspondence", "quadrature"};
  return names;
}

std::string SweepTable::csv() const {
  std::ostringstream s;
  s.precision(17);
  s << parameter_name << ",value,error_estimate\n";
  for (const auto& r : rows) s << r.parameter << "," << r.value << "," << r.error << "\n";
  s << "# monotone," << (monotone ? "true" : "false") << "\n";
  return s.str();
}

SweepTable run_sweep(const RunConfig& c, const std::string& quantity) {
  SweepTable t;
  t.quantity = quantity;
  if (quantity == "beta_hs_norm") {
    t.parameter_name = "cutoff";
    const FoliationVector n = FoliationVector::rest();
    const FoliationVector np =
        n.transformed(LorentzTransform::boost(c.bogoliubov_rapidity, Eigen::Vector3d(1.0, 0.5, -0.3)));
    const BogoliubovPair pair = bogoliubov(n, np, c.mass);
    const BallQuadrature rule{c.ball_radial, c.ball_polar, c.ball_azimuth};
    const BallQuadrature fine{c.ball_radial + 8, c.ball_polar + 8, c.ball_azimuth + 8};
    for (double r : c.cutoffs) {
      const double v = beta_hs_norm(pair, r, rule);
      t.rows.push_back({r, v, std::abs(beta_hs_norm(pair, r, fine) - v)});
    }
    t.monotone = true;
    for (size_t i = 1; i < t.rows.size(); ++i) t.monotone = t.monotone && t.rows[i].value > t.rows[i - 1].value;
    return t;
  }
  if (quantity == "correspondence") {
    t.parameter_name = "sites";
    const QuadratureGrid grid = c.grid();
    const auto k = correspondence_cases(c).front();
    for (int sites : c.lattice_sites) {
      const LatticeSpec lat = lattice_covering(k.f, k.g, sites, c.lattice_half_widths);
      const auto r = correspondence_check(k.f, k.g, k.v, k.n, lat, c.mass, grid);
      t.rows.push_back({static_cast<double>(sites), r.classical.real(), r.relative_deviation});
    }
  } else if (quantity == "quadrature") {
    // Grid sum of exp(-(b - 1)|z|^2 / 2) against the exact (2 pi / b)^2 / (2 pi)^2 = b^{-2}.
    t.parameter_name = "points_per_axis";
    const double b = 1.5;
    for (int pts : {2, 4, 8, 16}) {
      const QuadratureGrid g = build_quadrature(c.quadrature_extent, pts);
      std::vector<Complex> terms;
      for (size_t i = 0; i < g.nodes.size(); ++i) terms.push_back(g.weights[i] * std::exp(-0.5 * (b - 1.0) * g.nodes[i].squaredNorm()));
      const double v = pairwise_sum(terms).real();
      t.rows.push_back({static_cast<double>(pts), v, std::abs(v - 1.0 / (b * b))});
    }
  } else {
    throw UnknownName("unknown sweep quantity '" + quantity + "'; valid quantities: " + joined(sweep_names()));
  }
  t.monotone = true;
  for (size_t i = 1; i < t.rows.size(); ++i) t.monotone = t.monotone && t.rows[i].error < t.rows[i - 1].error;
  return t;
}

}  // namespace hqft
