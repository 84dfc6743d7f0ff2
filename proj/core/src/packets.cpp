#include "hqft/packets.hpp"
#include "hqft/quadrature_rules.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hqft {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string hex(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", x == 0.0 ? 0.0 : x);
  return buf;
}

Complex dot(const CVec4& k, const Vec4& x) { return k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + k[3] * x[3]; }

const QuadratureGrid& reduced_grid(int points) {
  static std::mutex mu;
  static std::map<int, QuadratureGrid> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, build_quadrature(1.0, points)).first;
  return it->second;
}

}  // namespace

void GaussianPacket::validate() const {
  if (!width.allFinite() || !(width - width.transpose()).isZero(1e-12 * width.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("GaussianPacket: width matrix must be finite and symmetric");
  Eigen::LLT<Mat4> llt(width);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("GaussianPacket: width matrix is not positive definite");
  if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()) || !center.components().allFinite() ||
      !carrier.components().allFinite())
    throw std::invalid_argument("GaussianPacket: non-finite parameters");
}

GaussianPacket GaussianPacket::conjugate() const {
  GaussianPacket p = *this;
  p.amplitude = std::conj(amplitude);
  p.carrier = carrier * -1.0;
  return p;
}

Complex GaussianPacket::evaluate(const FourVector& x) const {
  const Vec4 u = x.components() - center.components();
  const double q = u.dot(width.ldlt().solve(u));
  return amplitude * std::exp(Complex(-0.5 * q, carrier.components().dot(u)));
}

Complex GaussianPacket::fourier(const CVec4& k) const {
  const CVec4 d = k - carrier.components().cast<Complex>();
  const Complex q = (d.transpose() * width.cast<Complex>() * d)(0, 0);
  const Complex phase = -Complex(0.0, 1.0) * dot(k, center.components());
  return amplitude * kTwoPi * kTwoPi * std::sqrt(width.determinant()) * std::exp(phase - 0.5 * q);
}

std::string GaussianPacket::key() const {
  std::string s = "P[" + hex(amplitude.real()) + "," + hex(amplitude.imag()) + "|";
  for (int i = 0; i < 4; ++i) s += hex(center[i]) + ",";
  s += "|";
  for (int i = 0; i < 4; ++i) s += hex(carrier[i]) + ",";
  s += "|";
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) s += hex(width(i, j)) + ",";
  return s + "]";
}

TestFunction::TestFunction(std::vector<GaussianPacket> packets) : packets_(std::move(packets)) {
  for (const auto& p : packets_) p.validate();
}

TestFunction TestFunction::real_part_of(const GaussianPacket& p) { return TestFunction({p, p.conjugate()}); }

TestFunction TestFunction::conjugate() const {
  TestFunction r;
  for (const auto& p : packets_) r.packets_.push_back(p.conjugate());
  return r;
}

TestFunction TestFunction::operator+(const TestFunction& o) const {
  TestFunction r = *this;
  r.packets_.insert(r.packets_.end(), o.packets_.begin(), o.packets_.end());
  return r;
}

TestFunction TestFunction::operator*(Complex s) const {
  TestFunction r = *this;
  for (auto& p : r.packets_) p.amplitude *= s;
  return r;
}

Complex TestFunction::evaluate(const FourVector& x) const {
  Complex s = 0.0;
  for (const auto& p : packets_) s += p.evaluate(x);
  return s;
}

Complex TestFunction::fourier(const CVec4& k) const {
  Complex s = 0.0;
  for (const auto& p : packets_) s += p.fourier(k);
  return s;
}

std::string TestFunction::key() const {
  std::string s = "F{";
  for (const auto& p : packets_) s += p.key();
  return s + "}";
}

QuadratureGrid build_quadrature(double extent, int points_per_axis) {
  if (!(extent > 0.0) || points_per_axis < 1)
    throw std::invalid_argument("build_quadrature: extent must be positive and points_per_axis >= 1");
  const Rule1D r = gauss_hermite_standard(points_per_axis);
  QuadratureGrid g;
  g.extent = extent;
  g.points_per_axis = points_per_axis;
  const int n = points_per_axis;
  const double e2 = extent * extent;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const Vec4 z(r.nodes[a], r.nodes[b], r.nodes[c], r.nodes[d]);
          const double w = r.weights[a] * r.weights[b] * r.weights[c] * r.weights[d];
          g.nodes.push_back(z * extent);
          g.weights.push_back(w * e2 * e2 * std::exp(-0.5 * (e2 - 1.0) * z.squaredNorm()));
        }
  return g;
}

std::function<Complex(const Covector&)> fourier_transform(const TestFunction& f) {
  return [f](const Covector& k) { return f.fourier(k); };
}

SymbolFunction gamma_symbol(const FoliationVector& n, double mass) { return SymbolFunction::gamma(n, mass); }

GaussianPacket poincare_act(const LorentzTransform& lambda, const FourVector& a, const GaussianPacket& p) {
  GaussianPacket q = p;
  q.center = lambda.apply(p.center) + a;
  q.carrier = lambda.apply(p.carrier);
  q.width = lambda.matrix() * p.width * lambda.matrix().transpose();
  q.width = 0.5 * (q.width + q.width.transpose()).eval();
  return q;
}

TestFunction poincare_act(const LorentzTransform& lambda, const FourVector& a, const TestFunction& f) {
  std::vector<GaussianPacket> ps;
  for (const auto& p : f.packets()) ps.push_back(poincare_act(lambda, a, p));
  return TestFunction(std::move(ps));
}

Complex pairwise_sum(const std::vector<Complex>& v) {
  std::vector<Complex> level = v;
  if (level.empty()) return 0.0;
  while (level.size() > 1) {
    std::vector<Complex> next((level.size() + 1) / 2);
    for (size_t i = 0; i + 1 < level.size(); i += 2) next[i / 2] = level[i] + level[i + 1];
    if (level.size() % 2) next.back() = level.back();
    level.swap(next);
  }
  return level[0];
}

namespace {

// Geometry shared by every term of a packet pair. With P = Sp + Sq the product
// conj(p~) q~ is C0 exp(-kappa^T P kappa / 2 + i kappa.dx) at k = c + kappa.
struct PairGeometry {
  Mat4 P, Pinv;
  Vec4 c, dx;
  Complex c0;
};

PairGeometry pair_geometry(const GaussianPacket& p, const GaussianPacket& q) {
  PairGeometry g;
  g.P = p.width + q.width;
  g.Pinv = g.P.inverse();
  const Vec4 sk = p.width * p.carrier.components() + q.width * q.carrier.components();
  g.c = g.Pinv * sk;
  const double e0 = p.carrier.components().dot(p.width * p.carrier.components()) +
                    q.carrier.components().dot(q.width * q.carrier.components()) - g.c.dot(g.P * g.c);
  g.dx = p.center.components() - q.center.components();
  g.c0 = std::conj(p.amplitude) * q.amplitude * std::sqrt(p.width.determinant() * q.width.determinant()) *
         std::exp(Complex(-0.5 * e0, g.c.dot(g.dx)));
  return g;
}

// I = int d^4 kappa A(c + kappa) exp(-kappa^T P kappa / 2 + i kappa.dx) by
// Gauss-Hermite with the contour moved to c + i t P^{-1} dx.
Complex hermite_part(const PairGeometry& pg, const SymbolFunction& a, const QuadratureGrid& grid) {
  const Vec4 y = pg.Pinv * pg.dx;
  const double dd = pg.dx.dot(y);
  const double t = std::min(1.0, a.max_shift(y));
  const Mat4 L = Eigen::LLT<Mat4>(pg.Pinv).matrixL();
  const int degree = a.polynomial_degree();
  const QuadratureGrid& g = degree >= 0 && t == 1.0 ? reduced_grid(degree / 2 + 1) : grid;

  const CVec4 base = pg.c.cast<Complex>() + Complex(0.0, t) * y.cast<Complex>();
  std::vector<Complex> contrib(g.nodes.size());
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    const Vec4 kappa = L * g.nodes[i];
    Complex v = g.weights[i] * a.evaluate(base + kappa.cast<Complex>());
    if (t < 1.0) v *= std::exp(Complex(0.0, (1.0 - t) * kappa.dot(pg.dx)));
    contrib[i] = v;
  }
  return kTwoPi * kTwoPi * L.diagonal().prod() * std::exp((0.5 * t * t - t) * dd) * pairwise_sum(contrib);
}

// Index of the single fractional or negative gamma power in a term whose other
// factors are linear, or -1.
int schwinger_factor(const SymbolTerm& term) {
  int found = -1;
  for (size_t i = 0; i < term.factors.size(); ++i) {
    const auto& f = term.factors[i];
    if (f.kind == SymbolFactor::Kind::ExpSqrtGamma) return -1;
    if (f.kind != SymbolFactor::Kind::GammaPower) continue;
    if (f.power >= 0.0 && std::floor(f.power) == f.power) continue;
    if (found >= 0) return -1;
    found = static_cast<int>(i);
  }
  return found;
}

// gamma^p = gamma^j gamma^{-s} with j = ceil(p) >= 0 and
// gamma^{-s} = Gamma(s)^{-1} int_0^inf t^{s-1} exp(-t gamma) dt. For fixed t the
// k integral is a Gaussian times a polynomial and is done exactly; what is left
// is a smooth one-dimensional integral over t.
Complex schwinger_part(const PairGeometry& pg, const SymbolTerm& term, int idx) {
  const SymbolFactor& gf = term.factors[idx];
  const double j = std::max(0.0, std::ceil(gf.power));
  const double s = j - gf.power;
  const Vec4 n = gf.vec;
  const double m2 = gf.mass * gf.mass;
  const Mat4 M = n * n.transpose() - metric();

  SymbolTerm rest = term;
  rest.factors.erase(rest.factors.begin() + idx);
  if (j > 0.0) {
    SymbolFactor g = gf;
    g.power = j;
    rest.factors.push_back(g);
  }
  const SymbolFunction poly = SymbolFunction::from_term(rest);
  const QuadratureGrid& g = reduced_grid(poly.polynomial_degree() / 2 + 1);
  const CVec4 cc = pg.c.cast<Complex>();
  const double gamma_c = pg.c.dot(M * pg.c) + m2;

  auto J = [&](double t) {
    const Mat4 Pt = pg.P + 2.0 * t * M;
    Eigen::LLT<Mat4> llt(Pt);
    const Mat4 Ptinv = llt.solve(Mat4::Identity());
    const Mat4 L = Eigen::LLT<Mat4>(Ptinv).matrixL();
    const CVec4 b = Complex(0.0, 1.0) * pg.dx.cast<Complex>() - (2.0 * t) * (M * pg.c).cast<Complex>();
    const CVec4 mu = Ptinv.cast<Complex>() * b;
    Complex sum = 0.0;
    for (size_t i = 0; i < g.nodes.size(); ++i)
      sum += g.weights[i] * poly.evaluate(cc + mu + (L * g.nodes[i]).cast<Complex>());
    const double detL = 1.0 / llt.matrixL().toDenseMatrix().diagonal().prod();
    return kTwoPi * kTwoPi * detL * std::exp(0.5 * b.cwiseProduct(mu).sum() - t * gamma_c) * sum;
  };

  // P + 2tM turns singular at t = -1 / (2 lambda_max(P^{-1} M)); the first panel
  // stays well inside that radius and later panels grow geometrically.
  const Mat4 L0 = Eigen::LLT<Mat4>(pg.Pinv).matrixL();
  const double lmax = Eigen::SelfAdjointEigenSolver<Mat4>(L0.transpose() * M * L0).eigenvalues().maxCoeff();
  const double t_end = 46.0 / m2;
  const double t1 = std::min(0.25 / std::max(lmax, 1e-300), t_end);

  static const Rule1D gl = gauss_legendre(14);
  const Rule1D gj = gauss_jacobi_unit(20, s - 1.0);
  Complex total = 0.0;
  for (size_t i = 0; i < gj.nodes.size(); ++i) total += gj.weights[i] * J(t1 * gj.nodes[i]);
  total *= std::pow(t1, s);
  for (double a = t1; a < t_end; a *= 2.0) {
    const double b = std::min(2.0 * a, t_end);
    Complex panel = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      panel += gl.weights[i] * std::pow(t, s - 1.0) * J(t);
    }
    total += 0.5 * (b - a) * panel;
  }
  return total / std::tgamma(s);
}

Complex pair_integral(const GaussianPacket& p, const SymbolFunction& a, const GaussianPacket& q,
                      const QuadratureGrid& grid) {
  const PairGeometry pg = pair_geometry(p, q);
  SymbolFunction other;
  Complex sum = 0.0;
  for (const auto& term : a.terms()) {
    const int idx = schwinger_factor(term);
    if (idx >= 0)
      sum += schwinger_part(pg, term, idx);
    else
      other = other + SymbolFunction::from_term(term);
  }
  if (!other.is_zero()) sum += hermite_part(pg, other, grid);
  return pg.c0 * sum;
}

}  // namespace

Complex weighted_inner(const TestFunction& f, const SymbolFunction& a, const TestFunction& g,
                       const QuadratureGrid& grid) {
  if (grid.nodes.empty()) throw std::invalid_argument("weighted_inner: empty quadrature grid");
  std::vector<Complex> parts;
  for (const auto& p : f.packets())
    for (const auto& q : g.packets()) {
      if (a.is_zero()) continue;
      const Complex v = pair_integral(p, a, q, grid);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::runtime_error("weighted_inner: non-finite partial sum for packets " + p.key() + " and " + q.key());
      parts.push_back(v);
    }
  return pairwise_sum(parts);
}

double l2_norm(const TestFunction& f, const QuadratureGrid& grid) {
  return std::sqrt(std::max(0.0, weighted_inner(f, SymbolFunction::constant(1.0), f, grid).real()));
}

}  // namespace hqft
