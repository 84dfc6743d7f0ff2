#include "hqft/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hqft {

namespace {

std::string hex(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", x == 0.0 ? 0.0 : x);  // folds -0 into 0
  return buf;
}

std::string identity_key(const SymbolFactor& f) {
  std::string s;
  switch (f.kind) {
    case SymbolFactor::Kind::GammaPower: s = "G"; break;
    case SymbolFactor::Kind::ExpSqrtGamma: s = "E"; break;
    case SymbolFactor::Kind::Linear: s = "L"; break;
  }
  s += "[";
  for (int i = 0; i < 4; ++i) s += hex(f.vec[i]) + ",";
  if (f.kind != SymbolFactor::Kind::Linear) s += "m" + hex(f.mass);
  return s + "]";
}

bool is_integer(double p) { return std::floor(p) == p; }

Complex int_pow(Complex z, int p) {
  Complex r = 1.0, b = z;
  unsigned e = static_cast<unsigned>(p < 0 ? -p : p);
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return p < 0 ? 1.0 / r : r;
}

// Gamma and exp factors whose n agree to within rounding are merged as well: a
// foliation vector pushed through Lambda and back differs from the original only
// in the last bits, and keeping such pairs apart would defeat the cancellation.
bool same_foliation(const SymbolFactor& a, const SymbolFactor& b) {
  if (a.kind != b.kind || a.kind == SymbolFactor::Kind::Linear || a.mass != b.mass) return false;
  const double scale = std::max(1.0, a.vec.cwiseAbs().maxCoeff());
  return (a.vec - b.vec).cwiseAbs().maxCoeff() <= 1e-13 * scale;
}

std::vector<SymbolFactor> canonical(std::vector<SymbolFactor> fs) {
  std::vector<SymbolFactor> out;
  for (const auto& f : fs) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SymbolFactor& o) { return same_foliation(o, f); });
    if (it != out.end()) {
      it->power += f.power;
      it->rate += f.rate;
    } else {
      out.push_back(f);
    }
  }
  std::erase_if(out, [](const SymbolFactor& f) {
    return (f.kind == SymbolFactor::Kind::GammaPower && f.power == 0.0) ||
           (f.kind == SymbolFactor::Kind::ExpSqrtGamma && f.rate == 0.0);
  });
  std::stable_sort(out.begin(), out.end(),
                   [](const SymbolFactor& a, const SymbolFactor& b) { return identity_key(a) < identity_key(b); });
  return out;
}

std::string factors_key(const std::vector<SymbolFactor>& fs) {
  std::string s;
  for (const auto& f : fs) s += f.key();
  return s;
}

}  // namespace

Complex gamma_value(const FourVector& n, double mass, const CVec4& k) {
  const Complex nk = n[0] * k[0] + n[1] * k[1] + n[2] * k[2] + n[3] * k[3];
  const Complex kk = k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3];
  return nk * nk - kk + mass * mass;
}

double gamma_value(const FoliationVector& n, double mass, const Covector& k) {
  const double nk = contract(k, n.vector());
  return nk * nk - minkowski_dot(k, k) + mass * mass;
}

Complex SymbolFactor::evaluate(const CVec4& k) const {
  switch (kind) {
    case Kind::Linear:
      return vec[0] * k[0] + vec[1] * k[1] + vec[2] * k[2] + vec[3] * k[3];
    case Kind::GammaPower: {
      const Complex g = gamma_value(FourVector(vec), mass, k);
      if (is_integer(power) && std::abs(power) <= 64) return int_pow(g, static_cast<int>(power));
      if (power == 0.5) return std::sqrt(g);
      if (power == -0.5) return 1.0 / std::sqrt(g);
      return std::pow(g, power);
    }
    case Kind::ExpSqrtGamma:
      return std::exp(rate * std::sqrt(gamma_value(FourVector(vec), mass, k)));
  }
  return 0.0;
}

std::string SymbolFactor::key() const {
  std::string s = identity_key(*this);
  if (kind == Kind::GammaPower) s += "^" + hex(power);
  if (kind == Kind::ExpSqrtGamma) s += "^" + hex(rate.real()) + "," + hex(rate.imag());
  return s;
}

SymbolFunction SymbolFunction::constant(Complex c) {
  SymbolFunction s;
  if (c != 0.0) s.terms_.push_back({c, {}});
  return s;
}

SymbolFunction SymbolFunction::gamma_power(const FoliationVector& n, double mass, double power) {
  if (!(mass > 0.0)) throw std::invalid_argument("gamma symbol: mass must be positive");
  SymbolFactor f;
  f.kind = SymbolFactor::Kind::GammaPower;
  f.vec = n.vector().components();
  f.mass = mass;
  f.power = power;
  SymbolFunction s;
  s.add_term({1.0, canonical({f})});
  return s;
}

SymbolFunction SymbolFunction::linear(const FourVector& l) {
  SymbolFactor f;
  f.kind = SymbolFactor::Kind::Linear;
  f.vec = l.components();
  SymbolFunction s;
  if (!l.components().isZero(0.0)) s.terms_.push_back({1.0, {f}});
  return s;
}

SymbolFunction SymbolFunction::momentum(int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("SymbolFunction::momentum: index");
  Vec4 e = Vec4::Zero();
  e[mu] = 1.0;
  return linear(FourVector(e));
}

SymbolFunction SymbolFunction::exp_sqrt_gamma(const FoliationVector& n, double mass, Complex rate) {
  if (!(mass > 0.0)) throw std::invalid_argument("gamma symbol: mass must be positive");
  SymbolFactor f;
  f.kind = SymbolFactor::Kind::ExpSqrtGamma;
  f.vec = n.vector().components();
  f.mass = mass;
  f.rate = rate;
  SymbolFunction s;
  s.add_term({1.0, canonical({f})});
  return s;
}

SymbolFunction SymbolFunction::from_term(const SymbolTerm& t) {
  SymbolFunction s;
  s.add_term({t.scale, canonical(t.factors)});
  return s;
}

void SymbolFunction::add_term(SymbolTerm t) {
  if (t.scale == 0.0) return;
  const std::string k = factors_key(t.factors);
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (factors_key(it->factors) == k) {
      it->scale += t.scale;
      if (it->scale == 0.0) terms_.erase(it);
      return;
    }
  }
  terms_.push_back(std::move(t));
}

SymbolTerm SymbolFunction::multiply(const SymbolTerm& a, const SymbolTerm& b) {
  std::vector<SymbolFactor> fs = a.factors;
  fs.insert(fs.end(), b.factors.begin(), b.factors.end());
  return {a.scale * b.scale, canonical(std::move(fs))};
}

Complex SymbolFunction::evaluate(const CVec4& k) const {
  Complex total = 0.0;
  for (const auto& t : terms_) {
    Complex v = t.scale;
    for (const auto& f : t.factors) v *= f.evaluate(k);
    total += v;
  }
  return total;
}

SymbolFunction SymbolFunction::operator*(const SymbolFunction& o) const {
  SymbolFunction r;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) r.add_term(multiply(a, b));
  return r;
}

SymbolFunction SymbolFunction::operator+(const SymbolFunction& o) const {
  SymbolFunction r = *this;
  for (const auto& t : o.terms_) r.add_term(t);
  return r;
}

SymbolFunction SymbolFunction::operator-(const SymbolFunction& o) const { return *this + o * Complex(-1.0); }

SymbolFunction SymbolFunction::operator*(Complex s) const {
  SymbolFunction r;
  for (auto t : terms_) {
    t.scale *= s;
    r.add_term(std::move(t));
  }
  return r;
}

SymbolFunction SymbolFunction::pow(double p) const {
  if (terms_.size() != 1) throw std::invalid_argument("SymbolFunction::pow: needs a single-term symbol");
  const SymbolTerm& t = terms_.front();
  SymbolTerm out;
  out.scale = std::pow(t.scale, p);
  for (const auto& f : t.factors) {
    if (f.kind == SymbolFactor::Kind::Linear) {
      if (!is_integer(p) || p < 0) throw std::invalid_argument("SymbolFunction::pow: linear factor needs integer power");
      for (int i = 0; i < static_cast<int>(p); ++i) out.factors.push_back(f);
    } else {
      SymbolFactor g = f;
      g.power *= p;
      g.rate *= p;
      out.factors.push_back(g);
    }
  }
  out.factors = canonical(std::move(out.factors));
  SymbolFunction r;
  r.add_term(std::move(out));
  return r;
}

SymbolFunction SymbolFunction::reflected() const {
  SymbolFunction r;
  for (auto t : terms_) {
    for (const auto& f : t.factors)
      if (f.kind == SymbolFactor::Kind::Linear) t.scale = -t.scale;
    r.add_term(std::move(t));
  }
  return r;
}

SymbolFunction SymbolFunction::conjugated() const {
  SymbolFunction r;
  for (auto t : terms_) {
    t.scale = std::conj(t.scale);
    for (auto& f : t.factors) f.rate = std::conj(f.rate);
    t.factors = canonical(std::move(t.factors));
    r.add_term(std::move(t));
  }
  return r;
}

SymbolFunction SymbolFunction::transported(const LorentzTransform& lambda) const {
  SymbolFunction r;
  for (auto t : terms_) {
    for (auto& f : t.factors) {
      if (f.kind == SymbolFactor::Kind::Linear)
        f.vec = lambda.matrix() * f.vec;
      else
        f.vec = FoliationVector::from_spatial(f.vec.tail<3>()).transformed(lambda).vector().components();
    }
    t.factors = canonical(std::move(t.factors));
    r.add_term(std::move(t));
  }
  return r;
}

double SymbolFunction::max_shift(const Vec4& y) const {
  double t = std::numeric_limits<double>::infinity();
  for (const auto& term : terms_) {
    for (const auto& f : term.factors) {
      const bool entire = f.kind == SymbolFactor::Kind::Linear ||
                          (f.kind == SymbolFactor::Kind::GammaPower && is_integer(f.power) && f.power >= 0);
      if (entire) continue;
      const double ny = f.vec.dot(y);
      const double yy = y[0] * y[0] - y[1] * y[1] - y[2] * y[2] - y[3] * y[3];
      const double q = ny * ny - yy;
      if (q > 0.0) t = std::min(t, std::sqrt(f.mass * f.mass / (2.0 * q)));
    }
  }
  return t;
}

int SymbolFunction::polynomial_degree() const {
  int deg = 0;
  for (const auto& t : terms_) {
    int d = 0;
    for (const auto& f : t.factors) {
      if (f.kind == SymbolFactor::Kind::Linear)
        d += 1;
      else if (f.kind == SymbolFactor::Kind::GammaPower && is_integer(f.power) && f.power >= 0)
        d += 2 * static_cast<int>(f.power);
      else
        return -1;
    }
    deg = std::max(deg, d);
  }
  return deg;
}

std::string SymbolFunction::key() const {
  std::vector<std::string> parts;
  for (const auto& t : terms_) parts.push_back(factors_key(t.factors) + "*" + hex(t.scale.real()) + "," + hex(t.scale.imag()));
  std::sort(parts.begin(), parts.end());
  std::string s = "S{";
  for (const auto& p : parts) s += p + ";";
  return s + "}";
}

}  // namespace hqft
