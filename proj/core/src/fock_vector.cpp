#include "hqft/fock_vector.hpp"

#include <algorithm>

namespace hqft {

namespace {

std::string term_key(const std::vector<Coefficient>& ps) {
  std::string k = std::to_string(ps.size()) + ":";
  for (const auto& p : ps) k += p.key() + "|";
  return k;
}

// Ryser's formula.
Complex permanent(const std::vector<std::vector<Complex>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1.0;
  Complex total = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) {
      Complex row = 0.0;
      for (int j = 0; j < n; ++j)
        if (mask & (1u << j)) row += m[i][j];
      prod *= row;
    }
    const int bits = __builtin_popcount(mask);
    total += ((n - bits) % 2 ? -1.0 : 1.0) * prod;
  }
  return total;
}

}  // namespace

Complex OneParticleCache::inner(const Coefficient& u, const Coefficient& v) {
  auto key = std::make_pair(u.key(), v.key());
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = inner_.find(key);
    if (it != inner_.end()) return it->second;
  }
  const Complex val = l2_inner(u, v, grid_);
  std::lock_guard<std::mutex> lock(mu_);
  inner_.emplace(std::move(key), val);
  return val;
}

Complex OneParticleCache::pairing(const Coefficient& u, const Coefficient& v) {
  auto key = std::make_pair(u.key(), v.key());
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = pairing_.find(key);
    if (it != pairing_.end()) return it->second;
  }
  const Complex val = bilinear_pairing(u, v, grid_);
  std::lock_guard<std::mutex> lock(mu_);
  pairing_.emplace(std::move(key), val);
  return val;
}

size_t OneParticleCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return inner_.size() + pairing_.size();
}

FockVector FockVector::vacuum() {
  FockVector v;
  v.terms_.push_back({1.0, {}});
  return v;
}

void FockVector::add(Term t) {
  if (t.amplitude == 0.0) return;
  std::sort(t.particles.begin(), t.particles.end(),
            [](const Coefficient& a, const Coefficient& b) { return a.key() < b.key(); });
  const std::string k = term_key(t.particles);
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (term_key(it->particles) == k) {
      it->amplitude += t.amplitude;
      if (it->amplitude == 0.0) terms_.erase(it);
      return;
    }
  }
  terms_.push_back(std::move(t));
}

FockVector FockVector::create(const Coefficient& h) const {
  FockVector r;
  if (h.symbol.is_zero() || h.base.empty()) return r;
  for (auto t : terms_) {
    t.particles.push_back(h);
    r.add(std::move(t));
  }
  return r;
}

FockVector FockVector::annihilate(const Coefficient& a, OneParticleCache& cache) const {
  FockVector r;
  for (const auto& t : terms_) {
    for (size_t i = 0; i < t.particles.size(); ++i) {
      const Complex c = cache.pairing(a, t.particles[i]);
      Term s;
      s.amplitude = t.amplitude * c;
      for (size_t j = 0; j < t.particles.size(); ++j)
        if (j != i) s.particles.push_back(t.particles[j]);
      r.add(std::move(s));
    }
  }
  return r;
}

FockVector FockVector::apply(const SmearedFieldOp& op, OneParticleCache& cache) const {
  FockVector r;
  for (const auto& a : op.annihilation) r = r + annihilate(a, cache);
  for (const auto& b : op.creation) r = r + create(b);
  return r;
}

FockVector FockVector::apply_one_body(const SymbolFunction& t) const {
  FockVector r;
  for (const auto& term : terms_) {
    for (size_t i = 0; i < term.particles.size(); ++i) {
      Term s = term;
      s.particles[i] = s.particles[i].with_symbol(t);
      if (s.particles[i].symbol.is_zero()) continue;
      r.add(std::move(s));
    }
  }
  return r;
}

FockVector FockVector::apply_multiplier(const SymbolFunction& v) const {
  FockVector r;
  for (auto term : terms_) {
    bool zero = false;
    for (auto& p : term.particles) {
      p = p.with_symbol(v);
      zero = zero || p.symbol.is_zero();
    }
    if (!zero) r.add(std::move(term));
  }
  return r;
}

FockVector FockVector::transformed(const LorentzTransform& lambda, const FourVector& a) const {
  FockVector r;
  for (auto term : terms_) {
    for (auto& p : term.particles) p = p.transformed(lambda, a);
    r.add(std::move(term));
  }
  return r;
}

FockVector FockVector::operator+(const FockVector& o) const {
  FockVector r = *this;
  for (const auto& t : o.terms_) r.add(t);
  return r;
}

FockVector FockVector::operator*(Complex s) const {
  FockVector r;
  if (s == 0.0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.amplitude *= s;
  return r;
}

std::string FockVector::key() const {
  std::vector<std::string> parts;
  for (const auto& t : terms_) parts.push_back(term_key(t.particles));
  std::sort(parts.begin(), parts.end());
  std::string k;
  for (const auto& p : parts) k += p + ";";
  return k;
}

Complex fock_inner(const FockVector& a, const FockVector& b, OneParticleCache& cache) {
  Complex total = 0.0;
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) {
      if (s.particles.size() != t.particles.size()) continue;
      const size_t k = s.particles.size();
      std::vector<std::vector<Complex>> m(k, std::vector<Complex>(k));
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) m[i][j] = cache.inner(s.particles[i], t.particles[j]);
      total += std::conj(s.amplitude) * t.amplitude * permanent(m);
    }
  return total;
}

}  // namespace hqft
