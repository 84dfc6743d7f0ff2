#pragma once

#include "hqft/history_algebra.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace hqft {

// Memo of one-particle inner products <u, v> keyed by coefficient keys. Thread safe.
class OneParticleCache {
 public:
  explicit OneParticleCache(QuadratureGrid grid) : grid_(std::move(grid)) {}
  Complex inner(const Coefficient& u, const Coefficient& v);
  Complex pairing(const Coefficient& u, const Coefficient& v);
  const QuadratureGrid& grid() const { return grid_; }
  size_t size() const;

 private:
  QuadratureGrid grid_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, Complex> inner_, pairing_;
};

// Finite sum of terms c * b^dagger(h_1) ... b^dagger(h_k) |0>, stored symbolically.
// Terms with the same multiset of one-particle functions are merged.
class FockVector {
 public:
  struct Term {
    Complex amplitude = 1.0;
    std::vector<Coefficient> particles;  // sorted by key
  };

  static FockVector vacuum();
  static FockVector zero() { return FockVector(); }

  FockVector create(const Coefficient& h) const;
  // int a(X) b(X) d^4X applied to this vector.
  FockVector annihilate(const Coefficient& a, OneParticleCache& cache) const;
  FockVector apply(const SmearedFieldOp& op, OneParticleCache& cache) const;
  // Second quantisation d Gamma(T) of a one-particle multiplier T.
  FockVector apply_one_body(const SymbolFunction& t) const;
  // Second quantisation Gamma(V) of a one-particle multiplier V.
  FockVector apply_multiplier(const SymbolFunction& v) const;
  // U(a, Lambda)
  FockVector transformed(const LorentzTransform& lambda, const FourVector& a = FourVector()) const;

  FockVector operator+(const FockVector& o) const;
  FockVector operator-(const FockVector& o) const { return *this + o * Complex(-1.0); }
  FockVector operator*(Complex s) const;

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::string key() const;

 private:
  void add(Term t);
  std::vector<Term> terms_;
};

Complex fock_inner(const FockVector& a, const FockVector& b, OneParticleCache& cache);

}  // namespace hqft
