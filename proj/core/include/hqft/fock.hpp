#pragma once

#include "hqft/history_algebra.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace hqft {

// Bosonic Fock space on the span of finitely many orthonormalised packet modes,
// truncated at total occupancy n_max.
class TruncatedFock {
 public:
  // Gram-Schmidt (via Cholesky of the Gram matrix) on the dictionary. Throws
  // std::invalid_argument naming the offending dictionary entries when the Gram
  // matrix condition number exceeds max_condition.
  static TruncatedFock build(const std::vector<TestFunction>& dictionary, int n_max, const QuadratureGrid& grid,
                             double max_condition = 1e8);

  int modes() const { return static_cast<int>(modes_.size()); }
  int n_max() const { return n_max_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(states_.size()); }
  const std::vector<TestFunction>& mode_functions() const { return modes_; }
  const std::vector<int>& occupation(Eigen::Index state) const { return states_[state]; }
  int total_occupation(Eigen::Index state) const;
  // States with total occupancy <= n_max - 1, where one b or b^dagger cannot hit the cutoff.
  std::vector<Eigen::Index> protected_states() const;

  const Eigen::MatrixXd& annihilator(int mode) const { return b_[mode]; }
  Eigen::MatrixXd creator(int mode) const { return b_[mode].transpose(); }

  // Projection: b(X) -> sum_alpha e_alpha(X) b_alpha.
  Eigen::MatrixXcd field_matrix(const SmearedFieldOp& op, const QuadratureGrid& grid) const;
  // sum_{alpha beta} <e_alpha, T e_beta> B^dagger_alpha B_beta
  Eigen::MatrixXcd quadratic_matrix(const SymbolFunction& one_particle, const QuadratureGrid& grid) const;
  // Gram matrix of the mode functions, recomputed by quadrature.
  Eigen::MatrixXcd mode_gram(const QuadratureGrid& grid) const;
  // Commutator c-number of two field operators restricted to the mode span.
  Complex projected_commutator(const SmearedFieldOp& a, const SmearedFieldOp& b, const QuadratureGrid& grid) const;

 private:
  struct Projection {
    Eigen::VectorXcd c, d;
  };
  Projection project(const SmearedFieldOp& op, const QuadratureGrid& grid) const;

  int n_max_ = 0;
  std::vector<TestFunction> modes_;
  std::vector<std::vector<int>> states_;
  std::map<std::vector<int>, Eigen::Index> index_;
  std::vector<Eigen::MatrixXd> b_;
};

struct AlgebraResidual {
  std::string name;
  double residual = 0.0;
};

struct FieldAlgebraReport {
  std::vector<AlgebraResidual> entries;
  double max_residual() const;
};

// Checks on the protected subspace, for each (f, g): [phi_n(f), phi_n(g)] = 0,
// [pi_n(f), pi_n(g)] = 0, [phi_n(f), pi_n(g)] equal to its projected c-number,
// [Phi(f), Pi(g)] = i <f, g> for covariant fields, and that every field times the
// vacuum leaves only the one-particle sector.
FieldAlgebraReport verify_field_algebra(const FoliationVector& n, const TruncatedFock& fock,
                                        const std::vector<std::pair<TestFunction, TestFunction>>& pairs, double mass,
                                        const QuadratureGrid& grid);

// Largest |entry| of P (A B - B A - c) P on the protected subspace.
double protected_commutator_residual(const TruncatedFock& fock, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                     Complex c);

}  // namespace hqft
