#include "hqft/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace hqft {

namespace {

void enumerate_states(int modes, int n_max, std::vector<std::vector<int>>& out) {
  for (int total = 0; total <= n_max; ++total) {
    std::vector<int> occ(modes, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == modes - 1) {
        occ[pos] = left;
        out.push_back(occ);
        return;
      }
      for (int k = left; k >= 0; --k) {
        occ[pos] = k;
        rec(pos + 1, left - k);
      }
    };
    rec(0, total);
  }
}

}  // namespace

TruncatedFock TruncatedFock::build(const std::vector<TestFunction>& dictionary, int n_max, const QuadratureGrid& grid,
                                   double max_condition) {
  if (dictionary.empty()) throw std::invalid_argument("TruncatedFock: empty dictionary");
  if (n_max < 1) throw std::invalid_argument("TruncatedFock: n_max must be at least 1");
  const int m = static_cast<int>(dictionary.size());
  Eigen::MatrixXcd gram(m, m);
  const SymbolFunction one = SymbolFunction::constant(1.0);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      gram(i, j) = weighted_inner(dictionary[i], one, dictionary[j], grid);
      gram(j, i) = std::conj(gram(i, j));
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > max_condition) {
    const Eigen::VectorXcd v = es.eigenvectors().col(0);
    std::string names;
    for (int j = 0; j < m; ++j)
      if (std::abs(v[j]) > 0.25) names += (names.empty() ? "" : ", ") + std::to_string(j);
    char buf[160];
    std::snprintf(buf, sizeof buf, "TruncatedFock: Gram matrix condition %.3g exceeds %.3g; near-dependent entries: ",
                  lo > 0.0 ? hi / lo : INFINITY, max_condition);
    throw std::invalid_argument(buf + names);
  }
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  const Eigen::MatrixXcd coeff =
      llt.matrixU().solve(Eigen::MatrixXcd::Identity(m, m));  // G = U^H U, modes = dictionary * U^{-1}

  TruncatedFock f;
  f.n_max_ = n_max;
  for (int a = 0; a < m; ++a) {
    TestFunction e;
    for (int j = 0; j <= a; ++j) e = e + dictionary[j] * coeff(j, a);
    f.modes_.push_back(e);
  }
  enumerate_states(m, n_max, f.states_);
  for (size_t s = 0; s < f.states_.size(); ++s) f.index_[f.states_[s]] = static_cast<Eigen::Index>(s);
  const Eigen::Index dim = f.dimension();
  for (int a = 0; a < m; ++a) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
      const auto& occ = f.states_[s];
      if (occ[a] == 0) continue;
      auto lower = occ;
      --lower[a];
      b(f.index_.at(lower), s) = std::sqrt(double(occ[a]));
    }
    f.b_.push_back(std::move(b));
  }
  return f;
}

int TruncatedFock::total_occupation(Eigen::Index state) const {
  int t = 0;
  for (int k : states_[state]) t += k;
  return t;
}

std::vector<Eigen::Index> TruncatedFock::protected_states() const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index s = 0; s < dimension(); ++s)
    if (total_occupation(s) <= n_max_ - 1) out.push_back(s);
  return out;
}

TruncatedFock::Projection TruncatedFock::project(const SmearedFieldOp& op, const QuadratureGrid& grid) const {
  Projection p{Eigen::VectorXcd::Zero(modes()), Eigen::VectorXcd::Zero(modes())};
  for (int a = 0; a < modes(); ++a) {
    const Coefficient e = Coefficient::of(modes_[a]);
    const Coefficient ebar = e.conjugate();
    for (const auto& x : op.annihilation) p.c[a] += bilinear_pairing(x, e, grid);
    for (const auto& y : op.creation) p.d[a] += bilinear_pairing(y, ebar, grid);
  }
  return p;
}

Eigen::MatrixXcd TruncatedFock::field_matrix(const SmearedFieldOp& op, const QuadratureGrid& grid) const {
  const Projection p = project(op, grid);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dimension(), dimension());
  for (int a = 0; a < modes(); ++a) {
    m += p.c[a] * b_[a].cast<Complex>();
    m += p.d[a] * b_[a].transpose().cast<Complex>();
  }
  return m;
}

Eigen::MatrixXcd TruncatedFock::quadratic_matrix(const SymbolFunction& one_particle, const QuadratureGrid& grid) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dimension(), dimension());
  for (int a = 0; a < modes(); ++a)
    for (int b = 0; b < modes(); ++b) {
      const Complex t = weighted_inner(modes_[a], one_particle, modes_[b], grid);
      m += t * (b_[a].transpose() * b_[b]).cast<Complex>();
    }
  return m;
}

Eigen::MatrixXcd TruncatedFock::mode_gram(const QuadratureGrid& grid) const {
  const int m = modes();
  Eigen::MatrixXcd g(m, m);
  const SymbolFunction one = SymbolFunction::constant(1.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = weighted_inner(modes_[i], one, modes_[j], grid);
  return g;
}

Complex TruncatedFock::projected_commutator(const SmearedFieldOp& a, const SmearedFieldOp& b,
                                            const QuadratureGrid& grid) const {
  const Projection pa = project(a, grid), pb = project(b, grid);
  return (pa.c.transpose() * pb.d - pb.c.transpose() * pa.d)(0, 0);
}

double protected_commutator_residual(const TruncatedFock& fock, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                     Complex c) {
  const Eigen::MatrixXcd comm = a * b - b * a;
  const auto keep = fock.protected_states();
  double r = 0.0;
  for (auto i : keep)
    for (auto j : keep) {
      const Complex expected = i == j ? c : Complex(0.0);
      r = std::max(r, std::abs(comm(i, j) - expected));
    }
  return r;
}

double FieldAlgebraReport::max_residual() const {
  double r = 0.0;
  for (const auto& e : entries) r = std::max(r, e.residual);
  return r;
}

FieldAlgebraReport verify_field_algebra(const FoliationVector& n, const TruncatedFock& fock,
                                        const std::vector<std::pair<TestFunction, TestFunction>>& pairs, double mass,
                                        const QuadratureGrid& grid) {
  FieldAlgebraReport rep;
  const Complex i(0.0, 1.0);
  for (size_t p = 0; p < pairs.size(); ++p) {
    const auto& [f, g] = pairs[p];
    const std::string tag = "[" + std::to_string(p) + "]";
    const auto phi_f = make_field(FieldKind::phi, n, f, mass), phi_g = make_field(FieldKind::phi, n, g, mass);
    const auto pi_f = make_field(FieldKind::pi, n, f, mass), pi_g = make_field(FieldKind::pi, n, g, mass);
    const auto cphi_f = make_field(FieldKind::covariant_phi, std::nullopt, f, mass);
    const auto cpi_g = make_field(FieldKind::covariant_pi, std::nullopt, g, mass);

    const auto Mphi_f = fock.field_matrix(phi_f, grid), Mphi_g = fock.field_matrix(phi_g, grid);
    const auto Mpi_f = fock.field_matrix(pi_f, grid), Mpi_g = fock.field_matrix(pi_g, grid);
    const auto Mcphi = fock.field_matrix(cphi_f, grid), Mcpi = fock.field_matrix(cpi_g, grid);

    rep.entries.push_back({"[phi_n(f),phi_n(g)]" + tag, protected_commutator_residual(fock, Mphi_f, Mphi_g, 0.0)});
    rep.entries.push_back({"[pi_n(f),pi_n(g)]" + tag, protected_commutator_residual(fock, Mpi_f, Mpi_g, 0.0)});
    rep.entries.push_back({"[phi_n(f),pi_n(g)]" + tag,
                           protected_commutator_residual(fock, Mphi_f, Mpi_g, fock.projected_commutator(phi_f, pi_g, grid))});
    const Complex exact = i * weighted_inner(f, SymbolFunction::constant(1.0), g, grid);
    rep.entries.push_back({"[Phi(f),Pi(g)]" + tag, protected_commutator_residual(fock, Mcphi, Mcpi, exact)});

    // Fields map the vacuum into the one-particle sector only.
    double vac = 0.0;
    for (const auto* m : {&Mphi_f, &Mpi_f, &Mcphi}) {
      const Eigen::VectorXcd out = m->col(0);
      for (Eigen::Index s = 0; s < fock.dimension(); ++s)
        if (fock.total_occupation(s) != 1) vac = std::max(vac, std::abs(out[s]));
    }
    rep.entries.push_back({"vacuum_sector" + tag, vac});
  }
  return rep;
}

}  // namespace hqft
