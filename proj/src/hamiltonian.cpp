#include "pstlab/hamiltonian.hpp"

#include <cmath>
#include <numeric>

#include "pstlab/exception.hpp"

namespace pstlab {

using cd = std::complex<double>;

std::string_view to_string(Family f) {
  switch (f) {
    case Family::kXyGraph: return "xy-graph";
    case Family::kEngineeredJx: return "engineered-jx";
    case Family::kJy: return "jy";
    case Family::kMixedPhase: return "mixed-phase";
    case Family::kHeisenbergField: return "heisenberg-field";
    case Family::kCustom: return "custom";
  }
  return "custom";
}

Hamiltonian::Hamiltonian(Eigen::MatrixXcd matrix, Family family) : matrix_(std::move(matrix)), family_(family) {
  if (matrix_.rows() != matrix_.cols()) throw Error(ErrorKind::kContractViolation, "Hamiltonian must be square");
  if (matrix_.rows() == 0) throw Error(ErrorKind::kInvalidSize, "empty Hamiltonian");
}

bool Hamiltonian::is_exactly_hermitian() const {
  const auto n = matrix_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      if (matrix_(i, j) != std::conj(matrix_(j, i))) return false;
    }
  }
  return true;
}

bool Hamiltonian::is_real() const { return (matrix_.imag().array() == 0.0).all(); }

Hamiltonian Hamiltonian::shifted(double shift) const {
  Eigen::MatrixXcd m = matrix_;
  m.diagonal().array() -= shift;
  return Hamiltonian(std::move(m), family_);
}

Hamiltonian from_graph(const Graph& g) {
  if (g.size() == 0) throw Error(ErrorKind::kInvalidSize, "empty graph");
  return Hamiltonian(g.adjacency().cast<cd>(), Family::kXyGraph);
}

Hamiltonian uniform_chain(int n) { return from_graph(path(n)); }

namespace {

void check_chain_args(int column_count, double lambda) {
  if (column_count < 2) throw Error(ErrorKind::kInvalidSize, "engineered chain needs at least two sites");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorKind::kDomain, "lambda must be positive");
}

}  // namespace

std::vector<double> engineered_couplings(int column_count, double lambda) {
  check_chain_args(column_count, lambda);
  std::vector<double> j(column_count - 1);
  for (int k = 1; k < column_count; ++k) {
    j[k - 1] = 0.5 * lambda * std::sqrt(static_cast<double>(k * (column_count - k)));
  }
  return j;
}

Hamiltonian chain_from_couplings(std::span<const double> couplings, Family family) {
  const int n = static_cast<int>(couplings.size()) + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    m(k, k + 1) = couplings[k];
    m(k + 1, k) = couplings[k];
  }
  return Hamiltonian(std::move(m), family);
}

Hamiltonian engineered_chain(int column_count, double lambda) {
  const auto j = engineered_couplings(column_count, lambda);
  return chain_from_couplings(j, Family::kEngineeredJx);
}

Hamiltonian jy_chain(int column_count, double lambda) {
  const auto j = engineered_couplings(column_count, lambda);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(column_count, column_count);
  for (int k = 0; k + 1 < column_count; ++k) {
    m(k, k + 1) = cd(0.0, -j[k]);
    m(k + 1, k) = cd(0.0, j[k]);
  }
  return Hamiltonian(std::move(m), Family::kJy);
}

Hamiltonian mixed_phase_chain(int column_count, double lambda, double gamma, int sign) {
  if (!(std::abs(gamma) <= 1.0)) throw Error(ErrorKind::kDomain, "|gamma| must not exceed 1");
  if (sign != 1 && sign != -1) throw Error(ErrorKind::kDomain, "sign must be +1 or -1");
  const auto j = engineered_couplings(column_count, lambda);
  const double y = sign * std::sqrt(1.0 - gamma * gamma);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(column_count, column_count);
  for (int k = 0; k + 1 < column_count; ++k) {
    m(k, k + 1) = cd(gamma * j[k], -y * j[k]);
    m(k + 1, k) = cd(gamma * j[k], y * j[k]);
  }
  return Hamiltonian(std::move(m), Family::kMixedPhase);
}

HeisenbergChain heisenberg_chain_with_field(std::span<const double> couplings) {
  const int n = static_cast<int>(couplings.size()) + 1;
  if (n < 3) throw Error(ErrorKind::kUnsupported, "field compensation needs at least three sites");
  const double total = std::accumulate(couplings.begin(), couplings.end(), 0.0);
  // one-based J_0 = J_{N_C} = 0
  auto coupling = [&](int j) { return (j >= 1 && j <= n - 1) ? couplings[j - 1] : 0.0; };

  HeisenbergChain out{{}, {}, 0.0, Hamiltonian(Eigen::MatrixXcd::Zero(n, n), Family::kHeisenbergField)};
  out.diagonal.resize(n);
  out.field.resize(n);
  for (int j = 1; j <= n; ++j) {
    out.diagonal[j - 1] = 0.5 * total - coupling(j - 1) - coupling(j);
    out.field[j - 1] = 0.5 * (coupling(j - 1) + coupling(j)) - total / (2.0 * (n - 2));
  }
  const double field_total = std::accumulate(out.field.begin(), out.field.end(), 0.0);
  out.vacuum_energy = 0.5 * total - field_total;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = out.diagonal[j] + 2.0 * out.field[j] - field_total;
  for (int k = 0; k + 1 < n; ++k) {
    m(k, k + 1) = couplings[k];
    m(k + 1, k) = couplings[k];
  }
  out.hamiltonian = Hamiltonian(std::move(m), Family::kHeisenbergField);
  return out;
}

}  // namespace pstlab
