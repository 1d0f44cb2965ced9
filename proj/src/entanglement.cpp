#include "pstlab/entanglement.hpp"

#include <cmath>
#include <numbers>

#include "pstlab/exception.hpp"
#include "pstlab/pst.hpp"

namespace pstlab {

ExcitationState::ExcitationState(Eigen::VectorXcd amps) : amps_(std::move(amps)) {
  if (amps_.size() < 2) throw Error(ErrorKind::kInvalidSize, "state needs at least one site");
  if (std::abs(amps_.norm() - 1.0) > 1e-10) throw Error(ErrorKind::kNormalization, "state is not normalized");
}

ExcitationState ExcitationState::site(int sites, int j) {
  if (j < 1 || j > sites) throw Error(ErrorKind::kIndex, "site out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sites + 1);
  v[j] = 1.0;
  return ExcitationState(std::move(v));
}

Eigen::MatrixXcd chain_propagator(const Spectrum& spec, double t) {
  const int n = spec.dim();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  u(0, 0) = 1.0;
  u.bottomRightCorner(n, n) = propagator(spec, t);
  return u;
}

ExcitationState ExcitationState::evolved(const Spectrum& spec, double t) const {
  if (spec.dim() != sites()) throw Error(ErrorKind::kIndex, "state and Hamiltonian sizes differ");
  return ExcitationState(chain_propagator(spec, t) * amps_);
}

TwoQubitDensity::TwoQubitDensity(Eigen::Matrix4cd rho) : rho_(std::move(rho)) {
  if (!is_valid(rho_)) throw Error(ErrorKind::kContractViolation, "not a valid two-qubit density matrix");
}

TwoQubitDensity TwoQubitDensity::pure(const Eigen::Vector4cd& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw Error(ErrorKind::kNormalization, "pure state is not normalized");
  return TwoQubitDensity(psi * psi.adjoint());
}

bool TwoQubitDensity::is_valid(const Eigen::Matrix4cd& rho, double tol) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > tol) return false;
  const Eigen::Matrix4cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

double concurrence(const TwoQubitDensity& rho) {
  // rho = X X^dagger, lambda_i are the singular values of X^T (sy (x) sy) X.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(0.5 * (rho.matrix() + rho.matrix().adjoint()));
  Eigen::Matrix4cd x = solver.eigenvectors();
  for (int k = 0; k < 4; ++k) x.col(k) *= std::sqrt(std::max(solver.eigenvalues()[k], 0.0));
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Eigen::Matrix4cd tau = x.transpose() * flip * x;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  const auto s = svd.singularValues();  // descending
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

TwoQubitDensity correct_phases(const TwoQubitDensity& rho, double phi_left, double phi_right) {
  Eigen::Matrix4cd out = rho.matrix();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const int di = (r >> 1) - (c >> 1);
      const int dj = (r & 1) - (c & 1);
      out(r, c) *= std::polar(1.0, -(phi_left * di + phi_right * dj));
    }
  }
  return TwoQubitDensity(out);
}

namespace {

// A factor of a composite register and how its basis states split into the
// kept qubit occupation and a label for everything that is traced out.
struct Factor {
  int dim;
  int (*occupation)(int index, int dim);
  int (*environment)(int index, int dim);
};

int qubit_occupation(int index, int) { return index; }
int qubit_environment(int, int) { return 0; }
// Chain factor: index 0 vacuum, last index the final site; keep the final site.
int chain_occupation(int index, int dim) { return index == dim - 1 ? 1 : 0; }
int chain_environment(int index, int dim) { return (index == 0 || index == dim - 1) ? 0 : index; }

constexpr Factor qubit_factor() { return {2, qubit_occupation, qubit_environment}; }
Factor chain_factor(int sites) { return {sites + 1, chain_occupation, chain_environment}; }

// Embeds a logical two-qubit state where each logical |1> maps to index 1 of
// its factor (the NI qubit's |1>, or site 1 of a chain).
Eigen::MatrixXcd embed(const TwoQubitDensity& rho0, const Factor& left, const Factor& right) {
  const int dim = left.dim * right.dim;
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const int pr = (r >> 1) * right.dim + (r & 1);
      const int pc = (c >> 1) * right.dim + (c & 1);
      full(pr, pc) = rho0.matrix()(r, c);
    }
  }
  return full;
}

Eigen::Matrix4cd reduce(const Eigen::MatrixXcd& full, const Factor& left, const Factor& right) {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  const int dim = left.dim * right.dim;
  for (int p = 0; p < dim; ++p) {
    const int lp = p / right.dim, rp = p % right.dim;
    for (int q = 0; q < dim; ++q) {
      const int lq = q / right.dim, rq = q % right.dim;
      if (left.environment(lp, left.dim) != left.environment(lq, left.dim)) continue;
      if (right.environment(rp, right.dim) != right.environment(rq, right.dim)) continue;
      const int row = 2 * left.occupation(lp, left.dim) + right.occupation(rp, right.dim);
      const int col = 2 * left.occupation(lq, left.dim) + right.occupation(rq, right.dim);
      out(row, col) += full(p, q);
    }
  }
  return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

}  // namespace

BellTransfer bell_transfer_at(const Hamiltonian& h, double t) {
  const int n = h.dim();
  if (n < 2) throw Error(ErrorKind::kInvalidSize, "Bell transfer needs at least two sites");
  const Spectrum spec = diagonalize(h);
  Eigen::VectorXcd start = Eigen::VectorXcd::Zero(n + 1);
  start[1] = start[2] = 1.0 / std::numbers::sqrt2;
  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(n + 1);
  target[n] = target[n - 1] = 1.0 / std::numbers::sqrt2;
  ExcitationState final_state = ExcitationState(start).evolved(spec, t);
  const Complex overlap = target.dot(final_state.amps());  // conjugates target
  return {std::move(final_state), overlap, t};
}

BellTransfer bell_transfer(const Hamiltonian& h, double t_max) {
  const auto cert = pst_certificate(h, 0, h.dim() - 1, t_max);
  if (cert.verdict != Verdict::kPerfect) {
    throw Error(ErrorKind::kPrecondition, "end-to-end transfer is not certified perfect within t_max");
  }
  return bell_transfer_at(h, cert.t0);
}

TwoQubitDensity density_matrix_split(const Hamiltonian& h, const TwoQubitDensity& rho0, double t) {
  const Spectrum spec = diagonalize(h);
  const Factor ni = qubit_factor();
  const Factor chain = chain_factor(h.dim());
  const Eigen::MatrixXcd u = kron(Eigen::MatrixXcd::Identity(2, 2), chain_propagator(spec, t));
  const Eigen::MatrixXcd full = u * embed(rho0, ni, chain) * u.adjoint();
  return TwoQubitDensity(reduce(full, ni, chain));
}

TwoQubitDensity distribute_entanglement(const Hamiltonian& h, double t) {
  Eigen::Vector4cd bell = Eigen::Vector4cd::Zero();
  bell[0] = bell[3] = 1.0 / std::numbers::sqrt2;
  return density_matrix_split(h, TwoQubitDensity::pure(bell), t);
}

TwoQubitDensity parallel_chain_transfer(const Hamiltonian& h1, const Hamiltonian& h2, const TwoQubitDensity& rho0,
                                        double t) {
  if (h1.dim() != h2.dim()) throw Error(ErrorKind::kConfiguration, "parallel chains must have equal length");
  const Factor c1 = chain_factor(h1.dim());
  const Factor c2 = chain_factor(h2.dim());
  // Independent chains: the joint propagator is the product of the two.
  const Eigen::MatrixXcd u = kron(chain_propagator(diagonalize(h1), t), chain_propagator(diagonalize(h2), t));
  const Eigen::MatrixXcd full = u * embed(rho0, c1, c2) * u.adjoint();
  return TwoQubitDensity(reduce(full, c1, c2));
}

TwoQubitDensity parallel_chain_transfer(const Hamiltonian& h, const TwoQubitDensity& rho0, double t) {
  return parallel_chain_transfer(h, h, rho0, t);
}

double phase_during_transfer(const Hamiltonian& mixed, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::kDomain, "lambda must be positive");
  const Spectrum spec = diagonalize(mixed);
  const Complex f = transfer_amplitude(spec, 0, mixed.dim() - 1, std::numbers::pi / lambda);
  if (std::abs(f) < 1.0 - 1e-9) {
    throw Error(ErrorKind::kTransferBroken, "mixture does not transfer perfectly, |f| = " + std::to_string(std::abs(f)));
  }
  return std::arg(f);
}

double rotation_phase(int column_count, double gamma, int sign) {
  if (!(std::abs(gamma) <= 1.0)) throw Error(ErrorKind::kDomain, "|gamma| must not exceed 1");
  const double theta = std::atan2(sign * std::sqrt(1.0 - gamma * gamma), gamma);
  const double phase = (column_count - 1) * (theta - std::numbers::pi / 2);
  return std::arg(std::polar(1.0, phase));
}

double field_for_phase(double phi, int column_count, double t0) {
  if (!(t0 > 0.0)) throw Error(ErrorKind::kDomain, "t0 must be positive");
  return (phi - std::numbers::pi / 2 * (column_count - 1)) / t0;
}

double fielded_phase(const Hamiltonian& h, double field, double t0) {
  const Spectrum spec = diagonalize(h.shifted(field));
  return std::arg(transfer_amplitude(spec, 0, h.dim() - 1, t0));
}

}  // namespace pstlab
