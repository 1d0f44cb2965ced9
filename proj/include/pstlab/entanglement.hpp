#pragma once

#include <optional>

#include <Eigen/Dense>

#include "pstlab/dynamics.hpp"
#include "pstlab/hamiltonian.hpp"

namespace pstlab {

// Chain state in vacuum (+) single-excitation space. Index 0 is the vacuum,
// index j (1..N_C) is the excitation on site j.
class ExcitationState {
 public:
  explicit ExcitationState(Eigen::VectorXcd amps);

  static ExcitationState site(int sites, int j);  // one-based site

  int sites() const { return static_cast<int>(amps_.size()) - 1; }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Complex vacuum() const { return amps_[0]; }

  // The vacuum has zero energy, so only the excitation block evolves.
  ExcitationState evolved(const Spectrum& spec, double t) const;

 private:
  Eigen::VectorXcd amps_;
};

// Vacuum (+) single-excitation propagator: 1 (+) exp(-i H t).
Eigen::MatrixXcd chain_propagator(const Spectrum& spec, double t);

// Density matrix of a qubit pair, basis |00>, |01>, |10>, |11> with the left
// qubit as the high bit.
class TwoQubitDensity {
 public:
  explicit TwoQubitDensity(Eigen::Matrix4cd rho);

  static TwoQubitDensity pure(const Eigen::Vector4cd& psi);

  const Eigen::Matrix4cd& matrix() const { return rho_; }

  // Hermitian, unit trace and positive semidefinite within tol.
  static bool is_valid(const Eigen::Matrix4cd& rho, double tol = 1e-10);

 private:
  Eigen::Matrix4cd rho_;
};

// Wootters concurrence.
double concurrence(const TwoQubitDensity& rho);

// Undo a known transport phase: entry (i j, i' j') picks up
// exp(-i (phi_left (i - i') + phi_right (j - j'))).
TwoQubitDensity correct_phases(const TwoQubitDensity& rho, double phi_left, double phi_right);

struct BellTransfer {
  ExcitationState final_state;
  Complex overlap;  // <target|final>
  double t0 = 0.0;
};

// Evolves (|1> + |2>)/sqrt(2) for the certified transfer time and overlaps it
// with (|N_C> + |N_C-1>)/sqrt(2). Throws kPrecondition when the end-to-end
// transfer cannot be certified within t_max.
BellTransfer bell_transfer(const Hamiltonian& h, double t_max);

// Same evolution for an explicit time, without certification.
BellTransfer bell_transfer_at(const Hamiltonian& h, double t);

// Non-interacting qubit entangled with site 1, (|0>|vac> + |1>|1>)/sqrt(2),
// evolved under 1 (x) H and reduced to (NI qubit, occupation of site N_C).
TwoQubitDensity distribute_entanglement(const Hamiltonian& h, double t);

// rho0 lives on (NI qubit, occupation of site 1). Returns the reduced state on
// (NI qubit, occupation of site N_C) after time t.
TwoQubitDensity density_matrix_split(const Hamiltonian& h, const TwoQubitDensity& rho0, double t);

// rho0 lives on (site 1 of chain 1, site 1 of chain 2); each chain evolves
// under its own Hamiltonian. Returns the state on the two final sites.
TwoQubitDensity parallel_chain_transfer(const Hamiltonian& h1, const Hamiltonian& h2, const TwoQubitDensity& rho0,
                                        double t);
TwoQubitDensity parallel_chain_transfer(const Hamiltonian& h, const TwoQubitDensity& rho0, double t);

// arg f_{1,N_C}(pi / lambda) for a mixed J_x/J_y chain. Throws
// kTransferBroken when the transfer is not perfect to 1e-9.
double phase_during_transfer(const Hamiltonian& mixed, double lambda);

// Phase expected from the rotation picture: the mixture is a rotation
// generator about an axis at angle theta in the xy plane (cos theta = gamma,
// sin theta = sign sqrt(1-gamma^2)), and the end-to-end amplitude at pi/lambda
// is (-i e^{i theta})^{N_C-1}.
double rotation_phase(int column_count, double gamma, int sign);

// Uniform field strength giving transport phase phi at time t0:
// B = (phi - (pi/2)(N_C - 1)) / t0.
double field_for_phase(double phi, int column_count, double t0);

// arg f_{1,N_C}(t0) for H shifted by a uniform field B.
double fielded_phase(const Hamiltonian& h, double field, double t0);

}  // namespace pstlab
