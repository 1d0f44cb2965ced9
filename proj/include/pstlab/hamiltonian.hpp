#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pstlab/graph.hpp"

namespace pstlab {

enum class Family {
  kXyGraph,         // XY coupling on a graph: the adjacency matrix
  kEngineeredJx,    // lambda * J_x of a spin (N_C-1)/2
  kJy,              // lambda * J_y, purely imaginary hopping
  kMixedPhase,      // gamma J_x +- sqrt(1-gamma^2) J_y
  kHeisenbergField, // Heisenberg chain plus compensating z field
  kCustom,
};

std::string_view to_string(Family f);

// Single-excitation Hamiltonian: an n x n Hermitian matrix in the basis
// |j> = excitation on site j. The vacuum (all spins down) is not part of the
// matrix and is taken to have energy zero.
class Hamiltonian {
 public:
  Hamiltonian(Eigen::MatrixXcd matrix, Family family);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Family family() const { return family_; }

  bool is_exactly_hermitian() const;
  bool is_real() const;

  // H - shift * I: a uniform z field of strength B lowers the single-excitation
  // energy by B relative to the vacuum, so field_shift(B) == shifted(B).
  Hamiltonian shifted(double shift) const;

 private:
  Eigen::MatrixXcd matrix_;
  Family family_;
};

Hamiltonian from_graph(const Graph& g);

// Uniform XY chain of n sites with unit couplings.
Hamiltonian uniform_chain(int n);

// Off-diagonal elements lambda/2 * sqrt(j (N_C - j)), j = 1..N_C-1.
std::vector<double> engineered_couplings(int column_count, double lambda);

Hamiltonian engineered_chain(int column_count, double lambda);
Hamiltonian jy_chain(int column_count, double lambda);
Hamiltonian mixed_phase_chain(int column_count, double lambda, double gamma, int sign);

// Real symmetric tridiagonal matrix with zero diagonal and the given
// off-diagonal couplings.
Hamiltonian chain_from_couplings(std::span<const double> couplings, Family family = Family::kCustom);

struct HeisenbergChain {
  std::vector<double> diagonal;  // D_j from the exchange term alone
  std::vector<double> field;     // B_j of the compensating sum_j B_j sigma^z_j
  double vacuum_energy = 0.0;    // energy of all-down state with the field
  Hamiltonian hamiltonian;       // single-excitation block, absolute energies
};

// Heisenberg chain 1/2 sum_j J_j sigma_j . sigma_{j+1} + sum_j B_j sigma^z_j.
// sigma^z is +1 on an excited (up) site. Requires at least three sites.
HeisenbergChain heisenberg_chain_with_field(std::span<const double> couplings);

}  // namespace pstlab
