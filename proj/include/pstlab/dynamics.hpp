#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pstlab/hamiltonian.hpp"

namespace pstlab {

using Complex = std::complex<double>;

// Eigenvalues in ascending order; column k of `vectors` belongs to values[k].
struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;

  int dim() const { return static_cast<int>(values.size()); }
};

Spectrum diagonalize(const Hamiltonian& h);

// <b| exp(-i H t) |a>, hbar = 1.
Complex transfer_amplitude(const Spectrum& spec, int a, int b, double t);

// exp(-i H t) psi via the spectral decomposition.
Eigen::VectorXcd evolve(const Spectrum& spec, const Eigen::VectorXcd& initial, double t);

// Full propagator exp(-i H t).
Eigen::MatrixXcd propagator(const Spectrum& spec, double t);

// Fidelity of alpha|0> + beta|1> against the received qubit, where beta_b is
// the amplitude arriving at B (the transported amplitude times beta).
double state_fidelity(Complex alpha, Complex beta, Complex beta_b);

// Precomputed spectral weights for repeated evaluation of f_ab(t).
class TransferKernel {
 public:
  TransferKernel(const Spectrum& spec, int a, int b);

  Complex operator()(double t) const;
  double magnitude(double t) const { return std::abs((*this)(t)); }

 private:
  std::vector<double> energies_;
  std::vector<Complex> weights_;
};

struct TransferPeak {
  double time = 0.0;
  double magnitude = 0.0;
  Complex amplitude;
};

// Samples per unit of t_max used when no explicit grid size is requested.
inline constexpr int kDefaultSamplesPerUnitTime = 2048;

int default_grid(double t_max);

// Coarse scan of |f_ab| on `grid` equally spaced samples of (0, t_max].
// Every sampled local maximum close enough to the largest sample that the true
// peak it straddles could be the global one is refined by golden section; the
// earliest refined peak within 1e-9 of the best refined value is returned.
TransferPeak find_transfer_peak(const Spectrum& spec, int a, int b, double t_max, int grid);
TransferPeak find_transfer_peak(const Spectrum& spec, int a, int b, double t_max);

struct FidelityTrace {
  std::vector<double> times;
  std::vector<Complex> amps;
  std::string label;
  int a = 0;
  int b = 0;
};

FidelityTrace sample_trace(const Spectrum& spec, int a, int b, std::span<const double> times, std::string label);
FidelityTrace sample_trace(const Spectrum& spec, int a, int b, double t_max, int samples, std::string label);

}  // namespace pstlab
