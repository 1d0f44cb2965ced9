#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pstlab/dynamics.hpp"

namespace pstlab::errors {

// Largest coupling of the engineered chain, found at the middle bond
// j = floor(N_C / 2): lambda/2 * sqrt(j (N_C - j)).
double max_coupling(int column_count, double lambda);

struct CouplingBudget {
  double lambda = 0.0;  // largest lambda keeping max_coupling <= budget
  double t0 = 0.0;      // resulting transfer time pi / lambda
};

CouplingBudget lambda_for_budget(int column_count, double budget);

struct ScanPoint {
  double parameter = 0.0;
  double exact = 0.0;
  double approx = 0.0;
};

struct ErrorScan {
  std::vector<ScanPoint> points;
};

// |f_AB(t0 - dt)| for each dt, alongside 1 - pi^2 (N_C - 1) / 8 * (dt / t0)^2.
ErrorScan timing_error_scan(int column_count, double lambda, std::span<const double> deltas);

struct DisorderResult {
  double worst = 0.0;              // max |1 - f_AA| over shift patterns in {-delta, +delta}
  std::vector<double> worst_shifts;
  double linear_estimate = 0.0;    // 2 t0 delta
  std::vector<double> samples;     // |1 - f_AA| for uniform shifts in [-delta, delta]
  bool outside_small_regime = false;  // t0 * delta > 0.1
};

inline constexpr int kExhaustiveSignPatterns = 12;

// Eigenvalue-only disorder: f_AA = sum_i |a_i|^2 exp(-2 i t0 (E_i' - E_i)),
// with a_i = <i|A> taken from the exact eigenvectors.
DisorderResult disorder_error(const Spectrum& spec, int a, double t0, double delta, int trials, std::uint64_t seed);

// |1 - f_AA| for one explicit shift pattern.
double return_error(const Spectrum& spec, int a, double t0, std::span<const double> shifts);

}  // namespace pstlab::errors
