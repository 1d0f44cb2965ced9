#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Sparse>

namespace pstlab {

// Continuous-time symmetric random walk on the two-link hypercube {1,2,3}^d:
// unit-mean exponential holding times, uniform jumps to nearest neighbours,
// started at A = (1,...,1) and stopped at B = (3,...,3).

struct WalkEstimate {
  int d = 0;
  std::uint64_t samples = 0;
  double mean = 0.0;        // hitting time T
  double standard_error = 0.0;  // of `mean`
  double mean_jumps = 0.0;  // jump count N; E(T) = E(N)
  double analytic = 0.0;    // closed form 2d - 2 + 2/a_0
};

// Streaming mean/variance with an order-independent merge (Chan et al.).
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // unbiased
  double standard_error() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Samples are drawn in fixed batches with per-batch seed streams, so the
// result depends only on (d, samples, seed), not on the thread count.
WalkEstimate ctrw_hitting_mc(int d, std::uint64_t samples, std::uint64_t seed);

// Element a_{2k} of the stationary vector of the squared jump chain on the
// even sublattice: (d + 2k) / (2 d 3^{d-1}).
double jump_chain_stationary(int d, int k);

struct TwoStepCase {
  double multiplicity = 0.0;  // number of equivalent source points / jumps
  double probability = 0.0;   // two-step probability per source
};

// The five ways of arriving, in two jumps, at a fixed point with r = 2k
// coordinates equal to 2.
struct TwoStepWeights {
  int d = 0;
  int k = 0;
  TwoStepCase ret;            // step away and straight back
  TwoStepCase from_lower;     // from r = 2k - 2
  TwoStepCase from_upper;     // from r = 2k + 2
  TwoStepCase square;         // around two sides of a square, same r
  TwoStepCase chain;          // along a whole 1-2-3 chain, same r

  // Coefficients of a_{2k-2}, a_{2k+2} and a_{2k} in (a^T P^2)_x.
  double coeff_lower() const { return from_lower.multiplicity * from_lower.probability; }
  double coeff_upper() const { return from_upper.multiplicity * from_upper.probability; }
  double coeff_same() const;
};

TwoStepWeights two_step_transition_weights(int d, int k);

// 2d - 2 + 2/a_0(d) = 2d - 2 + 4 * 3^{d-1}.
double analytic_mean_hitting(int d);

// Row-stochastic jump-chain matrix on 3^d states. State index is
// sum_i x_i 3^{d-1-i} with x_i in {0,1,2}, so A = 0 and B = 3^d - 1.
Eigen::SparseMatrix<double, Eigen::RowMajor> jump_chain_matrix(int d);

// Exact mean hitting time of B from A by solving the first-passage equations
// over the full state space. Equal to the mean jump count since holding times
// have unit mean.
double exact_mean_hitting(int d);

inline constexpr int kMaxExactDimension = 7;

}  // namespace pstlab
