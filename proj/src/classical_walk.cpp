#include "pstlab/classical_walk.hpp"

#include <cmath>

#include <Eigen/SparseLU>

#include "pstlab/exception.hpp"
#include "pstlab/parallel.hpp"
#include "pstlab/rng.hpp"

namespace pstlab {

void RunningStats::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double total = static_cast<double>(n_ + other.n_);
  const double delta = other.mean_ - mean_;
  mean_ += delta * static_cast<double>(other.n_) / total;
  m2_ += other.m2_ + delta * delta * static_cast<double>(n_) * static_cast<double>(other.n_) / total;
  n_ += other.n_;
}

double RunningStats::variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

double RunningStats::standard_error() const {
  return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

namespace {

void check_dimension(int d) {
  if (d < 1) throw Error(ErrorKind::kDomain, "dimension must be positive");
}

void check_level(int d, int k) {
  check_dimension(d);
  if (k < 0 || 2 * k > d) throw Error(ErrorKind::kDomain, "need 0 <= 2k <= d");
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct WalkSample {
  double time;
  std::uint64_t jumps;
};

// Coordinates take values 0, 1, 2 (the chain vertices 1, 2, 3).
WalkSample walk_once(int d, std::mt19937_64& gen, std::vector<int>& x) {
  x.assign(d, 0);
  int middle = 0;  // coordinates equal to 1 (the chain centre)
  int at_far_end = 0;
  WalkSample s{0.0, 0};
  while (at_far_end != d) {
    s.time += unit_exponential(gen);
    ++s.jumps;
    // Each coordinate at an end has one move; each centre coordinate has two.
    auto pick = static_cast<int>(uniform_index(gen, static_cast<std::uint64_t>(d + middle)));
    for (int i = 0; i < d; ++i) {
      const int moves = x[i] == 1 ? 2 : 1;
      if (pick >= moves) {
        pick -= moves;
        continue;
      }
      if (x[i] == 1) {
        x[i] = pick == 0 ? 0 : 2;
        --middle;
        if (x[i] == 2) ++at_far_end;
      } else {
        if (x[i] == 2) --at_far_end;
        x[i] = 1;
        ++middle;
      }
      break;
    }
  }
  return s;
}

}  // namespace

WalkEstimate ctrw_hitting_mc(int d, std::uint64_t samples, std::uint64_t seed) {
  check_dimension(d);
  if (samples < 1) throw Error(ErrorKind::kDomain, "need at least one sample");
  constexpr std::uint64_t kBatch = 1024;
  const std::uint64_t batches = (samples + kBatch - 1) / kBatch;
  std::vector<RunningStats> times(batches);
  std::vector<RunningStats> jumps(batches);
  parallel_for(batches, [&](std::size_t b) {
    auto gen = make_stream(seed, b);
    std::vector<int> x;
    const std::uint64_t begin = b * kBatch;
    const std::uint64_t end = std::min(samples, begin + kBatch);
    for (std::uint64_t s = begin; s < end; ++s) {
      const auto w = walk_once(d, gen, x);
      times[b].add(w.time);
      jumps[b].add(static_cast<double>(w.jumps));
    }
  });
  RunningStats t_all;
  RunningStats n_all;
  for (std::uint64_t b = 0; b < batches; ++b) {
    t_all.merge(times[b]);
    n_all.merge(jumps[b]);
  }
  WalkEstimate est;
  est.d = d;
  est.samples = samples;
  est.mean = t_all.mean();
  est.standard_error = t_all.standard_error();
  est.mean_jumps = n_all.mean();
  est.analytic = analytic_mean_hitting(d);
  return est;
}

double jump_chain_stationary(int d, int k) {
  check_level(d, k);
  return (d + 2.0 * k) / (2.0 * d * std::pow(3.0, d - 1));
}

double TwoStepWeights::coeff_same() const {
  return ret.multiplicity * ret.probability + square.multiplicity * square.probability +
         chain.multiplicity * chain.probability;
}

TwoStepWeights two_step_transition_weights(int d, int k) {
  check_level(d, k);
  const double dd = d;
  const double r = 2.0 * k;
  TwoStepWeights w;
  w.d = d;
  w.k = k;
  w.ret.multiplicity = 1.0;
  // At k = 0 the 4k / (d + 2k - 1) term vanishes; guard the d = 1 denominator.
  const double down_return = k > 0 ? 4.0 * k / (dd + r - 1.0) : 0.0;
  w.ret.probability = (1.0 / (dd + r)) * ((dd - r) / (dd + r + 1.0) + down_return);

  w.from_lower.multiplicity = 4.0 * binom(2 * k, 2);
  w.from_lower.probability = k > 0 ? 2.0 / ((dd + r - 2.0) * (dd + r - 1.0)) : 0.0;

  w.from_upper.multiplicity = binom(d - 2 * k, 2);
  w.from_upper.probability = 2.0 / ((dd + r + 2.0) * (dd + r + 1.0));

  w.square.multiplicity = 4.0 * k * (dd - r);
  w.square.probability = k > 0 ? (1.0 / (dd + r)) * (1.0 / (dd + r + 1.0) + 1.0 / (dd + r - 1.0)) : 0.0;

  w.chain.multiplicity = dd - r;
  w.chain.probability = 1.0 / ((dd + r) * (dd + r + 1.0));
  return w;
}

double analytic_mean_hitting(int d) {
  check_dimension(d);
  return 2.0 * d - 2.0 + 4.0 * std::pow(3.0, d - 1);
}

Eigen::SparseMatrix<double, Eigen::RowMajor> jump_chain_matrix(int d) {
  check_dimension(d);
  if (d > kMaxExactDimension) throw Error(ErrorKind::kUnsupported, "state space too large for explicit matrix");
  int states = 1;
  for (int i = 0; i < d; ++i) states *= 3;
  std::vector<Eigen::Triplet<double>> entries;
  std::vector<int> digits(d);
  for (int s = 0; s < states; ++s) {
    int rest = s;
    for (int i = d - 1; i >= 0; --i) {
      digits[i] = rest % 3;
      rest /= 3;
    }
    int degree = 0;
    for (int i = 0; i < d; ++i) degree += digits[i] == 1 ? 2 : 1;
    int place = 1;
    for (int i = d - 1; i >= 0; --i) {
      if (digits[i] != 0) entries.emplace_back(s, s - place, 1.0 / degree);
      if (digits[i] != 2) entries.emplace_back(s, s + place, 1.0 / degree);
      place *= 3;
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> p(states, states);
  p.setFromTriplets(entries.begin(), entries.end());
  return p;
}

double exact_mean_hitting(int d) {
  const auto p = jump_chain_matrix(d);
  const int n = static_cast<int>(p.rows());
  const int target = n - 1;
  // (I - Q) h = 1 on transient states 0..n-2.
  std::vector<Eigen::Triplet<double>> entries;
  for (int s = 0; s < target; ++s) {
    entries.emplace_back(s, s, 1.0);
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(p, s); it; ++it) {
      if (it.col() != target) entries.emplace_back(s, static_cast<int>(it.col()), -it.value());
    }
  }
  Eigen::SparseMatrix<double> system(target, target);
  system.setFromTriplets(entries.begin(), entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(system);
  if (lu.info() != Eigen::Success) throw Error(ErrorKind::kContractViolation, "first-passage system is singular");
  const Eigen::VectorXd h = lu.solve(Eigen::VectorXd::Ones(target));
  return h[0];
}

}  // namespace pstlab
