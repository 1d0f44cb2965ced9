#include "pstlab/errors.hpp"

#include <cmath>
#include <numbers>

#include "pstlab/exception.hpp"
#include "pstlab/hamiltonian.hpp"
#include "pstlab/rng.hpp"

namespace pstlab::errors {

double max_coupling(int column_count, double lambda) {
  if (column_count < 2) throw Error(ErrorKind::kInvalidSize, "chain needs at least two sites");
  const int mid = column_count / 2;
  return 0.5 * lambda * std::sqrt(static_cast<double>(mid * (column_count - mid)));
}

CouplingBudget lambda_for_budget(int column_count, double budget) {
  if (!(budget > 0.0)) throw Error(ErrorKind::kDomain, "budget must be positive");
  CouplingBudget out;
  out.lambda = budget / max_coupling(column_count, 1.0);
  out.t0 = std::numbers::pi / out.lambda;
  return out;
}

ErrorScan timing_error_scan(int column_count, double lambda, std::span<const double> deltas) {
  const Spectrum spec = diagonalize(engineered_chain(column_count, lambda));
  const TransferKernel kernel(spec, 0, column_count - 1);
  const double t0 = std::numbers::pi / lambda;
  ErrorScan scan;
  for (double dt : deltas) {
    if (!(dt >= 0.0) || dt >= t0) throw Error(ErrorKind::kDomain, "timing offset must lie in [0, t0)");
    const double x = dt / t0;
    ScanPoint p;
    p.parameter = dt;
    p.exact = kernel.magnitude(t0 - dt);
    p.approx = 1.0 - std::numbers::pi * std::numbers::pi * (column_count - 1) / 8.0 * x * x;
    scan.points.push_back(p);
  }
  return scan;
}

double return_error(const Spectrum& spec, int a, double t0, std::span<const double> shifts) {
  if (static_cast<int>(shifts.size()) != spec.dim()) throw Error(ErrorKind::kIndex, "one shift per eigenvalue");
  Complex f = 0.0;
  for (int i = 0; i < spec.dim(); ++i) f += std::norm(spec.vectors(a, i)) * std::polar(1.0, -2.0 * t0 * shifts[i]);
  return std::abs(1.0 - f);
}

DisorderResult disorder_error(const Spectrum& spec, int a, double t0, double delta, int trials, std::uint64_t seed) {
  if (a < 0 || a >= spec.dim()) throw Error(ErrorKind::kIndex, "vertex out of range");
  if (!(delta >= 0.0)) throw Error(ErrorKind::kDomain, "delta must be non-negative");
  const int n = spec.dim();
  DisorderResult out;
  out.linear_estimate = 2.0 * t0 * delta;
  out.outside_small_regime = t0 * delta > 0.1;

  std::vector<double> shifts(n);
  if (n <= kExhaustiveSignPatterns) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      for (int i = 0; i < n; ++i) shifts[i] = (mask >> i & 1u) ? delta : -delta;
      const double e = return_error(spec, a, t0, shifts);
      if (e > out.worst) {
        out.worst = e;
        out.worst_shifts = shifts;
      }
    }
  } else {
    // |1 - f|^2 = (1 - cos 2t0d)^2 + sin^2(2t0d) (sum_i w_i s_i)^2 over signs
    // s_i, so a common sign maximizes the error.
    shifts.assign(n, delta);
    out.worst = return_error(spec, a, t0, shifts);
    out.worst_shifts = shifts;
  }
  if (out.worst_shifts.empty()) out.worst_shifts.assign(n, delta);

  auto gen = make_stream(seed, 0);
  out.samples.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < n; ++i) shifts[i] = delta * (2.0 * uniform01(gen) - 1.0);
    out.samples.push_back(return_error(spec, a, t0, shifts));
  }
  return out;
}

}  // namespace pstlab::errors
