#include "pstlab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "pstlab/exception.hpp"
#include "pstlab/parallel.hpp"

namespace pstlab {

namespace {

void check_index(const Spectrum& spec, int v) {
  if (v < 0 || v >= spec.dim()) {
    throw Error(ErrorKind::kIndex, "vertex " + std::to_string(v) + " out of range for dimension " +
                                       std::to_string(spec.dim()));
  }
}

}  // namespace

Spectrum diagonalize(const Hamiltonian& h) {
  const auto& m = h.matrix();
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorKind::kContractViolation, "Hamiltonian is not Hermitian");
  }
  Spectrum spec;
  if (h.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::kContractViolation, "eigensolver failed");
    spec.values = solver.eigenvalues();
    spec.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::kContractViolation, "eigensolver failed");
    spec.values = solver.eigenvalues();
    spec.vectors = solver.eigenvectors();
  }
  return spec;
}

Complex transfer_amplitude(const Spectrum& spec, int a, int b, double t) {
  check_index(spec, a);
  check_index(spec, b);
  Complex sum = 0.0;
  for (int k = 0; k < spec.dim(); ++k) {
    sum += spec.vectors(b, k) * std::conj(spec.vectors(a, k)) * std::polar(1.0, -spec.values[k] * t);
  }
  return sum;
}

Eigen::VectorXcd evolve(const Spectrum& spec, const Eigen::VectorXcd& initial, double t) {
  if (initial.size() != spec.dim()) throw Error(ErrorKind::kIndex, "state dimension mismatch");
  if (std::abs(initial.norm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::kNormalization, "initial state is not normalized");
  }
  Eigen::VectorXcd coeffs = spec.vectors.adjoint() * initial;
  for (int k = 0; k < spec.dim(); ++k) coeffs[k] *= std::polar(1.0, -spec.values[k] * t);
  return spec.vectors * coeffs;
}

Eigen::MatrixXcd propagator(const Spectrum& spec, double t) {
  Eigen::VectorXcd phases(spec.dim());
  for (int k = 0; k < spec.dim(); ++k) phases[k] = std::polar(1.0, -spec.values[k] * t);
  return spec.vectors * phases.asDiagonal() * spec.vectors.adjoint();
}

double state_fidelity(Complex alpha, Complex beta, Complex beta_b) {
  const double a2 = std::norm(alpha);
  if (std::abs(a2 + std::norm(beta) - 1.0) > 1e-10) {
    throw Error(ErrorKind::kNormalization, "|alpha|^2 + |beta|^2 must be 1");
  }
  const double inner =
      a2 * (1.0 - 2.0 * std::norm(beta_b) + 2.0 * (beta_b * std::conj(beta)).real()) + std::norm(beta_b);
  return std::sqrt(std::max(inner, 0.0));
}

TransferKernel::TransferKernel(const Spectrum& spec, int a, int b) {
  check_index(spec, a);
  check_index(spec, b);
  for (int k = 0; k < spec.dim(); ++k) {
    const Complex w = spec.vectors(b, k) * std::conj(spec.vectors(a, k));
    if (w == Complex(0.0)) continue;
    energies_.push_back(spec.values[k]);
    weights_.push_back(w);
  }
}

Complex TransferKernel::operator()(double t) const {
  Complex sum = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) sum += weights_[k] * std::polar(1.0, -energies_[k] * t);
  return sum;
}

int default_grid(double t_max) {
  return std::max(2, static_cast<int>(std::ceil(kDefaultSamplesPerUnitTime * t_max)));
}

namespace {

// Golden-section search for a maximum of f on [lo, hi].
template <typename F>
double golden_maximize(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TransferPeak find_transfer_peak(const Spectrum& spec, int a, int b, double t_max, int grid) {
  if (!(t_max > 0.0)) throw Error(ErrorKind::kDomain, "t_max must be positive");
  if (grid < 2) throw Error(ErrorKind::kDomain, "grid needs at least two samples");
  const TransferKernel kernel(spec, a, b);
  const double dt = t_max / grid;

  std::vector<double> mag(grid + 1);
  mag[0] = kernel.magnitude(0.0);
  constexpr std::size_t kChunk = 1 << 15;
  const std::size_t chunks = (static_cast<std::size_t>(grid) + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = 1 + c * kChunk;
    const std::size_t end = std::min<std::size_t>(grid + 1, begin + kChunk);
    for (std::size_t k = begin; k < end; ++k) mag[k] = kernel.magnitude(dt * static_cast<double>(k));
  });

  const double best = *std::max_element(mag.begin() + 1, mag.end());
  // A sample can sit up to M h^2 / 2 below the peak it straddles, with M a
  // curvature bound for |f| near its maxima (spread^2 covers |f| >= 1/2).
  const double spread = spec.dim() > 0 ? spec.values.maxCoeff() - spec.values.minCoeff() : 0.0;
  const double slack = 0.5 * spread * spread * dt * dt + 1e-9;

  std::vector<int> candidates;
  for (int k = 1; k <= grid; ++k) {
    if (mag[k] < best - slack) continue;
    const bool rises = mag[k] > mag[k - 1];
    const bool holds = k == grid || mag[k] >= mag[k + 1];
    if (rises && holds) candidates.push_back(k);
  }
  if (candidates.empty()) {
    int k = 1;
    while (mag[k] < best - slack) ++k;
    candidates.push_back(k);
  }

  std::vector<double> times(candidates.size());
  std::vector<double> values(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const int k = candidates[c];
    const double lo = dt * (k - 1);
    const double hi = dt * std::min(k + 1, grid);
    const double t_ref = golden_maximize([&](double t) { return kernel.magnitude(t); }, lo, hi);
    const double m_ref = kernel.magnitude(t_ref);
    times[c] = m_ref >= mag[k] ? t_ref : dt * k;
    values[c] = std::max(m_ref, mag[k]);
  }
  const double best_refined = *std::max_element(values.begin(), values.end());
  std::size_t pick = 0;
  while (values[pick] < best_refined - 1e-9) ++pick;

  TransferPeak peak;
  peak.time = times[pick];
  peak.amplitude = kernel(peak.time);
  peak.magnitude = std::abs(peak.amplitude);
  return peak;
}

TransferPeak find_transfer_peak(const Spectrum& spec, int a, int b, double t_max) {
  return find_transfer_peak(spec, a, b, t_max, default_grid(t_max));
}

FidelityTrace sample_trace(const Spectrum& spec, int a, int b, std::span<const double> times, std::string label) {
  const TransferKernel kernel(spec, a, b);
  FidelityTrace trace;
  trace.times.assign(times.begin(), times.end());
  trace.amps.reserve(times.size());
  for (double t : times) trace.amps.push_back(kernel(t));
  trace.label = std::move(label);
  trace.a = a;
  trace.b = b;
  return trace;
}

FidelityTrace sample_trace(const Spectrum& spec, int a, int b, double t_max, int samples, std::string label) {
  if (samples < 2) throw Error(ErrorKind::kDomain, "trace needs at least two samples");
  std::vector<double> times(samples);
  for (int k = 0; k < samples; ++k) times[k] = t_max * k / (samples - 1);
  return sample_trace(spec, a, b, times, std::move(label));
}

}  // namespace pstlab
