#include "pstlab/entanglement.hpp"

#include <cmath>
#include <gtest/gtest.h>
#include <numbers>

#include "test_util.hpp"

using namespace pstlab;
using std::numbers::pi;

namespace {

Eigen::Vector4cd bell_phi_plus() {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
  return psi;
}

double max_diff(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(entanglement, excitation_state) {
  const auto s = ExcitationState::site(4, 1);
  EXPECT_EQ(s.sites(), 4);
  EXPECT_EQ(s.amps()[1], Complex(1.0));
  EXPECT_PSTLAB_ERROR(ExcitationState::site(4, 5), ErrorKind::kIndex);
  EXPECT_PSTLAB_ERROR(ExcitationState(Eigen::VectorXcd::Ones(3)), ErrorKind::kNormalization);

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(5);
  v[0] = v[2] = 1.0 / std::sqrt(2.0);
  const Spectrum spec = diagonalize(engineered_chain(4, 1.0));
  const auto out = ExcitationState(v).evolved(spec, 1.3);
  EXPECT_EQ(out.vacuum(), v[0]);
  EXPECT_NEAR(out.amps().norm(), 1.0, 1e-12);
  EXPECT_PSTLAB_ERROR(ExcitationState(v).evolved(diagonalize(engineered_chain(3, 1.0)), 1.0), ErrorKind::kIndex);

  const Eigen::MatrixXcd u = chain_propagator(spec, 0.7);
  EXPECT_EQ(u(0, 0), Complex(1.0));
  EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(entanglement, concurrence_examples) {
  EXPECT_NEAR(concurrence(TwoQubitDensity::pure(bell_phi_plus())), 1.0, 1e-10);
  Eigen::Vector4cd product = Eigen::Vector4cd::Zero();
  product[0] = 1.0;
  EXPECT_NEAR(concurrence(TwoQubitDensity::pure(product)), 0.0, 1e-10);
  EXPECT_NEAR(concurrence(TwoQubitDensity(Eigen::Matrix4cd::Identity() / 4.0)), 0.0, 1e-10);
  // Werner states: C = max(0, (3p - 1) / 2).
  const Eigen::Matrix4cd bell = bell_phi_plus() * bell_phi_plus().adjoint();
  for (double p : {0.1, 0.3, 0.5, 0.8, 1.0}) {
    const TwoQubitDensity w(p * bell + (1.0 - p) * Eigen::Matrix4cd::Identity() / 4.0);
    EXPECT_NEAR(concurrence(w), std::max(0.0, (3.0 * p - 1.0) / 2.0), 1e-9) << p;
  }
  // cos a |00> + sin a |11>: C = |sin 2a|.
  for (double a : {0.1, 0.4, 1.0}) {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi[0] = std::cos(a);
    psi[3] = Complex(0.0, std::sin(a));
    EXPECT_NEAR(concurrence(TwoQubitDensity::pure(psi)), std::abs(std::sin(2 * a)), 1e-9);
  }
  Eigen::Matrix4cd bad = Eigen::Matrix4cd::Identity();
  EXPECT_FALSE(TwoQubitDensity::is_valid(bad));
  EXPECT_PSTLAB_ERROR(TwoQubitDensity{bad}, ErrorKind::kContractViolation);
}

TEST(entanglement, bell_transfer) {
  for (int n = 3; n <= 8; ++n) {
    const auto r = bell_transfer(engineered_chain(n, 1.0), 5.0);
    EXPECT_NEAR(std::abs(r.overlap), 1.0, 1e-9) << n;
    EXPECT_NEAR(r.t0, pi, 1e-6);
  }
  EXPECT_PSTLAB_ERROR(bell_transfer(uniform_chain(4), 20.0), ErrorKind::kPrecondition);
  const Spectrum s4 = diagonalize(uniform_chain(4));
  const auto peak = find_transfer_peak(s4, 0, 3, 20.0);
  EXPECT_LT(std::abs(bell_transfer_at(uniform_chain(4), peak.time).overlap), 1.0 - 1e-3);
}

TEST(entanglement, distribution_tracks_transfer_amplitude) {
  for (int n : {2, 3, 5, 7}) {
    const Hamiltonian h = engineered_chain(n, 1.0);
    const Spectrum spec = diagonalize(h);
    EXPECT_NEAR(concurrence(distribute_entanglement(h, 0.0)), 0.0, 1e-9);
    EXPECT_NEAR(concurrence(distribute_entanglement(h, pi)), 1.0, 1e-9);
    EXPECT_NEAR(concurrence(distribute_entanglement(h, pi / 2)), std::pow(2.0, -(n - 1) / 2.0), 1e-9);
    for (double t : {0.3, 1.1, 2.9}) {
      EXPECT_NEAR(concurrence(distribute_entanglement(h, t)), std::abs(transfer_amplitude(spec, 0, n - 1, t)), 1e-9);
    }
  }
}

TEST(entanglement, split_examples) {
  const Hamiltonian h = engineered_chain(5, 1.0);
  const Spectrum spec = diagonalize(h);
  const double phase = std::arg(transfer_amplitude(spec, 0, 4, pi));
  auto gen = make_stream(21, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const TwoQubitDensity rho0(test::random_density(gen));
    const auto out = density_matrix_split(h, rho0, pi);
    EXPECT_LT(max_diff(correct_phases(out, 0.0, phase).matrix(), rho0.matrix()), 1e-9);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
  }
  // Bell input: concurrence equals |f|.
  const TwoQubitDensity bell = TwoQubitDensity::pure(bell_phi_plus());
  EXPECT_NEAR(concurrence(density_matrix_split(h, bell, 1.0)), std::abs(transfer_amplitude(spec, 0, 4, 1.0)), 1e-9);
  // Maximally mixed stays maximally mixed in the NI marginal.
  const auto mixed = density_matrix_split(h, TwoQubitDensity(Eigen::Matrix4cd::Identity() / 4.0), 0.8);
  EXPECT_NEAR((mixed.matrix()(0, 0) + mixed.matrix()(1, 1)).real(), 0.5, 1e-12);
}

TEST(entanglement, split_is_linear) {
  const Hamiltonian h = uniform_chain(4);
  auto gen = make_stream(22, 0);
  const Eigen::Matrix4cd r1 = test::random_density(gen);
  const Eigen::Matrix4cd r2 = test::random_density(gen);
  const double p = 0.35;
  const auto mix = density_matrix_split(h, TwoQubitDensity(p * r1 + (1 - p) * r2), 2.2).matrix();
  const auto sep = (p * density_matrix_split(h, TwoQubitDensity(r1), 2.2).matrix() +
                    (1 - p) * density_matrix_split(h, TwoQubitDensity(r2), 2.2).matrix())
                       .eval();
  EXPECT_LT(max_diff(mix, sep), 1e-12);
}

TEST(entanglement, correct_phases_round_trip) {
  auto gen = make_stream(23, 0);
  const TwoQubitDensity rho(test::random_density(gen));
  const auto back = correct_phases(correct_phases(rho, 0.4, -1.1), -0.4, 1.1);
  EXPECT_LT(max_diff(back.matrix(), rho.matrix()), 1e-12);
  const auto once = correct_phases(rho, 0.4, -1.1).matrix();
  // Entry (01, 10): i - i' = -1, j - j' = 1.
  EXPECT_LT(std::abs(once(1, 2) - rho.matrix()(1, 2) * std::polar(1.0, -(0.4 * -1.0 + -1.1 * 1.0))), 1e-12);
}

TEST(entanglement, parallel_chains) {
  const Hamiltonian h1 = engineered_chain(4, 1.0);
  const Hamiltonian h2 = mixed_phase_chain(4, 1.0, 0.3, 1);
  const double p1 = std::arg(transfer_amplitude(diagonalize(h1), 0, 3, pi));
  const double p2 = std::arg(transfer_amplitude(diagonalize(h2), 0, 3, pi));
  const TwoQubitDensity bell = TwoQubitDensity::pure(bell_phi_plus());
  const auto out = parallel_chain_transfer(h1, h2, bell, pi);
  EXPECT_LT(max_diff(correct_phases(out, p1, p2).matrix(), bell.matrix()), 1e-9);
  EXPECT_NEAR(concurrence(out), 1.0, 1e-9);

  // Product inputs stay products of the single-chain maps.
  Eigen::Vector4cd prod;
  const double c = std::cos(0.3), s = std::sin(0.3), c2 = std::cos(1.2), s2 = std::sin(1.2);
  prod << c * c2, c * s2, s * c2, s * s2;
  const auto outp = parallel_chain_transfer(h1, TwoQubitDensity::pure(prod), 1.7).matrix();
  const Complex f = transfer_amplitude(diagonalize(h1), 0, 3, 1.7);
  Eigen::Matrix2cd left, right;
  left << c * c + s * s * (1 - std::norm(f)), c * s * std::conj(f), c * s * f, s * s * std::norm(f);
  right << c2 * c2 + s2 * s2 * (1 - std::norm(f)), c2 * s2 * std::conj(f), c2 * s2 * f, s2 * s2 * std::norm(f);
  Eigen::Matrix4cd kron;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) kron(2 * i + k, 2 * j + l) = left(i, j) * right(k, l);
  EXPECT_LT(max_diff(outp, kron), 1e-12);

  EXPECT_PSTLAB_ERROR(parallel_chain_transfer(h1, engineered_chain(5, 1.0), bell, pi), ErrorKind::kConfiguration);
}

TEST(entanglement, transport_phase) {
  for (int n = 2; n <= 7; ++n) {
    for (double gamma : {-1.0, -0.4, 0.0, 0.5, 1.0}) {
      for (int sign : {-1, 1}) {
        const double got = phase_during_transfer(mixed_phase_chain(n, 2.0, gamma, sign), 2.0);
        EXPECT_LT(test::wrapped(got, rotation_phase(n, gamma, sign)), 1e-8) << n << " " << gamma << " " << sign;
      }
    }
  }
  // Two sites: tan phi = -s gamma / sqrt(1 - gamma^2).
  const double gamma = 0.6;
  const double phi = phase_during_transfer(mixed_phase_chain(2, 1.0, gamma, 1), 1.0);
  EXPECT_NEAR(std::sin(phi) * std::sqrt(1 - gamma * gamma) + gamma * std::cos(phi), 0.0, 1e-9);
  EXPECT_LT(test::wrapped(rotation_phase(3, 1.0, 1), pi), 1e-12);
  EXPECT_PSTLAB_ERROR(phase_during_transfer(uniform_chain(4), 1.0), ErrorKind::kTransferBroken);
  EXPECT_PSTLAB_ERROR(rotation_phase(3, 1.5, 1), ErrorKind::kDomain);
}

TEST(entanglement, field_sets_phase) {
  for (int n : {3, 5, 7}) {
    for (double phi : {-2.0, 0.0, 1.0, 3.0}) {
      const double t0 = pi / 2.0;
      const double b = field_for_phase(phi, n, t0);
      EXPECT_LT(test::wrapped(fielded_phase(engineered_chain(n, 2.0), b, t0), phi), 1e-8) << n << " " << phi;
    }
  }
  EXPECT_DOUBLE_EQ(field_for_phase(0.0, 5, pi / 2.0), -4.0);
  // Even chains land pi away from the requested phase.
  for (int n : {2, 4, 6}) {
    const double b = field_for_phase(0.5, n, pi);
    EXPECT_LT(test::wrapped(fielded_phase(engineered_chain(n, 1.0), b, pi), 0.5 + pi), 1e-8) << n;
  }
  EXPECT_PSTLAB_ERROR(field_for_phase(0.0, 3, 0.0), ErrorKind::kDomain);
}
