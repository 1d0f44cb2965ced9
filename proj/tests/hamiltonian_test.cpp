#include "pstlab/hamiltonian.hpp"

#include <cmath>
#include <gtest/gtest.h>
#include <numbers>

#include "pstlab/dynamics.hpp"
#include "test_util.hpp"

using namespace pstlab;

namespace {

bool exactly_hermitian(const Hamiltonian& h) {
  return (h.matrix() - h.matrix().adjoint()).cwiseAbs().maxCoeff() == 0.0 && h.is_exactly_hermitian();
}

}  // namespace

TEST(hamiltonian, from_graph_path) {
  const Hamiltonian h = from_graph(path(2));
  Eigen::MatrixXcd expected(2, 2);
  expected << 0.0, 1.0, 1.0, 0.0;
  EXPECT_EQ(h.matrix(), expected);
  EXPECT_EQ(h.family(), Family::kXyGraph);
  EXPECT_TRUE(h.is_real());

  const auto values = diagonalize(from_graph(path(3))).values;
  EXPECT_NEAR(values[0], -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(values[1], 0.0, 1e-12);
  EXPECT_NEAR(values[2], std::sqrt(2.0), 1e-12);
}

TEST(hamiltonian, path_eigenpairs_closed_form) {
  for (int n = 2; n <= 9; ++n) {
    const Spectrum spec = diagonalize(from_graph(path(n)));
    for (int k = 1; k <= n; ++k) {
      // Ascending order puts E = -2 cos(k pi / (n + 1)) at index k - 1, with a
      // sign-alternating sine mode.
      EXPECT_NEAR(spec.values[k - 1], -2.0 * std::cos(k * std::numbers::pi / (n + 1)), 1e-10);
      Eigen::VectorXd v(n);
      for (int j = 1; j <= n; ++j) v[j - 1] = (j % 2 ? -1.0 : 1.0) * std::sin(std::numbers::pi * k * j / (n + 1));
      v.normalize();
      const Complex overlap = v.cast<Complex>().dot(spec.vectors.col(k - 1));
      EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10);
    }
  }
}

TEST(hamiltonian, uniform_chain_matches_path) {
  EXPECT_EQ(uniform_chain(5).matrix(), from_graph(path(5)).matrix());
}

TEST(hamiltonian, engineered_chain_examples) {
  const Hamiltonian two = engineered_chain(2, 2.0);
  EXPECT_EQ(two.matrix(), uniform_chain(2).matrix());

  const Hamiltonian five = engineered_chain(5, 2.0);
  const double expected[] = {2.0, std::sqrt(6.0), std::sqrt(6.0), 2.0};
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(five.matrix()(j, j + 1).real(), expected[j], 1e-15);
    EXPECT_EQ(five.matrix()(j, j + 1), five.matrix()(j + 1, j));
  }
  EXPECT_EQ(five.family(), Family::kEngineeredJx);

  const auto values = diagonalize(engineered_chain(4, 1.0)).values;
  const double spin[] = {-1.5, -0.5, 0.5, 1.5};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(values[k], spin[k], 1e-12);

  EXPECT_PSTLAB_ERROR(engineered_chain(1, 1.0), ErrorKind::kInvalidSize);
  EXPECT_PSTLAB_ERROR(engineered_chain(3, 0.0), ErrorKind::kDomain);
}

TEST(hamiltonian, engineered_spectrum_is_arithmetic) {
  for (double lambda : {0.5, 1.0, 2.0, 3.7}) {
    for (int n = 2; n <= 12; ++n) {
      const auto values = diagonalize(engineered_chain(n, lambda)).values;
      for (int k = 0; k < n; ++k) EXPECT_NEAR(values[k], lambda * (k - (n - 1) / 2.0), 1e-10);
    }
  }
}

TEST(hamiltonian, jy_chain) {
  const Hamiltonian h = jy_chain(2, 3.0);
  EXPECT_EQ(h.matrix()(0, 1), Complex(0.0, -1.5));
  EXPECT_EQ(h.matrix()(1, 0), Complex(0.0, 1.5));
  EXPECT_EQ(h.family(), Family::kJy);
  EXPECT_FALSE(h.is_real());
  for (int n = 2; n <= 9; ++n) {
    const auto a = diagonalize(jy_chain(n, 1.3)).values;
    const auto b = diagonalize(engineered_chain(n, 1.3)).values;
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(jy_chain(n, 1.3).matrix().real().cwiseAbs().maxCoeff(), 1e-300);
    // No -i factor: the end-to-end amplitude at pi/lambda is exactly 1.
    const Complex f = transfer_amplitude(diagonalize(jy_chain(n, 1.3)), 0, n - 1, std::numbers::pi / 1.3);
    EXPECT_NEAR(std::abs(f - 1.0), 0.0, 1e-9);
  }
}

TEST(hamiltonian, mixed_phase_chain_limits) {
  for (int n = 2; n <= 6; ++n) {
    EXPECT_LT((mixed_phase_chain(n, 1.0, 0.0, 1).matrix() - jy_chain(n, 1.0).matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((mixed_phase_chain(n, 1.0, 0.0, -1).matrix() + jy_chain(n, 1.0).matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(mixed_phase_chain(n, 1.0, 1.0, 1).matrix(), engineered_chain(n, 1.0).matrix());
    EXPECT_EQ(mixed_phase_chain(n, 1.0, -1.0, 1).matrix(), (-engineered_chain(n, 1.0).matrix()).eval());
  }
  EXPECT_PSTLAB_ERROR(mixed_phase_chain(3, 1.0, 1.5, 1), ErrorKind::kDomain);
  EXPECT_PSTLAB_ERROR(mixed_phase_chain(3, 1.0, 0.5, 0), ErrorKind::kDomain);
}

TEST(hamiltonian, constructors_are_exactly_hermitian) {
  EXPECT_TRUE(exactly_hermitian(from_graph(hypercube(2, 2))));
  EXPECT_TRUE(exactly_hermitian(engineered_chain(7, 1.7)));
  EXPECT_TRUE(exactly_hermitian(jy_chain(7, 1.7)));
  EXPECT_TRUE(exactly_hermitian(mixed_phase_chain(7, 1.7, 0.3, -1)));
  EXPECT_TRUE(exactly_hermitian(heisenberg_chain_with_field(engineered_couplings(6, 1.0)).hamiltonian));
  EXPECT_PSTLAB_ERROR(Hamiltonian(Eigen::MatrixXcd::Zero(2, 3), Family::kCustom), ErrorKind::kContractViolation);
}

TEST(hamiltonian, heisenberg_uniform_three_sites) {
  // J = (1, 1): sum J = 2, so D = (0, -1, 0) and B_j = (J_{j-1} + J_j)/2 - 2/2 = (-1/2, 0, -1/2).
  const std::vector<double> j{1.0, 1.0};
  const HeisenbergChain hc = heisenberg_chain_with_field(j);
  EXPECT_EQ(hc.diagonal, (std::vector<double>{0.0, -1.0, 0.0}));
  EXPECT_EQ(hc.field, (std::vector<double>{-0.5, 0.0, -0.5}));
  const Eigen::VectorXd diag = hc.hamiltonian.matrix().diagonal().real();
  EXPECT_LT(diag.maxCoeff() - diag.minCoeff(), 1e-12);
  EXPECT_EQ(hc.hamiltonian.matrix()(0, 1), Complex(1.0));
  EXPECT_EQ(hc.hamiltonian.family(), Family::kHeisenbergField);
}

TEST(hamiltonian, heisenberg_field_flattens_diagonal) {
  auto gen = make_stream(3, 0);
  for (int n = 3; n <= 10; ++n) {
    std::vector<double> j(n - 1);
    for (auto& x : j) x = 0.2 + uniform01(gen);
    const HeisenbergChain hc = heisenberg_chain_with_field(j);
    const Eigen::VectorXd diag = hc.hamiltonian.matrix().diagonal().real();
    EXPECT_LT(diag.maxCoeff() - diag.minCoeff(), 1e-12) << n;
  }
  const std::vector<double> short_chain{1.0};
  EXPECT_PSTLAB_ERROR(heisenberg_chain_with_field(short_chain), ErrorKind::kUnsupported);
}

TEST(hamiltonian, heisenberg_transfer_matches_xy_magnitude) {
  for (int n = 3; n <= 8; ++n) {
    const TransferKernel a(diagonalize(heisenberg_chain_with_field(engineered_couplings(n, 2.0)).hamiltonian), 0, n - 1);
    const TransferKernel b(diagonalize(engineered_chain(n, 2.0)), 0, n - 1);
    for (int k = 0; k < 50; ++k) EXPECT_NEAR(a.magnitude(0.1 * k), b.magnitude(0.1 * k), 1e-10);
  }
}

TEST(hamiltonian, shifted_moves_the_spectrum) {
  const Hamiltonian h = engineered_chain(4, 1.0).shifted(0.75);
  const auto values = diagonalize(h).values;
  EXPECT_NEAR(values[0], -1.5 - 0.75, 1e-12);
  EXPECT_EQ(to_string(Family::kMixedPhase), "mixed-phase");
}
