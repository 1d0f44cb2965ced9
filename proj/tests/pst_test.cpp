#include "pstlab/pst.hpp"

#include <algorithm>
#include <cmath>
#include <gtest/gtest.h>
#include <numbers>
#include <numeric>

#include "test_util.hpp"

using namespace pstlab;
using std::numbers::pi;

namespace {

bool brute_force_involution(const Graph& g, int a, int b) {
  std::vector<int> p(g.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (p[a] != b) continue;
    bool ok = true;
    for (int i = 0; i < g.size() && ok; ++i) {
      if (p[p[i]] != i) ok = false;
      for (int j = 0; j < g.size() && ok; ++j) {
        if (g.weight(i, j) != g.weight(p[i], p[j])) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

}  // namespace

TEST(pst, symmetry_examples) {
  for (int n = 2; n <= 9; ++n) {
    const auto s = find_mirror_symmetry(path(n), 0, n - 1);
    ASSERT_EQ(s.status, SearchStatus::kFound);
    for (int i = 0; i < n; ++i) EXPECT_EQ(s.witness->permutation[i], n - 1 - i);
  }
  EXPECT_EQ(find_mirror_symmetry(path(4), 0, 2).status, SearchStatus::kNone);
  for (int d = 1; d <= 3; ++d) {
    const Graph g = hypercube(2, d);
    const auto s = find_mirror_symmetry(g, 0, g.size() - 1);
    ASSERT_EQ(s.status, SearchStatus::kFound);
    EXPECT_TRUE(is_mirror_witness(g.adjacency().cast<Complex>(), *s.witness));
  }
  EXPECT_EQ(find_mirror_symmetry(star(3), 1, 2).status, SearchStatus::kFound);
  EXPECT_EQ(find_mirror_symmetry(star(3), 0, 1).status, SearchStatus::kNone);

  const auto c = find_mirror_symmetry(cycle(12), 0, 3);
  ASSERT_EQ(c.status, SearchStatus::kFound);
  EXPECT_TRUE(is_mirror_witness(cycle(12).adjacency().cast<Complex>(), *c.witness));
}

TEST(pst, symmetry_matches_brute_force_on_four_vertices) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) slots.emplace_back(i, j);
  }
  for (int mask = 0; mask < (1 << 6); ++mask) {
    std::vector<Edge> edges;
    for (int k = 0; k < 6; ++k) {
      if (mask & (1 << k)) edges.push_back({slots[k].first, slots[k].second, 1.0});
    }
    const Graph g(4, edges);
    if (!g.connected()) {
      EXPECT_PSTLAB_ERROR(find_mirror_symmetry(g, 0, 1), ErrorKind::kPrecondition);
      continue;
    }
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const bool expected = brute_force_involution(g, a, b);
        const auto s = find_mirror_symmetry(g, a, b);
        EXPECT_EQ(s.status == SearchStatus::kFound, expected) << "mask " << mask << " a " << a << " b " << b;
        if (s.witness) EXPECT_TRUE(is_mirror_witness(g.adjacency().cast<Complex>(), *s.witness));
      }
    }
  }
}

TEST(pst, symmetry_on_hamiltonians) {
  EXPECT_EQ(find_mirror_symmetry(engineered_chain(6, 1.0), 0, 5).status, SearchStatus::kFound);
  const std::vector<double> lopsided{1.0, 2.0};
  EXPECT_EQ(find_mirror_symmetry(chain_from_couplings(lopsided), 0, 2).status, SearchStatus::kNone);
  // i J_y is antisymmetric under reversal, so reversal is not a symmetry of the matrix.
  EXPECT_NE(find_mirror_symmetry(jy_chain(3, 1.0), 0, 2).status, SearchStatus::kFound);
}

TEST(pst, best_convergent_examples) {
  const Fraction half = best_convergent(0.5, 1e-12, 1000);
  EXPECT_EQ(half.p, 1);
  EXPECT_EQ(half.q, 2);
  const Fraction third = best_convergent(1.0 / 3.0, 1e-12, 1000);
  EXPECT_EQ(third.p, 1);
  EXPECT_EQ(third.q, 3);
  const Fraction pi_approx = best_convergent(pi, 2e-3, 1000);
  EXPECT_EQ(pi_approx.p, 22);
  EXPECT_EQ(pi_approx.q, 7);
  // 22/7 misses by 1.26e-3, so the next convergent is needed.
  const Fraction pi_mid = best_convergent(pi, 1e-3, 1000);
  EXPECT_EQ(pi_mid.p, 333);
  EXPECT_EQ(pi_mid.q, 106);
  const Fraction pi_close = best_convergent(pi, 1e-9, 1000);
  EXPECT_EQ(pi_close.p, 355);
  EXPECT_EQ(pi_close.q, 113);
  const Fraction neg = best_convergent(-0.75, 1e-12, 1000);
  EXPECT_EQ(neg.p, -3);
  EXPECT_EQ(neg.q, 4);
  const Fraction zero = best_convergent(0.0, 1e-12, 10);
  EXPECT_EQ(zero.p, 0);
  EXPECT_EQ(zero.q, 1);
  EXPECT_PSTLAB_ERROR(best_convergent(std::nan(""), 1e-9, 10), ErrorKind::kDomain);
  EXPECT_PSTLAB_ERROR(best_convergent(0.5, 1e-9, 0), ErrorKind::kDomain);
}

TEST(pst, rational_ratio_examples) {
  const double r2 = std::sqrt(2.0);
  const std::vector<double> three{-r2, 0.0, r2};
  const auto rep3 = rational_ratio_test(three);
  EXPECT_EQ(rep3.overall, Feasibility::kFeasible);
  ASSERT_EQ(rep3.pairs.size(), 1u);
  EXPECT_EQ(rep3.pairs[0].approx.p, 1);
  EXPECT_EQ(rep3.pairs[0].approx.q, 2);

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const std::vector<double> four{-phi, -1.0 / phi, 1.0 / phi, phi};
  EXPECT_EQ(rational_ratio_test(four).overall, Feasibility::kInfeasible);
  // A large enough denominator bound approximates anything.
  EXPECT_EQ(rational_ratio_test(four, 1e-9, 1'000'000).overall, Feasibility::kFeasible);

  const std::vector<double> arithmetic{-2.0, -1.0, 0.0, 1.0, 2.0};
  EXPECT_EQ(rational_ratio_test(arithmetic).overall, Feasibility::kFeasible);

  const std::vector<double> two{-1.0, 1.0};
  const auto rep2 = rational_ratio_test(two);
  EXPECT_TRUE(rep2.pairs.empty());
  EXPECT_EQ(rep2.overall, Feasibility::kFeasible);

  const std::vector<double> flat{1.0, 1.0};
  EXPECT_PSTLAB_ERROR(rational_ratio_test(flat), ErrorKind::kDegenerateSpectrum);
  const std::vector<double> unsorted{1.0, 0.0};
  EXPECT_PSTLAB_ERROR(rational_ratio_test(unsorted), ErrorKind::kPrecondition);
  EXPECT_PSTLAB_ERROR(rational_ratio_test(three, 0.0), ErrorKind::kDomain);
}

TEST(pst, certificate_examples) {
  const auto two = pst_certificate(uniform_chain(2), 0, 1, 4.0);
  EXPECT_EQ(two.verdict, Verdict::kPerfect);
  EXPECT_NEAR(two.t0, pi / 2, 1e-6);
  EXPECT_NEAR(two.phase, -pi / 2, 1e-6);

  const auto three = pst_certificate(uniform_chain(3), 0, 2, 20.0);
  EXPECT_EQ(three.verdict, Verdict::kPerfect);
  EXPECT_NEAR(three.t0, pi / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(three.phase, pi, 1e-6);
  EXPECT_EQ(three.symmetry, SearchStatus::kFound);
  ASSERT_TRUE(three.rationality);
  EXPECT_EQ(three.rationality->overall, Feasibility::kFeasible);

  const auto eng = pst_certificate(engineered_chain(5, 1.0), 0, 4, 5.0);
  EXPECT_EQ(eng.verdict, Verdict::kPerfect);
  EXPECT_NEAR(eng.t0, pi, 1e-6);
  EXPECT_NEAR(eng.phase, 0.0, 1e-6);

  const auto four = pst_certificate(uniform_chain(4), 0, 3, 20.0);
  EXPECT_EQ(four.verdict, Verdict::kImperfect);
  ASSERT_TRUE(four.rationality);
  EXPECT_EQ(four.rationality->overall, Feasibility::kInfeasible);

  const std::vector<double> lopsided{1.0, 2.0};
  const auto asym = pst_certificate(chain_from_couplings(lopsided), 0, 2, 10.0);
  EXPECT_EQ(asym.symmetry, SearchStatus::kNone);
  EXPECT_NE(asym.verdict, Verdict::kPerfect);
  ASSERT_TRUE(asym.rationality);
  EXPECT_EQ(asym.rationality->overall, Feasibility::kInconclusive);
}

TEST(pst, periodicity) {
  const auto eng = periodicity_check(diagonalize(engineered_chain(4, 1.0)), 0, pi, 1e-9, 3);
  EXPECT_TRUE(eng.periodic);
  EXPECT_NEAR(eng.return_modulus, 1.0, 1e-9);
  ASSERT_EQ(eng.recurrence.size(), 2u);

  const auto hc = periodicity_check(diagonalize(from_graph(hypercube(2, 2))), 0, pi / std::sqrt(2.0), 1e-9);
  EXPECT_TRUE(hc.periodic);
  EXPECT_TRUE(hc.recurrence.empty());

  const Spectrum s4 = diagonalize(uniform_chain(4));
  const auto peak = find_transfer_peak(s4, 0, 3, 20.0);
  EXPECT_FALSE(periodicity_check(s4, 0, peak.time, 1e-9, 3).periodic);
  EXPECT_PSTLAB_ERROR(periodicity_check(s4, 0, 0.0, 1e-9), ErrorKind::kDomain);
}
