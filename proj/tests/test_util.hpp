#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "pstlab/exception.hpp"
#include "pstlab/rng.hpp"

namespace pstlab::test {

inline Eigen::VectorXcd random_state(std::mt19937_64& gen, int n) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v[i] = {2.0 * uniform01(gen) - 1.0, 2.0 * uniform01(gen) - 1.0};
  return v / v.norm();
}

inline Eigen::Matrix4cd random_density(std::mt19937_64& gen) {
  Eigen::Matrix4cd g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) g(i, j) = {2.0 * uniform01(gen) - 1.0, 2.0 * uniform01(gen) - 1.0};
  }
  Eigen::Matrix4cd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline double wrapped(double a, double b) { return std::abs(std::arg(std::polar(1.0, a - b))); }

}  // namespace pstlab::test

#define EXPECT_PSTLAB_ERROR(stmt, expected_kind)                         \
  do {                                                                   \
    try {                                                                \
      stmt;                                                              \
      ADD_FAILURE() << "expected pstlab::Error from " #stmt;             \
    } catch (const pstlab::Error& e) {                                   \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                    \
    }                                                                    \
  } while (0)
