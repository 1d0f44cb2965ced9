#include "pstlab/verify/expm_oracle.hpp"

#include <cmath>
#include <complex>

namespace pstlab::verify {

Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  // Induced 1-norm: largest absolute column sum.
  const double norm = n == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd a = m / std::ldexp(1.0, squarings);

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Eigen::MatrixXcd propagator_oracle(const Eigen::MatrixXcd& h, double t) {
  return expm_taylor(std::complex<double>(0.0, -t) * h);
}

}  // namespace pstlab::verify
