#pragma once

#include <Eigen/Dense>

namespace pstlab::verify {

// exp(m) by scaling and squaring with a truncated Taylor series. Shares no
// code with the eigensolver route and is meant only as a cross-check.
Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& m);

// exp(-i H t) through expm_taylor.
Eigen::MatrixXcd propagator_oracle(const Eigen::MatrixXcd& h, double t);

}  // namespace pstlab::verify
