#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "vicsim/controllers.hpp"

namespace vicsim {

// Integrator chain x_i' = x_{i+1}, x_n' = u.
struct BrunovskyChain {
  int n = 2;
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
};

BrunovskyChain brunovsky_chain(int n);

struct LqrWeights {
  Eigen::MatrixXd Q;
  double alpha = 1.0;
};

struct LqrResult {
  OhftGains gains;      // k_i = K(i-1), ascending chain position
  Eigen::MatrixXd P;    // Riccati solution
  double residual = 0;  // Frobenius norm of the Riccati residual
};

// Solves A'P + PA - P B (1/alpha) B'P + Q = 0 for the chain system and
// returns K = (1/alpha) B'P. Throws SynthesisError when the residual cannot
// be driven below 1e-9.
LqrResult lqr_gains(const BrunovskyChain& chain, const LqrWeights& w);

struct HurwitzResult {
  bool stable = false;
  std::vector<std::complex<double>> eigenvalues;
};

// Stability of s^n + k_n s^{n-1} + ... + k_1, evaluated on the companion
// matrix; strict: real parts must sit below -1e-12.
HurwitzResult hurwitz_check(const OhftGains& gains);

}  // namespace vicsim
