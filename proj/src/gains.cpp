#include "vicsim/gains.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "vicsim/errors.hpp"

namespace vicsim {

namespace {

constexpr double kResidualTol = 1e-9;

Eigen::MatrixXd riccati_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& S,
                                 const Eigen::MatrixXd& Q, const Eigen::MatrixXd& P) {
  return A.transpose() * P + P * A - P * S * P + Q;
}

// Stabilizing CARE solution via the matrix sign function of the Hamiltonian,
// with determinant scaling, then Newton (Lyapunov) refinement to push the
// residual to solver tolerance.
Eigen::MatrixXd solve_care(const Eigen::MatrixXd& A, const Eigen::MatrixXd& S,
                           const Eigen::MatrixXd& Q) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXd H(2 * n, 2 * n);
  H << A, S, Q, -A.transpose();

  Eigen::MatrixXd Z = H;
  for (int it = 0; it < 200; ++it) {
    const double det = Z.determinant();
    if (!std::isfinite(det) || det == 0.0) {
      throw SynthesisError("riccati: Hamiltonian sign iteration became singular");
    }
    const double c = std::pow(std::abs(det), -1.0 / (2.0 * n));
    const Eigen::MatrixXd Zs = c * Z;
    const Eigen::MatrixXd next = 0.5 * (Zs + Zs.inverse());
    const double delta = (next - Z).norm();
    Z = next;
    if (delta <= 1e-14 * std::max(1.0, Z.norm())) break;
  }

  // The stable subspace of the Hamiltonian is spanned by [I; -P].
  Eigen::MatrixXd lhs(2 * n, n), rhs(2 * n, n);
  lhs << Z.topRightCorner(n, n),
      Z.bottomRightCorner(n, n) + Eigen::MatrixXd::Identity(n, n);
  rhs << Z.topLeftCorner(n, n) + Eigen::MatrixXd::Identity(n, n),
      Z.bottomLeftCorner(n, n);
  Eigen::MatrixXd P = lhs.colPivHouseholderQr().solve(rhs);
  P = 0.5 * (P + P.transpose()).eval();

  // Newton correction: (A-SP)' D + D (A-SP) = -residual, solved densely via
  // vectorization; dimensions here are tiny.
  for (int it = 0; it < 25; ++it) {
    const Eigen::MatrixXd R = riccati_residual(A, S, Q, P);
    if (R.norm() <= kResidualTol * 0.01) break;
    const Eigen::MatrixXd Acl = A - S * P;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n * n, n * n);
    // vec(Acl' D + D Acl) = (I (x) Acl' + Acl' (x) I) vec(D), column-major.
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          M(j * n + i, j * n + k) += Acl(k, i);
          M(j * n + i, k * n + i) += Acl(k, j);
        }
      }
    }
    Eigen::VectorXd vecR(n * n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) vecR(j * n + i) = R(i, j);
    }
    const Eigen::VectorXd vecD = M.colPivHouseholderQr().solve(-vecR);
    Eigen::MatrixXd D(n, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) D(i, j) = vecD(j * n + i);
    }
    P = 0.5 * ((P + D) + (P + D).transpose()).eval();
  }
  return P;
}

}  // namespace

BrunovskyChain brunovsky_chain(int n) {
  if (n < 1) throw std::invalid_argument("brunovsky_chain: order must be at least 1");
  BrunovskyChain c;
  c.n = n;
  c.A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) c.A(i, i + 1) = 1.0;
  c.B = Eigen::VectorXd::Zero(n);
  c.B(n - 1) = 1.0;
  return c;
}

LqrResult lqr_gains(const BrunovskyChain& chain, const LqrWeights& w) {
  const int n = chain.n;
  if (w.Q.rows() != n || w.Q.cols() != n) {
    throw SynthesisError("lqr: Q dimension does not match the chain order");
  }
  if (!w.Q.isApprox(w.Q.transpose(), 1e-12)) {
    throw SynthesisError("lqr: Q must be symmetric");
  }
  if (!(w.alpha > 0.0)) {
    throw SynthesisError("lqr: alpha must be positive");
  }
  const Eigen::MatrixXd S = chain.B * chain.B.transpose() / w.alpha;
  const Eigen::MatrixXd P = solve_care(chain.A, S, w.Q);
  const double residual = riccati_residual(chain.A, S, w.Q, P).norm();
  if (!(residual < kResidualTol)) {
    throw SynthesisError("lqr: Riccati residual " + std::to_string(residual) +
                         " exceeds 1e-9; weights likely not admissible");
  }
  LqrResult out;
  out.P = P;
  out.residual = residual;
  const Eigen::RowVectorXd K = chain.B.transpose() * P / w.alpha;
  out.gains.k.assign(K.data(), K.data() + n);
  return out;
}

HurwitzResult hurwitz_check(const OhftGains& gains) {
  const int n = static_cast<int>(gains.k.size());
  if (n < 1) throw std::invalid_argument("hurwitz_check: empty gain vector");
  // Companion matrix of s^n + k_n s^{n-1} + ... + k_1.
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) C(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) C(n - 1, j) = -gains.k[j];
  Eigen::EigenSolver<Eigen::MatrixXd> es(C);
  HurwitzResult r;
  r.stable = true;
  r.eigenvalues.reserve(n);
  for (int i = 0; i < n; ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    r.eigenvalues.push_back(ev);
    if (!(ev.real() < -1e-12)) r.stable = false;
  }
  return r;
}

}  // namespace vicsim
