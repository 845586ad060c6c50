#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "vicsim/errors.hpp"
#include "vicsim/gains.hpp"

using namespace vicsim;

namespace {

LqrWeights diag_weights(std::initializer_list<double> q, double alpha = 1.0) {
  LqrWeights w;
  const auto n = static_cast<Eigen::Index>(q.size());
  w.Q = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index i = 0;
  for (double v : q) w.Q(i, i) = v, ++i;
  w.alpha = alpha;
  return w;
}

}  // namespace

TEST_CASE("integrator chain structure") {
  const auto c = brunovsky_chain(3);
  CHECK(c.n == 3);
  CHECK(c.A.rows() == 3);
  CHECK(c.A.cols() == 3);
  CHECK(c.B.rows() == 3);
  CHECK(c.B.cols() == 1);
  CHECK(c.A(0, 1) == 1.0);
  CHECK(c.A(1, 2) == 1.0);
  CHECK(c.A.cwiseAbs().sum() == 2.0);  // only the superdiagonal is populated
  CHECK(c.B(2, 0) == 1.0);
  CHECK(c.B.cwiseAbs().sum() == 1.0);
  CHECK_THROWS_AS(brunovsky_chain(0), std::invalid_argument);
}

TEST_CASE("second order synthesis anchor") {
  const auto r = lqr_gains(brunovsky_chain(2), diag_weights({7.0, 1.0}));
  REQUIRE(r.gains.k.size() == 2);
  CHECK(r.gains.k[0] == doctest::Approx(2.645751311064589).epsilon(1e-9));
  CHECK(r.gains.k[1] == doctest::Approx(2.508286790247316).epsilon(1e-9));
  CHECK(r.residual < 1e-9);
}

TEST_CASE("second order closed forms") {
  // For the double integrator with Q = diag(q1, q2) and effort weight alpha:
  // k1 = sqrt(q1/alpha), k2 = sqrt(q2/alpha + 2 k1).
  for (auto [q1, q2, a] : {std::tuple{7.0, 1.0, 1.0},
                           std::tuple{3.0, 2.0, 0.5},
                           std::tuple{1.0, 1.0, 1.0},
                           std::tuple{10.0, 0.25, 2.0}}) {
    const auto r = lqr_gains(brunovsky_chain(2), diag_weights({q1, q2}, a));
    const double k1 = std::sqrt(q1 / a);
    const double k2 = std::sqrt(q2 / a + 2.0 * k1);
    CHECK(r.gains.k[0] == doctest::Approx(k1).epsilon(1e-9));
    CHECK(r.gains.k[1] == doctest::Approx(k2).epsilon(1e-9));
  }
}

TEST_CASE("first order synthesis") {
  const auto r = lqr_gains(brunovsky_chain(1), diag_weights({4.0}));
  REQUIRE(r.gains.k.size() == 1);
  CHECK(r.gains.k[0] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("identity weight anchors for higher orders") {
  // Reference values frozen from an independent Riccati solve.
  {
    const auto r = lqr_gains(brunovsky_chain(2), diag_weights({1.0, 1.0}));
    CHECK(r.gains.k[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.gains.k[1] == doctest::Approx(1.732050807568877).epsilon(1e-9));
  }
  {
    const auto r = lqr_gains(brunovsky_chain(3), diag_weights({1.0, 1.0, 1.0}));
    CHECK(r.gains.k[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.gains.k[1] == doctest::Approx(2.414213562373095).epsilon(1e-6));
    CHECK(r.gains.k[2] == doctest::Approx(2.414213562373095).epsilon(1e-6));
  }
  {
    const auto r = lqr_gains(brunovsky_chain(4), diag_weights({1.0, 1.0, 1.0, 1.0}));
    CHECK(r.gains.k[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.gains.k[1] == doctest::Approx(3.077683537175253).epsilon(1e-6));
    CHECK(r.gains.k[2] == doctest::Approx(4.23606797749979).epsilon(1e-6));
    CHECK(r.gains.k[3] == doctest::Approx(3.077683537175253).epsilon(1e-6));
  }
  {
    const auto r =
        lqr_gains(brunovsky_chain(4), diag_weights({5.0, 2.0, 3.0, 1.0}, 2.0));
    CHECK(r.gains.k[0] == doctest::Approx(1.581138830084161).epsilon(1e-6));
    CHECK(r.gains.k[1] == doctest::Approx(4.093143466981044).epsilon(1e-6));
    CHECK(r.gains.k[2] == doctest::Approx(4.981796393062786).epsilon(1e-6));
    CHECK(r.gains.k[3] == doctest::Approx(3.234747715993564).epsilon(1e-6));
  }
}

TEST_CASE("scaling weights and effort together leaves gains unchanged") {
  const auto a = lqr_gains(brunovsky_chain(3), diag_weights({2.0, 5.0, 1.0}, 1.0));
  const auto b = lqr_gains(brunovsky_chain(3), diag_weights({6.0, 15.0, 3.0}, 3.0));
  for (size_t i = 0; i < 3; ++i) {
    CHECK(a.gains.k[i] == doctest::Approx(b.gains.k[i]).epsilon(1e-9));
  }
}

TEST_CASE("synthesized gains are stabilizing and cost matrix is symmetric psd") {
  const auto r = lqr_gains(brunovsky_chain(4), diag_weights({5.0, 2.0, 3.0, 1.0}, 2.0));
  const auto h = hurwitz_check(r.gains);
  CHECK(h.stable);
  CHECK((r.P - r.P.transpose()).cwiseAbs().maxCoeff() < 1e-9);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.P);
  CHECK(es.eigenvalues().minCoeff() > -1e-9);
}

TEST_CASE("synthesis input validation") {
  LqrWeights bad_dim;
  bad_dim.Q = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(lqr_gains(brunovsky_chain(2), bad_dim), SynthesisError);

  LqrWeights bad_alpha = diag_weights({1.0, 1.0});
  bad_alpha.alpha = 0.0;
  CHECK_THROWS_AS(lqr_gains(brunovsky_chain(2), bad_alpha), SynthesisError);

  LqrWeights asym;
  asym.Q = Eigen::MatrixXd::Identity(2, 2);
  asym.Q(0, 1) = 0.3;
  CHECK_THROWS_AS(lqr_gains(brunovsky_chain(2), asym), SynthesisError);
}

TEST_CASE("stability screen on explicit gain sets") {
  {
    const auto h = hurwitz_check(OhftGains{{2.2361, 5.9389, 6.7687, 3.8128}});
    CHECK(h.stable);
    double max_re = -1e9;
    double min_re = 1e9;
    for (const auto& ev : h.eigenvalues) {
      max_re = std::max(max_re, ev.real());
      min_re = std::min(min_re, ev.real());
    }
    CHECK(max_re == doctest::Approx(-0.9321197655).epsilon(1e-3));
    CHECK(min_re == doctest::Approx(-0.9742802345).epsilon(1e-3));
  }
  CHECK_FALSE(hurwitz_check(OhftGains{{1.0, -1.0}}).stable);
  CHECK_FALSE(hurwitz_check(OhftGains{{0.0, 1.0}}).stable);  // root at the origin
  CHECK(hurwitz_check(OhftGains{{1.0, 1.732050807568877}}).stable);
  CHECK_THROWS_AS(hurwitz_check(OhftGains{{}}), std::invalid_argument);
}

TEST_CASE("riccati equation residual is reported") {
  const auto chain = brunovsky_chain(2);
  const auto w = diag_weights({7.0, 1.0});
  const auto r = lqr_gains(chain, w);
  // Recompute A'P + PA - P B B'/alpha P + Q directly.
  const Eigen::MatrixXd S = chain.B * chain.B.transpose() / w.alpha;
  const Eigen::MatrixXd res = chain.A.transpose() * r.P + r.P * chain.A -
                              r.P * S * r.P + w.Q;
  CHECK(res.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(r.residual < 1e-9);
  CHECK(res.norm() <= r.residual * (1.0 + 1e-9) + 1e-15);
}
