#include "bilocal/qstate.hpp"

#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <limits>

using namespace bilocal;
using bilocal::testing::Gen;
using bilocal::testing::oracle_kron;
using bilocal::testing::oracle_observable;
using bilocal::testing::oracle_pauli;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::VectorXd eigenvalues(const Eigen::MatrixXcd& h) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
}

}  // namespace

TEST_CASE("pauli matrices follow the X, Y, Z convention") {
  Matrix2c z;
  z << 1, 0, 0, -1;
  CHECK(max_abs(pauli(3) - z) == 0.0);
  for (int i = 1; i <= 3; ++i) {
    const Matrix2c s = pauli(i);
    CHECK(max_abs(s * s - Matrix2c::Identity()) == 0.0);
    CHECK(std::abs(s.trace()) == 0.0);
    CHECK(max_abs(s - s.adjoint()) == 0.0);
    CHECK(max_abs(s - oracle_pauli(i)) == 0.0);
  }
  CHECK_THROWS_AS(pauli(0), std::out_of_range);
  CHECK_THROWS_AS(pauli(4), std::out_of_range);
}

TEST_CASE("werner states") {
  SUBCASE("p = 0 is maximally mixed") {
    CHECK(max_abs(werner(0.0).matrix() - 0.25 * Matrix4c::Identity()) < 1e-15);
  }
  SUBCASE("p = 1 is the rank-one projector onto phi+") {
    const Matrix4c m = werner(1.0).matrix();
    CHECK(max_abs(m * m - m) < 1e-15);
    CHECK(std::abs(m.trace() - 1.0) < 1e-15);
    CHECK(m(0, 3).real() == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("p = 0.5 entries") {
    const Matrix4c m = werner(0.5).matrix();
    CHECK(m(0, 0).real() == doctest::Approx(0.375));
    CHECK(m(1, 1).real() == doctest::Approx(0.125));
    CHECK(m(2, 2).real() == doctest::Approx(0.125));
    CHECK(m(3, 3).real() == doctest::Approx(0.375));
    CHECK(m(0, 3).real() == doctest::Approx(0.25));
    CHECK(m(3, 0).real() == doctest::Approx(0.25));
    CHECK(std::abs(m(0, 1)) == 0.0);
  }
  SUBCASE("parameter outside [0, 1] is rejected") {
    CHECK_THROWS_AS(werner(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(werner(1.01), std::invalid_argument);
    CHECK_THROWS_AS(WernerParam(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  }
}

TEST_CASE("state validation") {
  Matrix4c m = 0.25 * Matrix4c::Identity();
  m(0, 1) = Complex(0.1, 0.0);  // breaks Hermiticity
  CHECK_THROWS_AS(TwoQubitState::from_matrix(m), InvalidState);
  CHECK_THROWS_AS(TwoQubitState::from_matrix(0.5 * Matrix4c::Identity()), InvalidState);
  Matrix4c neg = Matrix4c::Zero();
  neg.diagonal() << 1.5, -0.5, 0.0, 0.0;
  CHECK_THROWS_AS(TwoQubitState::from_matrix(neg), InvalidState);
}

TEST_CASE("bloch_decompose") {
  SUBCASE("werner(p) has T = diag(p, -p, p) and no local vectors") {
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.77, 1.0}) {
      const BlochForm bf = bloch_decompose(werner(p));
      CHECK(bf.r.norm() < 1e-15);
      CHECK(bf.s.norm() < 1e-15);
      Mat3 expected = Mat3::Zero();
      expected.diagonal() << p, -p, p;
      CHECK((bf.T - expected).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
  SUBCASE("maximally mixed state decomposes to zero") {
    const BlochForm bf = bloch_decompose(werner(0.0));
    CHECK(bf.r.norm() + bf.s.norm() + bf.T.norm() < 1e-15);
  }
  SUBCASE("product state gives r = a, s = b, T = a b^T") {
    Gen gen(11);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec3 a = gen.uniform(0.0, 1.0) * gen.unit_vector();
      const Vec3 b = gen.uniform(0.0, 1.0) * gen.unit_vector();
      const Matrix2c rho_a = 0.5 * (Matrix2c::Identity() + oracle_observable(a));
      const Matrix2c rho_b = 0.5 * (Matrix2c::Identity() + oracle_observable(b));
      const Matrix4c rho = oracle_kron(rho_a, rho_b);
      const BlochForm bf = bloch_decompose(TwoQubitState::from_matrix(rho));
      CHECK((bf.r - a).norm() < 1e-14);
      CHECK((bf.s - b).norm() < 1e-14);
      CHECK((bf.T - a * b.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  SUBCASE("local Bloch vectors stay inside the unit ball") {
    Gen gen(12);
    for (int trial = 0; trial < 100; ++trial) {
      const BlochForm bf = bloch_decompose(gen.state());
      CHECK(bf.r.norm() <= 1.0 + 1e-10);
      CHECK(bf.s.norm() <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("bloch_compose") {
  CHECK(max_abs(bloch_compose(BlochForm{}).matrix() - 0.25 * Matrix4c::Identity()) < 1e-15);

  BlochForm bell;
  bell.T.diagonal() << 1.0, -1.0, 1.0;
  CHECK(max_abs(bloch_compose(bell).matrix() - werner(1.0).matrix()) < 1e-15);

  SUBCASE("round trip on random states") {
    Gen gen(13);
    for (int trial = 0; trial < 100; ++trial) {
      const TwoQubitState rho = gen.state();
      const TwoQubitState back = bloch_compose(bloch_decompose(rho));
      CHECK(max_abs(back.matrix() - rho.matrix()) < 1e-12);
    }
  }
  SUBCASE("positivity is not guaranteed") {
    BlochForm bad;
    bad.T = Mat3::Identity();
    const TwoQubitState rho = bloch_compose(bad);
    CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-15);
    CHECK_FALSE(rho.is_positive());
    CHECK(rho.min_eigenvalue() == doctest::Approx(-0.5));
  }
}

TEST_CASE("ppt_min_eigenvalue") {
  // PT of werner(p) is (p/2) SWAP + (1-p)/4 I; SWAP has a single -1 eigenvalue.
  for (int k = 0; k <= 100; ++k) {
    const double p = k / 100.0;
    const double lmin = ppt_min_eigenvalue(werner(p));
    CHECK(std::abs(lmin - (1.0 - 3.0 * p) / 4.0) < 1e-12);
    const bool entangled = lmin < -1e-9;
    CHECK(entangled == (p > 1.0 / 3.0 + 1e-9));
  }
  CHECK(std::abs(ppt_min_eigenvalue(werner(1.0 / 3.0))) < 1e-15);
  CHECK(ppt_min_eigenvalue(werner(0.0)) == doctest::Approx(0.25));

  SUBCASE("product states are never flagged") {
    Gen gen(14);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix2c a = 0.5 * (Matrix2c::Identity() + oracle_observable(gen.unit_vector()));
      const Matrix2c b = 0.5 * (Matrix2c::Identity() + oracle_observable(gen.unit_vector()));
      const Matrix4c rho = oracle_kron(a, b);
      CHECK(ppt_min_eigenvalue(TwoQubitState::from_matrix(rho)) > -1e-12);
    }
  }
}

TEST_CASE("qubit_observable") {
  Matrix2c z;
  z << 1, 0, 0, -1;
  CHECK(max_abs(qubit_observable(Vec3::UnitZ()) - z) == 0.0);

  const Eigen::VectorXd ev = eigenvalues(qubit_observable(Vec3(0.6, 0.0, 0.8)));
  CHECK(ev(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(ev(1) == doctest::Approx(1.0).epsilon(1e-14));

  Gen gen(15);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 x = gen.uniform(0.0, 3.0) * gen.unit_vector();
    const Eigen::VectorXd e = eigenvalues(qubit_observable(x));
    CHECK(std::abs(e(0) + x.norm()) < 1e-12);
    CHECK(std::abs(e(1) - x.norm()) < 1e-12);
  }
}

TEST_CASE("bob_observable") {
  Mat3 c33 = Mat3::Zero();
  c33(2, 2) = 1.0;
  const Matrix4c zz = bob_observable(c33);
  CHECK(max_abs(zz - oracle_kron(oracle_pauli(3), oracle_pauli(3))) == 0.0);
  CHECK(spectral_radius(zz) == doctest::Approx(1.0));
  CHECK(max_abs(bob_observable(Mat3::Zero())) == 0.0);

  Gen gen(16);
  SUBCASE("rank one coefficients give a product observable") {
    for (int trial = 0; trial < 20; ++trial) {
      const Vec3 u = gen.unit_vector();
      const Vec3 v = gen.unit_vector();
      const Matrix4c b = bob_observable(u * v.transpose());
      const Eigen::MatrixXcd expected = oracle_kron(oracle_observable(u), oracle_observable(v));
      CHECK(max_abs(b - expected) < 1e-14);
      const Eigen::VectorXd e = eigenvalues(b);
      CHECK(std::abs(e(0) + 1.0) < 1e-12);
      CHECK(std::abs(e(3) - 1.0) < 1e-12);
    }
  }
  SUBCASE("linear, traceless and Hermitian") {
    for (int trial = 0; trial < 100; ++trial) {
      const Mat3 a = gen.matrix();
      const Mat3 b = gen.matrix();
      const double alpha = gen.normal();
      const double beta = gen.normal();
      const Matrix4c lhs = bob_observable(alpha * a + beta * b);
      const Matrix4c rhs = alpha * bob_observable(a) + beta * bob_observable(b);
      CHECK(max_abs(lhs - rhs) < 1e-12);
      CHECK(std::abs(lhs.trace()) < 1e-12);
      CHECK(max_abs(lhs - lhs.adjoint()) < 1e-15);
    }
  }
}

TEST_CASE("spectral_radius") {
  Mat3 xx = Mat3::Zero();
  xx(0, 0) = 0.5;
  CHECK(spectral_radius(bob_observable(xx)) == doctest::Approx(0.5));
  CHECK(spectral_radius(pauli(2)) == doctest::Approx(1.0));

  Mat3 printed_m;
  printed_m << -0.1258, -0.1882, -0.2448, 0.3078, 0.4614, 0.5996, 0.1740, 0.2606, 0.3390;
  const double rho = spectral_radius(bob_observable(printed_m));
  CHECK(rho <= 1.05);
  CHECK(rho > 0.95);
}
