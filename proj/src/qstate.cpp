#include "bilocal/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>
#include <sstream>

namespace bilocal {

namespace {

const std::array<Matrix2c, 3>& pauli_table() {
  static const std::array<Matrix2c, 3> table = [] {
    const Complex i{0.0, 1.0};
    std::array<Matrix2c, 3> t;
    t[0] << 0, 1, 1, 0;
    t[1] << 0, -i, i, 0;
    t[2] << 1, 0, 0, -1;
    return t;
  }();
  return table;
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

}  // namespace

WernerParam::WernerParam(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "Werner parameter must lie in [0, 1], got " << p;
    throw std::invalid_argument(msg.str());
  }
}

void TwoQubitState::check_hermitian_unit_trace(const Matrix4c& m) {
  const double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm_err <= kHermitianTol)) {
    std::ostringstream msg;
    msg << "state is not Hermitian (max |rho - rho^dagger| = " << herm_err << ")";
    throw InvalidState(msg.str());
  }
  const Complex tr = m.trace();
  if (!(std::abs(tr - Complex{1.0, 0.0}) <= kTraceTol)) {
    std::ostringstream msg;
    msg << "state trace is " << tr.real() << " + " << tr.imag() << "i, expected 1";
    throw InvalidState(msg.str());
  }
}

TwoQubitState TwoQubitState::from_matrix(const Matrix4c& m) {
  check_hermitian_unit_trace(m);
  TwoQubitState state(m);
  const double lmin = state.min_eigenvalue();
  if (!(lmin >= kPositivityTol)) {
    std::ostringstream msg;
    msg << "state is not positive semidefinite (min eigenvalue " << lmin << ")";
    throw InvalidState(msg.str());
  }
  return state;
}

double TwoQubitState::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix2c pauli(int i) {
  if (i < 1 || i > 3) {
    throw std::out_of_range("Pauli index must be 1, 2 or 3, got " + std::to_string(i));
  }
  return pauli_table()[static_cast<std::size_t>(i - 1)];
}

TwoQubitState werner(WernerParam p) {
  Eigen::Vector4cd phi_plus = Eigen::Vector4cd::Zero();
  phi_plus(0) = phi_plus(3) = 1.0 / std::sqrt(2.0);
  const double w = p.value();
  const Matrix4c rho = w * (phi_plus * phi_plus.adjoint()) +
                       ((1.0 - w) / 4.0) * Matrix4c::Identity();
  return TwoQubitState::from_matrix(rho);
}

TwoQubitState werner(double p) { return werner(WernerParam(p)); }

BlochForm bloch_decompose(const TwoQubitState& rho) {
  const auto& sigma = pauli_table();
  const Matrix2c id = Matrix2c::Identity();
  const Matrix4c& m = rho.matrix();
  BlochForm bf;
  for (int i = 0; i < 3; ++i) {
    bf.r(i) = (m * kron(sigma[i], id)).trace().real();
    bf.s(i) = (m * kron(id, sigma[i])).trace().real();
    for (int j = 0; j < 3; ++j) {
      bf.T(i, j) = (m * kron(sigma[i], sigma[j])).trace().real();
    }
  }
  return bf;
}

TwoQubitState bloch_compose(const BlochForm& bf) {
  const auto& sigma = pauli_table();
  const Matrix2c id = Matrix2c::Identity();
  Matrix4c m = Matrix4c::Identity();
  for (int i = 0; i < 3; ++i) {
    m += bf.r(i) * kron(sigma[i], id);
    m += bf.s(i) * kron(id, sigma[i]);
    for (int j = 0; j < 3; ++j) {
      m += bf.T(i, j) * kron(sigma[i], sigma[j]);
    }
  }
  m *= 0.25;
  // Pauli products are exactly Hermitian; symmetrize away rounding.
  m = (0.5 * (m + m.adjoint())).eval();
  return TwoQubitState(m);
}

double ppt_min_eigenvalue(const TwoQubitState& rho) {
  const Matrix4c& m = rho.matrix();
  Matrix4c pt;
  // basis index 2a + b; transpose b <-> b'
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          pt(2 * a + b, 2 * ap + bp) = m(2 * a + bp, 2 * ap + b);
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(pt, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix2c qubit_observable(const Vec3& x) {
  const auto& sigma = pauli_table();
  return x(0) * sigma[0] + x(1) * sigma[1] + x(2) * sigma[2];
}

Matrix4c bob_observable(const Mat3& coeffs) {
  const auto& sigma = pauli_table();
  Matrix4c b = Matrix4c::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (coeffs(i, j) != 0.0) b += coeffs(i, j) * kron(sigma[i], sigma[j]);
  return b;
}

}  // namespace bilocal
