#pragma once

// Two-qubit density-matrix algebra over the Pauli basis.
//
// Conventions: sigma_1 = X, sigma_2 = Y, sigma_3 = Z in the computational
// basis. Inside a two-qubit operator the first tensor factor is the left
// party (Alice for rho_AB, Bob's first qubit for rho_BC).

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace bilocal {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = -1e-10;

class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Local Bloch vectors r (first qubit), s (second qubit) and correlation
/// matrix T with T(i,j) = Tr(rho sigma_i (x) sigma_j).
struct BlochForm {
  Vec3 r = Vec3::Zero();
  Vec3 s = Vec3::Zero();
  Mat3 T = Mat3::Zero();
};

/// Werner mixing weight, validated to lie in [0, 1].
class WernerParam {
 public:
  explicit WernerParam(double p);
  double value() const noexcept { return p_; }

 private:
  double p_;
};

/// Hermitian, unit-trace 4x4 matrix.
///
/// Construction through from_matrix() additionally enforces positivity.
/// bloch_compose() produces states that are Hermitian and unit-trace by
/// construction but may fail positivity; call is_positive() when it matters.
class TwoQubitState {
 public:
  /// Throws InvalidState if the matrix is not Hermitian, not unit trace, or
  /// has an eigenvalue below kPositivityTol.
  static TwoQubitState from_matrix(const Matrix4c& m);

  const Matrix4c& matrix() const noexcept { return m_; }
  double min_eigenvalue() const;
  bool is_positive() const { return min_eigenvalue() >= kPositivityTol; }

 private:
  friend TwoQubitState bloch_compose(const BlochForm&);
  explicit TwoQubitState(const Matrix4c& m) : m_(m) {}
  static void check_hermitian_unit_trace(const Matrix4c& m);

  Matrix4c m_;
};

/// Pauli matrix sigma_i for i in {1,2,3}; throws std::out_of_range otherwise.
Matrix2c pauli(int i);

TwoQubitState werner(WernerParam p);
TwoQubitState werner(double p);

BlochForm bloch_decompose(const TwoQubitState& rho);
TwoQubitState bloch_compose(const BlochForm& bf);

/// Smallest eigenvalue of the partial transpose on the second qubit. For two
/// qubits a negative value is equivalent to entanglement.
double ppt_min_eigenvalue(const TwoQubitState& rho);

/// x . sigma
Matrix2c qubit_observable(const Vec3& x);

/// sum_ij C(i,j) sigma_i (x) sigma_j; Hermitian and traceless.
Matrix4c bob_observable(const Mat3& coeffs);

/// max |lambda| over the eigenvalues of a Hermitian matrix.
template <typename Derived>
double spectral_radius(const Eigen::MatrixBase<Derived>& h) {
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> es(h.eval(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace bilocal
