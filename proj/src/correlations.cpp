#include "bilocal/correlations.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <string_view>

namespace bilocal {

namespace {

using Matrix16c = Eigen::Matrix<Complex, 16, 16>;

void check_unit(const Vec3& v, std::string_view name) {
  const double n = v.norm();
  if (!(std::abs(n - 1.0) <= kUnitNormTol)) {
    std::ostringstream msg;
    msg << "constraint violated: |" << name << "| = " << n
        << " but measurement vectors must have unit length";
    throw ConstraintViolation(msg.str());
  }
}

void check_spectral(const Mat3& c, std::string_view name) {
  const double rho = spectral_radius(bob_observable(c));
  if (!(rho <= 1.0 + kSpectralTol)) {
    std::ostringstream msg;
    msg << "constraint violated: spectral radius of Bob's observable from " << name
        << " is " << rho << " but eigenvalues must lie in [-1, 1]";
    throw ConstraintViolation(msg.str());
  }
}

void maybe_validate(const MeasurementStrategy& s, Validation v) {
  if (v == Validation::kEnforce) validate(s);
}

// Tr[(A (x) B (x) C)(rho_ab (x) rho_bc)] with B acting on Bob's two qubits.
double trace_expectation(const Matrix2c& a, const Matrix4c& b, const Matrix2c& c,
                         const Matrix4c& rho_ab, const Matrix4c& rho_bc) {
  Matrix16c op;
  Matrix16c rho;
  // Index ordering (A, B1, B2, C): 8*a + 4*b1 + 2*b2 + c.
  for (int r = 0; r < 16; ++r) {
    const int ra = r >> 3, rb = (r >> 1) & 3, rc = r & 1;
    for (int k = 0; k < 16; ++k) {
      const int ka = k >> 3, kb = (k >> 1) & 3, kc = k & 1;
      op(r, k) = a(ra, ka) * b(rb, kb) * c(rc, kc);
      rho(r, k) = rho_ab(2 * ra + (rb >> 1), 2 * ka + (kb >> 1)) *
                  rho_bc(2 * (rb & 1) + rc, 2 * (kb & 1) + kc);
    }
  }
  return (op * rho).trace().real();
}

}  // namespace

void validate(const MeasurementStrategy& s) {
  check_unit(s.x0, "x0");
  check_unit(s.x1, "x1");
  check_unit(s.y0, "y0");
  check_unit(s.y1, "y1");
  check_spectral(s.M, "M");
  check_spectral(s.N, "N");
}

double s_value(double I, double J) { return std::sqrt(std::abs(I)) + std::sqrt(std::abs(J)); }

double pq_threshold(double sprime) {
  if (!(sprime > 0.0)) {
    std::ostringstream msg;
    msg << "pq threshold needs a positive S', got " << sprime;
    throw std::invalid_argument(msg.str());
  }
  const double ratio = kBilocalBound / sprime;
  return ratio * ratio;
}

CorrelationResult eval_trace(const MeasurementStrategy& s, const TwoQubitState& rho_ab,
                             const TwoQubitState& rho_bc, Validation validation) {
  maybe_validate(s, validation);
  const Matrix2c a_plus = qubit_observable(s.x0 + s.x1);
  const Matrix2c a_minus = qubit_observable(s.x0 - s.x1);
  const Matrix2c c_plus = qubit_observable(s.y0 + s.y1);
  const Matrix2c c_minus = qubit_observable(s.y0 - s.y1);
  CorrelationResult out;
  out.I = trace_expectation(a_plus, bob_observable(s.M), c_plus, rho_ab.matrix(),
                            rho_bc.matrix());
  out.J = trace_expectation(a_minus, bob_observable(s.N), c_minus, rho_ab.matrix(),
                            rho_bc.matrix());
  out.S = s_value(out.I, out.J);
  return out;
}

CorrelationResult eval_bloch_general(const MeasurementStrategy& s, const BlochForm& bf_ab,
                                     const BlochForm& bf_bc, Validation validation) {
  maybe_validate(s, validation);
  // Alice side: u_i = sum_k X_k t_ki; Charles side: v_j = sum_l s_jl Y_l.
  const auto contract = [&](const Vec3& x, const Mat3& bob, const Vec3& y) {
    const Vec3 u = bf_ab.T.transpose() * x;
    const Vec3 v = bf_bc.T * y;
    return u.dot(bob * v);
  };
  CorrelationResult out;
  out.I = contract(s.x0 + s.x1, s.M, s.y0 + s.y1);
  out.J = contract(s.x0 - s.x1, s.N, s.y0 - s.y1);
  out.S = s_value(out.I, out.J);
  return out;
}

CorrelationResult eval_paper_formula(const MeasurementStrategy& s, const BlochForm& bf_ab,
                                     const BlochForm& bf_bc, Validation validation) {
  maybe_validate(s, validation);
  const auto contract = [&](const Vec3& x, const Mat3& bob, const Vec3& y) {
    double alice = 0.0;
    for (int k = 0; k < 3; ++k) {
      double inner = 0.0;
      for (int i = 0; i < 3; ++i) inner += bf_ab.T(k, i) * bob.row(i).sum();
      alice += x(k) * inner;
    }
    double charles = 0.0;
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) charles += bf_bc.T(k, l) * y(l);
    return alice * charles;
  };
  CorrelationResult out;
  out.I = contract(s.x0 + s.x1, s.M, s.y0 + s.y1);
  out.J = contract(s.x0 - s.x1, s.N, s.y0 - s.y1);
  out.S = s_value(out.I, out.J);
  return out;
}

WernerPrime eval_werner_prime(const MeasurementStrategy& s, Validation validation) {
  maybe_validate(s, validation);
  // Werner correlation matrix is diag(1, -1, 1) times the visibility.
  const auto bracket = [](const Vec3& x, const Mat3& bob, const Vec3& y) {
    const double alice = x(0) * bob.row(0).sum() - x(1) * bob.row(1).sum() +
                         x(2) * bob.row(2).sum();
    const double charles = y(0) - y(1) + y(2);
    return alice * charles;
  };
  WernerPrime out;
  out.Iprime = bracket(s.x0 + s.x1, s.M, s.y0 + s.y1);
  out.Jprime = bracket(s.x0 - s.x1, s.N, s.y0 - s.y1);
  out.Sprime = s_value(out.Iprime, out.Jprime);
  return out;
}

}  // namespace bilocal
