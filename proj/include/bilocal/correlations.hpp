#pragma once

// Bilocality correlators
//
//   I = < (a0 + a1) b0 (c0 + c1) >,   J = < (a0 - a1) b1 (c0 - c1) >,
//   S = sqrt|I| + sqrt|J|            (bilocal bound: S <= 2)
//
// evaluated three ways:
//   eval_trace          exact trace over the 16-dim space (A, B1, B2, C)
//   eval_bloch_general  contraction of Bloch correlation matrices; agrees
//                       with eval_trace for every state pair
//   eval_paper_formula  the published closed-form contraction, which
//                       reproduces the reported optimum but is not implied
//                       by the trace definition
// plus eval_werner_prime, the p,q-independent factors for Werner sources.

#include "bilocal/qstate.hpp"

#include <stdexcept>

namespace bilocal {

inline constexpr double kBilocalBound = 2.0;
inline constexpr double kUnitNormTol = 1e-9;
inline constexpr double kSpectralTol = 1e-9;

class ConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Alice measures a_x = x_x . sigma, Charles c_z = y_z . sigma, Bob
/// b_0 = sum m_ij sigma_i (x) sigma_j and b_1 likewise with N.
struct MeasurementStrategy {
  Vec3 x0 = Vec3::UnitZ();
  Vec3 x1 = Vec3::UnitZ();
  Vec3 y0 = Vec3::UnitZ();
  Vec3 y1 = Vec3::UnitZ();
  Mat3 M = Mat3::Zero();
  Mat3 N = Mat3::Zero();

  bool operator==(const MeasurementStrategy&) const = default;
};

enum class Validation { kEnforce, kSkip };

/// Throws ConstraintViolation naming the first violated bound: unit-length
/// x0, x1, y0, y1 (within kUnitNormTol) or spectral radius of Bob's
/// observables at most 1 (within kSpectralTol).
void validate(const MeasurementStrategy& strategy);

struct CorrelationResult {
  double I = 0.0;
  double J = 0.0;
  double S = 0.0;
};

struct WernerPrime {
  double Iprime = 0.0;
  double Jprime = 0.0;
  double Sprime = 0.0;
};

CorrelationResult eval_trace(const MeasurementStrategy& strategy,
                             const TwoQubitState& rho_ab,
                             const TwoQubitState& rho_bc,
                             Validation validation = Validation::kEnforce);

CorrelationResult eval_bloch_general(const MeasurementStrategy& strategy,
                                     const BlochForm& bf_ab,
                                     const BlochForm& bf_bc,
                                     Validation validation = Validation::kEnforce);

/// I = [sum_k X_k sum_i t_ki (sum_j m_ij)] * [sum_k sum_l s_kl Y_l] with
/// X = x0 + x1, Y = y0 + y1; J analogously with differences and N.
CorrelationResult eval_paper_formula(const MeasurementStrategy& strategy,
                                     const BlochForm& bf_ab,
                                     const BlochForm& bf_bc,
                                     Validation validation = Validation::kEnforce);

/// I', J', S' such that I = pq I', J = pq J', S = sqrt(pq) S' for Werner
/// sources under the published contraction.
WernerPrime eval_werner_prime(const MeasurementStrategy& strategy,
                              Validation validation = Validation::kEnforce);

double s_value(double I, double J);

/// Smallest pq for which sqrt(pq) * sprime exceeds the bilocal bound:
/// (2 / sprime)^2. Throws std::invalid_argument for sprime <= 0.
double pq_threshold(double sprime);

}  // namespace bilocal
