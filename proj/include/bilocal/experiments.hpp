#pragma once

// Measurement-strategy search over Werner sources, audit of the published
// optimum, and classification of the (p, q) visibility plane.

#include "bilocal/correlations.hpp"
#include "bilocal/optimizer.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace bilocal {

/// 30 reals: raw x0, x1, y0, y1 (12), then M row-major (9), then N row-major (9).
inline constexpr std::size_t kEncodingDim = 30;
using StrategyEncoding = std::array<double, kEncodingDim>;

/// The published visibilities p = 3.2/4.1294 and q = 1/3.1, formed from the
/// printed fractions rather than their decimal roundings.
inline constexpr double kHeadlineP = 3.2 / 4.1294;
inline constexpr double kHeadlineQ = 1.0 / 3.1;

/// Werner states are entangled above this visibility.
inline constexpr double kWernerSeparableMax = 1.0 / 3.0;

StrategyEncoding encode(const MeasurementStrategy& strategy);

/// Projects onto the feasible set: vectors normalized (zero -> +z), M and N
/// divided by max(1, spectral radius of Bob's observable).
MeasurementStrategy decode(std::span<const double> encoding);

/// S' of the decoded strategy.
double paper_objective(std::span<const double> encoding);

/// Trace-oracle S of the decoded strategy on werner(p) (x) werner(q).
double trace_objective(std::span<const double> encoding, double p, double q);

/// Canonical strategy: a, c = (sigma3 +- sigma1)/sqrt2, b0 = sigma3 sigma3,
/// b1 = sigma1 sigma1. Gives S = 2 sqrt(2pq).
MeasurementStrategy canonical_strategy();

/// Published optimum, digits as printed (not projected onto the constraints).
MeasurementStrategy reported_strategy();

struct PaperExperimentResult {
  MeasurementStrategy best;
  double sprime_max = 0.0;
  OptimizationTrace trace;
};

PaperExperimentResult run_paper_experiment(const PsoConfig& config);

struct AuditReport {
  double p = 1.0;
  double q = 1.0;
  double Sprime_paper = 0.0;
  double Iprime = 0.0;
  double Jprime = 0.0;
  double S_paper_at_pq = 0.0;   // sqrt(pq) S'
  double S_trace_at_pq = 0.0;   // trace oracle at (p, q)
  double S_bloch_at_pq = 0.0;   // corrected contraction at (p, q)
  double spectral_radius_M = 0.0;
  double spectral_radius_N = 0.0;
  double frobenius_M = 0.0;
  double frobenius_N = 0.0;
  double rank1_residual_M = 0.0;  // norm of the two smallest singular values
  double rank1_residual_N = 0.0;
  double formula_gap = 0.0;       // |S_paper - S_trace| at p = q = 1
  double pq_threshold = 0.0;
  bool violates_paper = false;
  bool violates_trace = false;
  bool ab_entangled = false;
  bool bc_entangled = false;
};

/// Throws std::invalid_argument when p or q lies outside [0, 1].
AuditReport audit_reported(double p, double q);

struct PqCell {
  double p = 0.0;
  double q = 0.0;
  double pq = 0.0;
  bool violates_paper = false;
  bool violates_trace = false;
  bool ab_entangled = false;
  bool bc_entangled = false;
};

/// Classify one visibility pair. Validation applies to the trace route only.
PqCell classify_pq(double p, double q, double sprime, const MeasurementStrategy& strategy,
                   Validation validation = Validation::kEnforce);

/// grid_steps x grid_steps uniform grid over [0, 1]^2, p-major order.
std::vector<PqCell> scan_pq(double sprime, std::size_t grid_steps,
                            const MeasurementStrategy& strategy,
                            Validation validation = Validation::kEnforce);

/// Cells with violates_paper, p > 1/3 and q <= 1/3 or vice versa.
std::size_t count_mixed_violations(std::span<const PqCell> cells);

}  // namespace bilocal
