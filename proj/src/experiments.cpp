#include "bilocal/experiments.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bilocal {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in [0, 1], got " << v;
    throw std::invalid_argument(msg.str());
  }
}

Vec3 unit_or_z(const Vec3& v) {
  const double n = v.norm();
  return n > 0.0 ? Vec3(v / n) : Vec3(Vec3::UnitZ());
}

Mat3 rescale_bob(const Mat3& c) {
  const double rho = spectral_radius(bob_observable(c));
  return c / std::max(1.0, rho);
}

double rank1_residual(const Mat3& c) {
  Eigen::JacobiSVD<Mat3> svd(c);
  const Vec3 sv = svd.singularValues();
  return std::hypot(sv(1), sv(2));
}

}  // namespace

StrategyEncoding encode(const MeasurementStrategy& s) {
  StrategyEncoding v{};
  const Vec3* vecs[] = {&s.x0, &s.x1, &s.y0, &s.y1};
  for (int b = 0; b < 4; ++b)
    for (int k = 0; k < 3; ++k) v[static_cast<std::size_t>(3 * b + k)] = (*vecs[b])(k);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      v[static_cast<std::size_t>(12 + 3 * i + j)] = s.M(i, j);
      v[static_cast<std::size_t>(21 + 3 * i + j)] = s.N(i, j);
    }
  return v;
}

MeasurementStrategy decode(std::span<const double> v) {
  if (v.size() != kEncodingDim) {
    throw std::invalid_argument("strategy encoding must have 30 components, got " +
                                std::to_string(v.size()));
  }
  const auto vec = [&](std::size_t off) { return Vec3(v[off], v[off + 1], v[off + 2]); };
  const auto mat = [&](std::size_t off) {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[off + 3 * i + j];
    return m;
  };
  MeasurementStrategy s;
  s.x0 = unit_or_z(vec(0));
  s.x1 = unit_or_z(vec(3));
  s.y0 = unit_or_z(vec(6));
  s.y1 = unit_or_z(vec(9));
  s.M = rescale_bob(mat(12));
  s.N = rescale_bob(mat(21));
  return s;
}

double paper_objective(std::span<const double> encoding) {
  // decode() already guarantees feasibility.
  return eval_werner_prime(decode(encoding), Validation::kSkip).Sprime;
}

double trace_objective(std::span<const double> encoding, double p, double q) {
  require_unit_interval(p, "p");
  require_unit_interval(q, "q");
  return eval_trace(decode(encoding), werner(p), werner(q), Validation::kSkip).S;
}

MeasurementStrategy canonical_strategy() {
  const double h = 1.0 / std::sqrt(2.0);
  MeasurementStrategy s;
  s.x0 = Vec3(h, 0.0, h);
  s.x1 = Vec3(-h, 0.0, h);
  s.y0 = s.x0;
  s.y1 = s.x1;
  s.M = Mat3::Zero();
  s.M(2, 2) = 1.0;
  s.N = Mat3::Zero();
  s.N(0, 0) = 1.0;
  return s;
}

MeasurementStrategy reported_strategy() {
  MeasurementStrategy s;
  s.x0 = Vec3(-0.9122, -0.1869, 0.3647);
  s.x1 = Vec3(0.3321, -0.8910, 0.3095);
  s.y0 = Vec3(-0.7915, -0.3305, 0.5140);
  s.y1 = Vec3(-0.5737, 0.5731, -0.5851);
  s.M << -0.1258, -0.1882, -0.2448,
          0.3078,  0.4614,  0.5996,
          0.1740,  0.2606,  0.3390;
  s.N << -0.4062, -0.5048, -0.5051,
         -0.2797, -0.3474, -0.3476,
         -0.0049, -0.0060, -0.0060;
  return s;
}

PaperExperimentResult run_paper_experiment(const PsoConfig& config) {
  const auto opt = optimize(paper_objective, kEncodingDim, Bounds{-1.0, 1.0}, config);
  PaperExperimentResult out;
  out.best = decode(opt.best_position);
  out.sprime_max = opt.best_value;
  out.trace = opt.trace;
  return out;
}

AuditReport audit_reported(double p, double q) {
  require_unit_interval(p, "p");
  require_unit_interval(q, "q");
  const MeasurementStrategy s = reported_strategy();
  const auto skip = Validation::kSkip;

  AuditReport r;
  r.p = p;
  r.q = q;
  const WernerPrime prime = eval_werner_prime(s, skip);
  r.Sprime_paper = prime.Sprime;
  r.Iprime = prime.Iprime;
  r.Jprime = prime.Jprime;

  const TwoQubitState rho_ab = werner(p);
  const TwoQubitState rho_bc = werner(q);
  r.S_paper_at_pq = std::sqrt(p * q) * prime.Sprime;
  r.S_trace_at_pq = eval_trace(s, rho_ab, rho_bc, skip).S;
  r.S_bloch_at_pq = eval_bloch_general(s, bloch_decompose(rho_ab), bloch_decompose(rho_bc), skip).S;

  r.spectral_radius_M = spectral_radius(bob_observable(s.M));
  r.spectral_radius_N = spectral_radius(bob_observable(s.N));
  r.frobenius_M = s.M.norm();
  r.frobenius_N = s.N.norm();
  r.rank1_residual_M = rank1_residual(s.M);
  r.rank1_residual_N = rank1_residual(s.N);

  const BlochForm pure = bloch_decompose(werner(1.0));
  const double s_paper = eval_paper_formula(s, pure, pure, skip).S;
  const double s_trace = eval_trace(s, werner(1.0), werner(1.0), skip).S;
  r.formula_gap = std::abs(s_paper - s_trace);

  const PqCell cell = classify_pq(p, q, prime.Sprime, s, skip);
  r.pq_threshold = pq_threshold(prime.Sprime);
  r.violates_paper = cell.violates_paper;
  r.violates_trace = cell.violates_trace;
  r.ab_entangled = cell.ab_entangled;
  r.bc_entangled = cell.bc_entangled;
  return r;
}

PqCell classify_pq(double p, double q, double sprime, const MeasurementStrategy& strategy,
                   Validation validation) {
  require_unit_interval(p, "p");
  require_unit_interval(q, "q");
  PqCell c;
  c.p = p;
  c.q = q;
  c.pq = p * q;
  c.violates_paper = c.pq > pq_threshold(sprime);
  c.violates_trace = eval_trace(strategy, werner(p), werner(q), validation).S > kBilocalBound;
  c.ab_entangled = p > kWernerSeparableMax;
  c.bc_entangled = q > kWernerSeparableMax;
  return c;
}

std::vector<PqCell> scan_pq(double sprime, std::size_t grid_steps,
                            const MeasurementStrategy& strategy, Validation validation) {
  if (grid_steps < 2) throw std::invalid_argument("scan grid needs at least 2 steps per axis");
  if (validation == Validation::kEnforce) validate(strategy);
  std::vector<PqCell> cells;
  cells.reserve(grid_steps * grid_steps);
  const auto denom = static_cast<double>(grid_steps - 1);
  for (std::size_t i = 0; i < grid_steps; ++i) {
    const double p = static_cast<double>(i) / denom;
    for (std::size_t j = 0; j < grid_steps; ++j) {
      const double q = static_cast<double>(j) / denom;
      cells.push_back(classify_pq(p, q, sprime, strategy, Validation::kSkip));
    }
  }
  return cells;
}

std::size_t count_mixed_violations(std::span<const PqCell> cells) {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const PqCell& c) {
    return c.violates_paper && (c.ab_entangled != c.bc_entangled);
  }));
}

}  // namespace bilocal
