#include "bilocal/io.hpp"

#include "bilocal/format.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace bilocal {

namespace {

constexpr double kMatrixQuantum = 1e-15;

double quantize(double v) {
  const double r = std::round(v / kMatrixQuantum) * kMatrixQuantum;
  return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

double sig(double v) { return round_significant(v); }

template <typename Derived>
Json real_rows(const Eigen::MatrixBase<Derived>& m, double (*f)(double)) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(f(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vec_json(const Vec3& v) { return Json::array({sig(v(0)), sig(v(1)), sig(v(2))}); }

bool is_count(const Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

double number_at(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(where + ": value is not finite");
  return v;
}

Vec3 parse_vec3(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing key \"" + key + "\"");
  const Json& a = j.at(key);
  if (!a.is_array() || a.size() != 3) throw ParseError(key + ": expected an array of 3 numbers");
  Vec3 v;
  for (int k = 0; k < 3; ++k)
    v(k) = number_at(a.at(static_cast<std::size_t>(k)), key + "[" + std::to_string(k) + "]");
  return v;
}

template <int Rows, int Cols>
Eigen::Matrix<double, Rows, Cols> parse_real_matrix(const Json& a, const std::string& key) {
  if (!a.is_array() || a.size() != Rows)
    throw ParseError(key + ": expected " + std::to_string(Rows) + " rows");
  Eigen::Matrix<double, Rows, Cols> m;
  for (int i = 0; i < Rows; ++i) {
    const Json& row = a.at(static_cast<std::size_t>(i));
    if (!row.is_array() || row.size() != Cols)
      throw ParseError(key + ": row " + std::to_string(i) + " must have " +
                       std::to_string(Cols) + " entries");
    for (int c = 0; c < Cols; ++c)
      m(i, c) = number_at(row.at(static_cast<std::size_t>(c)),
                          key + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
  }
  return m;
}

Mat3 parse_mat3(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing key \"" + key + "\"");
  return parse_real_matrix<3, 3>(j.at(key), key);
}

}  // namespace

Json to_json(const TwoQubitState& rho) {
  const Matrix4c& m = rho.matrix();
  return Json{{"re", real_rows(m.real(), quantize)}, {"im", real_rows(m.imag(), quantize)}};
}

Json to_json(const BlochForm& bf) {
  return Json{{"r", Json::array({quantize(bf.r(0)), quantize(bf.r(1)), quantize(bf.r(2))})},
              {"s", Json::array({quantize(bf.s(0)), quantize(bf.s(1)), quantize(bf.s(2))})},
              {"T", real_rows(bf.T, quantize)}};
}

Json to_json(const CorrelationResult& r) {
  return Json{{"I", sig(r.I)}, {"J", sig(r.J)}, {"S", sig(r.S)}};
}

Json to_json(const WernerPrime& w) {
  return Json{{"Iprime", sig(w.Iprime)}, {"Jprime", sig(w.Jprime)}, {"Sprime", sig(w.Sprime)}};
}

Json to_json(const MeasurementStrategy& s) {
  return Json{{"x0", vec_json(s.x0)}, {"x1", vec_json(s.x1)}, {"y0", vec_json(s.y0)},
              {"y1", vec_json(s.y1)}, {"M", real_rows(s.M, sig)},  {"N", real_rows(s.N, sig)}};
}

Json to_json(const PsoConfig& c) {
  return Json{{"swarm_size", c.swarm_size}, {"iterations", c.iterations},
              {"omega", c.omega},           {"beta1", c.beta1},
              {"beta2", c.beta2},           {"vmax", c.vmax},
              {"ring_radius", c.ring_radius}, {"resamples", c.resamples},
              {"seed", c.seed}};
}

Json to_json(const AuditReport& a) {
  return Json{{"p", sig(a.p)},
              {"q", sig(a.q)},
              {"Sprime_paper", sig(a.Sprime_paper)},
              {"Iprime", sig(a.Iprime)},
              {"Jprime", sig(a.Jprime)},
              {"S_paper_at_pq", sig(a.S_paper_at_pq)},
              {"S_trace_at_pq", sig(a.S_trace_at_pq)},
              {"S_bloch_at_pq", sig(a.S_bloch_at_pq)},
              {"spectral_radius_M", sig(a.spectral_radius_M)},
              {"spectral_radius_N", sig(a.spectral_radius_N)},
              {"frobenius_M", sig(a.frobenius_M)},
              {"frobenius_N", sig(a.frobenius_N)},
              {"rank1_residual_M", sig(a.rank1_residual_M)},
              {"rank1_residual_N", sig(a.rank1_residual_N)},
              {"formula_gap", sig(a.formula_gap)},
              {"pq_threshold", sig(a.pq_threshold)},
              {"violates_paper", a.violates_paper},
              {"violates_trace", a.violates_trace},
              {"ab_entangled", a.ab_entangled},
              {"bc_entangled", a.bc_entangled}};
}

Json to_json(const PqCell& c) {
  return Json{{"p", sig(c.p)},
              {"q", sig(c.q)},
              {"pq", sig(c.pq)},
              {"violates_paper", c.violates_paper},
              {"violates_trace", c.violates_trace},
              {"ab_entangled", c.ab_entangled},
              {"bc_entangled", c.bc_entangled}};
}

Json to_json(std::span<const PqCell> cells) {
  Json out = Json::array();
  for (const auto& c : cells) out.push_back(to_json(c));
  return out;
}

MeasurementStrategy strategy_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("strategy must be a JSON object");
  MeasurementStrategy s;
  s.x0 = parse_vec3(j, "x0");
  s.x1 = parse_vec3(j, "x1");
  s.y0 = parse_vec3(j, "y0");
  s.y1 = parse_vec3(j, "y1");
  s.M = parse_mat3(j, "M");
  s.N = parse_mat3(j, "N");
  return s;
}

PsoConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("PSO config must be a JSON object");
  static const std::set<std::string> known = {"swarm_size", "iterations", "omega",
                                              "beta1",      "beta2",      "vmax",
                                              "ring_radius", "resamples", "seed"};
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw ParseError("unknown PSO config key \"" + key + "\"");

  PsoConfig c;
  const auto count = [&](const char* key, std::size_t& field) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (!is_count(v))
      throw ParseError(std::string(key) + ": expected a non-negative integer");
    field = v.get<std::size_t>();
  };
  const auto real = [&](const char* key, double& field) {
    if (j.contains(key)) field = number_at(j.at(key), key);
  };
  count("swarm_size", c.swarm_size);
  count("iterations", c.iterations);
  count("ring_radius", c.ring_radius);
  count("resamples", c.resamples);
  real("omega", c.omega);
  real("beta1", c.beta1);
  real("beta2", c.beta2);
  real("vmax", c.vmax);
  if (j.contains("seed")) {
    const Json& v = j.at("seed");
    if (!is_count(v)) throw ParseError("seed: expected a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }
  c.validate();
  return c;
}

TwoQubitState state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ParseError("state must be an object with \"re\" and \"im\" matrices");
  const Eigen::Matrix4d re = parse_real_matrix<4, 4>(j.at("re"), "re");
  const Eigen::Matrix4d im = parse_real_matrix<4, 4>(j.at("im"), "im");
  Matrix4c m;
  m.real() = re;
  m.imag() = im;
  return TwoQubitState::from_matrix(m);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string pq_cells_to_csv(std::span<const PqCell> cells) {
  const auto flag = [](bool b) { return b ? "true" : "false"; };
  std::ostringstream out;
  out << "p,q,pq,violates_paper,violates_trace,ab_entangled,bc_entangled\n";
  for (const auto& c : cells) {
    out << format_number(c.p) << ',' << format_number(c.q) << ',' << format_number(c.pq) << ','
        << flag(c.violates_paper) << ',' << flag(c.violates_trace) << ','
        << flag(c.ab_entangled) << ',' << flag(c.bc_entangled) << '\n';
  }
  return out.str();
}

}  // namespace bilocal
