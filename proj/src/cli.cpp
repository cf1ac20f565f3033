#include "bilocal/cli.hpp"

#include "bilocal/correlations.hpp"
#include "bilocal/experiments.hpp"
#include "bilocal/format.hpp"
#include "bilocal/io.hpp"
#include "bilocal/optimizer.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace bilocal::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string strategy_path;
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iterations;
  std::optional<double> sprime;
  double p = 1.0;
  double q = 1.0;
  std::size_t steps = 101;
  bool no_project = false;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << text;
  if (!f) throw UsageError("failed writing " + path.string());
}

// Emit `text` to --out when given, else to stdout.
void emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.out_path.empty()) {
    out << text;
  } else {
    write_file(opt.out_path, text);
  }
}

void require_unit(double v, const char* flag) {
  if (!(v >= 0.0 && v <= 1.0))
    throw UsageError(std::string(flag) + " must lie in [0, 1], got " + format_number(v));
}

Validation validation_of(const Options& opt) {
  return opt.no_project ? Validation::kSkip : Validation::kEnforce;
}

MeasurementStrategy load_strategy(const std::string& path) {
  return strategy_from_json(read_json_file(path));
}

int cmd_eval(const Options& opt, std::ostream& out, std::ostream& err) {
  require_unit(opt.p, "--p");
  require_unit(opt.q, "--q");
  const MeasurementStrategy s = load_strategy(opt.strategy_path);
  const Validation v = validation_of(opt);

  const TwoQubitState rho_ab = werner(opt.p);
  const TwoQubitState rho_bc = werner(opt.q);
  const BlochForm bf_ab = bloch_decompose(rho_ab);
  const BlochForm bf_bc = bloch_decompose(rho_bc);
  const CorrelationResult trace = eval_trace(s, rho_ab, rho_bc, v);
  const CorrelationResult bloch = eval_bloch_general(s, bf_ab, bf_bc, v);
  const CorrelationResult paper = eval_paper_formula(s, bf_ab, bf_bc, v);
  const WernerPrime prime = eval_werner_prime(s, v);

  if (opt.format == "csv") {
    std::string csv = "route,I,J,S\n";
    const auto row = [&](const char* name, double I, double J, double S) {
      csv += std::string(name) + ',' + format_number(I) + ',' + format_number(J) + ',' +
             format_number(S) + '\n';
    };
    row("trace", trace.I, trace.J, trace.S);
    row("bloch_general", bloch.I, bloch.J, bloch.S);
    row("paper_formula", paper.I, paper.J, paper.S);
    row("werner_prime", prime.Iprime, prime.Jprime, prime.Sprime);
    emit(opt, csv, out);
  } else {
    const Json doc{{"p", round_significant(opt.p)},
                   {"q", round_significant(opt.q)},
                   {"trace", to_json(trace)},
                   {"bloch_general", to_json(bloch)},
                   {"paper_formula", to_json(paper)},
                   {"werner_prime", to_json(prime)},
                   {"violates_trace", trace.S > kBilocalBound},
                   {"violates_paper", paper.S > kBilocalBound}};
    emit(opt, doc.dump(2) + "\n", out);
  }
  err << "S_trace=" << format_number(trace.S) << " S_paper=" << format_number(paper.S)
      << " Sprime_paper=" << format_number(prime.Sprime) << "\n";
  return kOk;
}

int cmd_optimize(const Options& opt, std::ostream& out, std::ostream& err) {
  PsoConfig config;
  if (!opt.config_path.empty()) config = config_from_json(read_json_file(opt.config_path));
  if (opt.seed) config.seed = *opt.seed;
  if (opt.iterations) config.iterations = *opt.iterations;
  config.validate();

  const PaperExperimentResult res = run_paper_experiment(config);
  const std::string csv = trace_to_csv(res.trace);
  const double threshold = pq_threshold(res.sprime_max);
  const Json summary{{"Sprime", round_significant(res.sprime_max)},
                     {"pq_threshold", round_significant(threshold)},
                     {"best_strategy", to_json(res.best)},
                     {"config", to_json(config)}};

  if (!opt.out_path.empty()) {
    const fs::path dir(opt.out_path);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create " + dir.string() + ": " + ec.message());
    write_file(dir / "convergence.csv", csv);
    write_file(dir / "best_strategy.json", to_json(res.best).dump(2) + "\n");
  } else if (opt.format == "json") {
    out << summary.dump(2) << "\n";
  } else {
    out << csv;
  }
  err << "Sprime=" << format_number(res.sprime_max)
      << " pq_threshold=" << format_number(threshold) << "\n";
  return kOk;
}

int cmd_audit(const Options& opt, std::ostream& out, std::ostream& err) {
  require_unit(opt.p, "--p");
  require_unit(opt.q, "--q");
  if (opt.format == "csv") throw UsageError("audit only supports --format json");
  const AuditReport report = audit_reported(opt.p, opt.q);
  emit(opt, to_json(report).dump(2) + "\n", out);
  err << "Sprime_paper=" << format_number(report.Sprime_paper)
      << " formula_gap=" << format_number(report.formula_gap) << "\n";
  return kOk;
}

int cmd_scan(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.steps < 2) throw UsageError("--steps must be at least 2");
  const MeasurementStrategy s =
      opt.strategy_path.empty() ? canonical_strategy() : load_strategy(opt.strategy_path);
  const Validation v = validation_of(opt);
  const double sprime = opt.sprime ? *opt.sprime : eval_werner_prime(s, v).Sprime;
  if (!(sprime > 0.0)) throw UsageError("--sprime must be positive");

  const std::vector<PqCell> cells = scan_pq(sprime, opt.steps, s, v);
  if (opt.format == "json") {
    emit(opt, to_json(cells).dump(2) + "\n", out);
  } else {
    emit(opt, pq_cells_to_csv(cells), out);
  }
  const auto paper = std::count_if(cells.begin(), cells.end(),
                                   [](const PqCell& c) { return c.violates_paper; });
  const auto trace = std::count_if(cells.begin(), cells.end(),
                                   [](const PqCell& c) { return c.violates_trace; });
  err << "cells=" << cells.size() << " violates_paper=" << paper << " violates_trace=" << trace
      << " separable_entangled_violations=" << count_mixed_violations(cells) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bilocal inequality evaluation, optimization and audit"};
  app.name("bilocal");
  app.require_subcommand(1);

  Options opt;
  const auto add_format = [&](CLI::App* sub, const std::string& def) {
    opt.format = "";
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_str(def);
  };
  const auto add_pq = [&](CLI::App* sub) {
    sub->add_option("--p", opt.p, "Werner visibility of the Alice-Bob source")->capture_default_str();
    sub->add_option("--q", opt.q, "Werner visibility of the Bob-Charles source")->capture_default_str();
  };

  auto* eval = app.add_subcommand("eval", "Evaluate I, J, S for a strategy on Werner sources");
  eval->add_option("--strategy", opt.strategy_path, "Strategy JSON file")->required();
  add_pq(eval);
  eval->add_option("--out", opt.out_path, "Output file (default stdout)");
  add_format(eval, "json");
  eval->add_flag("--no-project-audit", opt.no_project,
                 "Evaluate as given without enforcing measurement constraints");

  auto* optimize = app.add_subcommand("optimize", "Maximize S' with particle swarm optimization");
  optimize->add_option("--config", opt.config_path, "PSO config JSON file");
  optimize->add_option("--seed", opt.seed, "RNG seed (overrides config)");
  optimize->add_option("--iterations", opt.iterations, "Iterations (overrides config)");
  optimize->add_option("--out", opt.out_path,
                       "Directory for convergence.csv and best_strategy.json");
  add_format(optimize, "csv");

  auto* audit = app.add_subcommand("audit", "Audit the published optimum");
  add_pq(audit);
  audit->add_option("--out", opt.out_path, "Output file (default stdout)");
  add_format(audit, "json");

  auto* scan = app.add_subcommand("scan", "Classify a (p, q) grid");
  scan->add_option("--sprime", opt.sprime, "S' for the threshold rule (default: from strategy)");
  scan->add_option("--steps", opt.steps, "Grid points per axis")->capture_default_str();
  scan->add_option("--strategy", opt.strategy_path, "Strategy JSON (default canonical)");
  scan->add_option("--out", opt.out_path, "Output file (default stdout)");
  add_format(scan, "csv");
  scan->add_flag("--no-project-audit", opt.no_project,
                 "Evaluate as given without enforcing measurement constraints");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (eval->parsed()) {
      if (opt.format.empty()) opt.format = "json";
      return cmd_eval(opt, out, err);
    }
    if (optimize->parsed()) {
      if (opt.format.empty()) opt.format = "csv";
      return cmd_optimize(opt, out, err);
    }
    if (audit->parsed()) {
      if (opt.format.empty()) opt.format = "json";
      return cmd_audit(opt, out, err);
    }
    if (opt.format.empty()) opt.format = "csv";
    return cmd_scan(opt, out, err);
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << "\n";
    return kConstraintViolation;
  } catch (const std::exception& e) {
    // Parse errors, invalid configs, out-of-range parameters, I/O failures.
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace bilocal::cli
