#include "urel/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "urel/bounds.hpp"
#include "urel/ensembles.hpp"
#include "urel/oscillator.hpp"

namespace urel::cli {

namespace {

constexpr double kOrderingTol = 1e-10;

Eigen::Index effective_rank(const RunConfig& c) {
  return c.rank == 0 ? c.dim : c.rank;
}

io::Record config_record(const RunConfig& c) {
  io::Record r;
  r.emplace_back("command", command_name(c.command));
  switch (c.command) {
    case Command::verify_random:
    case Command::show_report:
      r.emplace_back("dim", c.dim);
      r.emplace_back("rank", static_cast<std::int64_t>(effective_rank(c)));
      if (c.command == Command::verify_random) r.emplace_back("trials", c.trials);
      r.emplace_back("seed", c.seed);
      r.emplace_back("centered", c.centered);
      break;
    case Command::oscillator: {
      r.emplace_back("beta", c.beta);
      std::string dims;
      for (auto d : c.fock_dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
      r.emplace_back("fock_dims", dims);
      break;
    }
    case Command::qubit_family:
      break;
  }
  r.emplace_back("tol", c.tol);
  return r;
}

struct Trial {
  std::uint64_t stream_seed = 0;
  UncertaintyReport report;
  VerificationResult verdict;
  bool ordered = false;
};

bool ordering_holds(const UncertaintyReport& rep) {
  const double chain[] = {rep.lhs_heisenberg, rep.lhs_schrodinger, rep.lhs_thm22,
                          rep.lhs_thm41, rep.rhs};
  for (std::size_t i = 0; i + 1 < std::size(chain); ++i) {
    const double tol = kOrderingTol * tolerance_scale(chain[i], chain[i + 1]);
    if (chain[i] > chain[i + 1] + tol) return false;
  }
  return true;
}

Trial run_trial(const RunConfig& c, std::int64_t index) {
  const auto idx = static_cast<std::uint64_t>(index);
  Rng rng = trial_rng(c.seed, idx);
  const Eigen::Index rank = effective_rank(c);
  EnsembleSpec state{c.dim, rank, c.seed ^ idx,
                     rank == 1 ? EnsembleKind::pure_state
                               : EnsembleKind::hilbert_schmidt_state};
  EnsembleSpec obs{c.dim, c.dim, c.seed ^ idx, EnsembleKind::gaussian_hermitian};
  const DensityMatrix rho = sample_density(state, rng);
  const HermitianOperator a = sample_hermitian(obs, rng);
  const HermitianOperator b = sample_hermitian(obs, rng);

  Trial t;
  t.stream_seed = c.seed ^ idx;
  t.report = evaluate_all(a, b, rho, c.centered);
  t.verdict = verify(t.report, c.tol);
  t.ordered = ordering_holds(t.report);
  return t;
}

std::vector<Trial> run_trials(const RunConfig& c) {
  std::vector<Trial> trials(static_cast<std::size_t>(c.trials));
  unsigned workers = c.threads ? c.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u,
                                 static_cast<unsigned>(std::min<std::int64_t>(c.trials, 64)));
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::int64_t i = w; i < c.trials; i += workers) {
            trials[static_cast<std::size_t>(i)] = run_trial(c, i);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return trials;
}

void append_verdict(io::Record& r, const VerificationResult& v) {
  for (const BoundCheck& c : v.checks) {
    r.emplace_back("equality_" + std::string(bound_name(c.bound)), c.equality);
  }
  r.emplace_back("pass", v.pass);
}

}  // namespace

std::string command_name(Command command) {
  switch (command) {
    case Command::verify_random: return "verify-random";
    case Command::oscillator: return "oscillator";
    case Command::qubit_family: return "qubit-family";
    case Command::show_report: return "show-report";
  }
  return "unknown";
}

void validate(const RunConfig& c) {
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw UsageError("--tol must be > 0");
  switch (c.command) {
    case Command::verify_random:
      if (c.trials < 1) throw UsageError("--trials must be >= 1");
      [[fallthrough]];
    case Command::show_report:
      if (c.dim < 1) throw UsageError("--dim must be >= 1");
      if (c.rank < 0 || c.rank > c.dim) throw UsageError("--rank must lie in [1, dim]");
      break;
    case Command::oscillator:
      if (!(c.beta > 0.0) || !std::isfinite(c.beta)) throw UsageError("--beta must be > 0");
      if (c.fock_dims.empty()) throw UsageError("--fock-dims must not be empty");
      for (std::size_t i = 0; i < c.fock_dims.size(); ++i) {
        if (c.fock_dims[i] < 4) throw UsageError("--fock-dims entries must be >= 4");
        if (i > 0 && c.fock_dims[i] <= c.fock_dims[i - 1]) {
          throw UsageError("--fock-dims must be strictly ascending");
        }
      }
      break;
    case Command::qubit_family:
      break;
  }
}

CommandResult cmd_verify_random(const RunConfig& c) {
  validate(c);
  const std::vector<Trial> trials = run_trials(c);

  CommandResult out;
  out.document.config = config_record(c);

  std::array<double, 5> min_margin;
  min_margin.fill(std::numeric_limits<double>::infinity());
  std::array<std::int64_t, 5> equality_hits{};
  std::int64_t passed = 0, ordering_violations = 0;
  double max_21_vs_h = 0.0, max_22_vs_s = 0.0;

  for (std::size_t i = 0; i < trials.size(); ++i) {
    const Trial& t = trials[i];
    io::Record row;
    row.emplace_back("trial", static_cast<std::int64_t>(i));
    row.emplace_back("stream_seed", t.stream_seed);
    row.emplace_back("dim", c.dim);
    row.emplace_back("rank", static_cast<std::int64_t>(effective_rank(c)));
    io::append_report(row, t.report);
    append_verdict(row, t.verdict);
    row.emplace_back("ordering_holds", t.ordered);
    out.document.rows.push_back(std::move(row));

    for (const BoundCheck& chk : t.verdict.checks) {
      const auto k = static_cast<std::size_t>(chk.bound);
      min_margin[k] = std::min(min_margin[k], chk.margin);
      equality_hits[k] += chk.equality ? 1 : 0;
    }
    passed += t.verdict.pass ? 1 : 0;
    ordering_violations += t.ordered ? 0 : 1;
    max_21_vs_h = std::max(max_21_vs_h,
                           std::abs(t.report.lhs_thm21 - t.report.lhs_heisenberg));
    max_22_vs_s = std::max(max_22_vs_s,
                           std::abs(t.report.lhs_thm22 - t.report.lhs_schrodinger));
  }

  io::Record& s = out.document.summary;
  s.emplace_back("trials", c.trials);
  s.emplace_back("passed", passed);
  s.emplace_back("failed", c.trials - passed);
  s.emplace_back("ordering_violations", ordering_violations);
  for (Bound b : kAllBounds) {
    s.emplace_back("min_margin_" + std::string(bound_name(b)),
                   min_margin[static_cast<std::size_t>(b)]);
  }
  for (Bound b : kAllBounds) {
    s.emplace_back("equality_count_" + std::string(bound_name(b)),
                   equality_hits[static_cast<std::size_t>(b)]);
  }
  s.emplace_back("max_abs_thm21_minus_heisenberg", max_21_vs_h);
  s.emplace_back("max_abs_thm22_minus_schrodinger", max_22_vs_s);
  const bool ok = passed == c.trials && ordering_violations == 0;
  s.emplace_back("pass", ok);
  out.exit_code = ok ? kExitPass : kExitVerificationFailure;
  return out;
}

CommandResult cmd_oscillator(const RunConfig& c) {
  validate(c);
  std::vector<Eigen::Index> dims(c.fock_dims.begin(), c.fock_dims.end());
  const auto sweep = oscillator::convergence_sweep(c.beta, dims);
  const oscillator::ClosedForms exact = oscillator::closed_forms(c.beta);

  CommandResult out;
  out.document.config = config_record(c);
  bool monotone = true;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const auto& row = sweep[i];
    io::Record r;
    r.emplace_back("dim", static_cast<std::int64_t>(row.dim));
    r.emplace_back("beta", c.beta);
    r.emplace_back("closed_mean_occupation", exact.mean_occupation);
    r.emplace_back("closed_q_var", exact.q_var);
    r.emplace_back("closed_q_skew_trace", exact.q_skew_trace);
    r.emplace_back("closed_m1_pq", exact.m1_pq);
    r.emplace_back("closed_rhs", exact.rhs);
    r.emplace_back("closed_lhs_21", exact.lhs_21);
    r.emplace_back("closed_lhs_22", exact.lhs_22);
    r.emplace_back("mean_occupation", row.mean_occupation);
    r.emplace_back("q_skew_trace", row.q_skew_trace);
    io::append_report(r, row.report);
    r.emplace_back("dev_lhs_21", row.dev_lhs_21);
    r.emplace_back("dev_lhs_22", row.dev_lhs_22);
    r.emplace_back("dev_lhs_41", row.dev_lhs_41);
    r.emplace_back("dev_rhs", row.dev_rhs);
    r.emplace_back("max_deviation", row.max_deviation());
    out.document.rows.push_back(std::move(r));
    if (i > 0 && row.max_deviation() > sweep[i - 1].max_deviation() + 1e-12) {
      monotone = false;
    }
  }

  const auto& last = sweep.back();
  const bool ok = last.max_deviation() <= c.tol;
  io::Record& s = out.document.summary;
  s.emplace_back("final_dim", static_cast<std::int64_t>(last.dim));
  s.emplace_back("final_max_deviation", last.max_deviation());
  s.emplace_back("deviation_nonincreasing", monotone);
  s.emplace_back("closed_rhs", exact.rhs);
  s.emplace_back("pass", ok);
  out.exit_code = ok ? kExitPass : kExitVerificationFailure;
  return out;
}

CommandResult cmd_qubit_family(const RunConfig& c) {
  validate(c);
  ComplexMatrix sx(2, 2), sy(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  const HermitianOperator a(sx), b(sy);

  CommandResult out;
  out.document.config = config_record(c);
  bool all_ok = true;
  std::int64_t failures = 0;
  double worst = 0.0;
  for (int k = 1; k <= 19; ++k) {
    const double p = 0.05 * k;
    ComplexMatrix r = ComplexMatrix::Zero(2, 2);
    r(0, 0) = p;
    r(1, 1) = 1.0 - p;
    const DensityMatrix rho(r);
    const UncertaintyReport rep = evaluate_all(a, b, rho, c.centered);
    const double m1_expected = 4.0 * p * (1.0 - p);
    const double dev_21 = std::abs(rep.lhs_thm21 - 1.0);
    const double dev_22 = std::abs(rep.lhs_thm22 - 1.0);
    const double dev_rhs = std::abs(rep.rhs - 1.0);
    const double dev_m1 = std::abs(rep.m1_fwd - m1_expected);
    const double dev = std::max({dev_21, dev_22, dev_rhs, dev_m1});
    const bool ok = dev <= c.tol;

    io::Record row;
    row.emplace_back("p", p);
    io::append_report(row, rep);
    row.emplace_back("m1_expected", m1_expected);
    row.emplace_back("dev_lhs_thm21", dev_21);
    row.emplace_back("dev_lhs_thm22", dev_22);
    row.emplace_back("dev_rhs", dev_rhs);
    row.emplace_back("dev_m1", dev_m1);
    row.emplace_back("pass", ok);
    out.document.rows.push_back(std::move(row));
    all_ok = all_ok && ok;
    failures += ok ? 0 : 1;
    worst = std::max(worst, dev);
  }
  out.document.summary.emplace_back("points", std::int64_t{19});
  out.document.summary.emplace_back("failures", failures);
  out.document.summary.emplace_back("max_deviation", worst);
  out.document.summary.emplace_back("pass", all_ok);
  out.exit_code = all_ok ? kExitPass : kExitVerificationFailure;
  return out;
}

CommandResult cmd_show_report(const RunConfig& c) {
  validate(c);
  const Trial t = run_trial(c, 0);
  CommandResult out;
  out.document.config = config_record(c);
  io::Record row;
  io::append_report(row, t.report);
  append_verdict(row, t.verdict);
  out.document.rows.push_back(std::move(row));
  for (const BoundCheck& chk : t.verdict.checks) {
    out.document.summary.emplace_back("margin_" + std::string(bound_name(chk.bound)),
                                      chk.margin);
  }
  out.document.summary.emplace_back("pass", t.verdict.pass);
  out.exit_code = t.verdict.pass ? kExitPass : kExitVerificationFailure;
  return out;
}

CommandResult run(const RunConfig& config) {
  switch (config.command) {
    case Command::verify_random: return cmd_verify_random(config);
    case Command::oscillator: return cmd_oscillator(config);
    case Command::qubit_family: return cmd_qubit_family(config);
    case Command::show_report: return cmd_show_report(config);
  }
  throw UsageError("unknown command");
}

std::string render(const CommandResult& result, OutputFormat format) {
  std::ostringstream os;
  if (format == OutputFormat::json) {
    io::write_json(result.document, os);
  } else {
    io::write_csv(result.document, os);
  }
  return os.str();
}

int parse_args(int argc, const char* const* argv, RunConfig& config) {
  CLI::App app{"Mixed-state uncertainty relation bounds: sweeps and reports", "urel"};
  app.require_subcommand(1);

  std::string format = "json";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dim", config.dim, "Hilbert-space dimension");
    sub->add_option("--rank", config.rank, "Density-matrix rank (default: dim)");
    sub->add_option("--trials", config.trials, "Number of random instances");
    sub->add_option("--seed", config.seed, "Base seed; trial i uses seed ^ i");
    sub->add_option("--beta", config.beta, "Inverse temperature");
    sub->add_option("--fock-dims", config.fock_dims, "Comma-separated truncations")
        ->delimiter(',');
    sub->add_option("--tol", config.tol, "Verification tolerance");
    sub->add_option("--centered", config.centered,
                    "Center A and B in rho before evaluation (true|false)")
        ->expected(0, 1)
        ->default_str("true");
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", config.output_path, "Output path (default: stdout)");
  };

  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"verify-random", "Random-ensemble verification sweep", Command::verify_random},
      {"oscillator", "Thermal harmonic-oscillator truncation sweep", Command::oscillator},
      {"qubit-family", "sigma_x / sigma_y equality family", Command::qubit_family},
      {"show-report", "Full report for one random instance", Command::show_report},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    sub->callback([&config, cmd = s.command] { config.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  config.output_format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  return -1;
}

int main_entry(int argc, const char* const* argv) {
  RunConfig config;
  if (const int code = parse_args(argc, argv, config); code >= 0) return code;

  CommandResult result;
  try {
    result = run(config);
  } catch (const UsageError& e) {
    std::cerr << "urel: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "urel: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string text = render(result, config.output_format);
  if (config.output_path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) return kExitIo;
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    file << text;
    file.close();
    if (!file) {
      std::cerr << "urel: cannot write " << config.output_path << "\n";
      return kExitIo;
    }
  }
  return result.exit_code;
}

}  // namespace urel::cli
