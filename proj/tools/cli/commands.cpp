#include "cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "cli/experiment.hpp"
#include "cli/format.hpp"
#include "cli/oracle_check.hpp"
#include "phasync/error.hpp"
#include "phasync/lower_bound.hpp"
#include "phasync/random.hpp"

namespace phasync::cli {

namespace {

struct CommonFlags {
  std::vector<std::size_t> n{500};
  std::vector<double> p{1.0};
  std::vector<double> sigma{1.0};
  int trials = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> methods{"mle"};
  int max_iters = 200;
  double tol = 1e-12;
  int threads = 1;
  std::string out;
  std::string format = "csv";
  bool timing = false;
};

// Thrown for arguments that parse but fall outside the model's domain.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_model_flags(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--n", f.n, "Number of phases (comma list)")->delimiter(',');
  cmd.add_option("--p", f.p, "Observation probability (comma list)")->delimiter(',');
  cmd.add_option("--sigma", f.sigma, "Noise level (comma list)")->delimiter(',');
  cmd.add_option("--seed", f.seed, "Base seed");
  cmd.add_option("--out", f.out, "Output path (default stdout)");
}

void add_estimator_flags(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--max-iters", f.max_iters, "Maximum GPM iterations");
  cmd.add_option("--tol", f.tol, "Fixed-point tolerance on ||f(z) - z||_inf");
}

void add_threads_flag(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--threads", f.threads, "Worker threads")->envname("PHASYNC_THREADS");
}

// Output goes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::ios_base::failure("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return file_ != nullptr; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw std::ios_base::failure("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void validate_common(const CommonFlags& f) {
  for (std::size_t n : f.n)
    if (n < 2) throw UsageError("--n values must be >= 2");
  for (double p : f.p)
    if (!(p > 0.0 && p <= 1.0)) throw UsageError("--p values must lie in (0, 1]");
  for (double s : f.sigma)
    if (!(s >= 0.0)) throw UsageError("--sigma values must be >= 0");
  if (f.trials < 1) throw UsageError("--trials must be >= 1");
  if (f.max_iters < 1) throw UsageError("--max-iters must be >= 1");
  if (!(f.tol > 0.0)) throw UsageError("--tol must be > 0");
  if (f.threads < 1) throw UsageError("--threads must be >= 1");
}

void require_single(const CommonFlags& f, const char* command) {
  if (f.n.size() != 1 || f.p.size() != 1 || f.sigma.size() != 1) {
    throw UsageError(std::string(command) + " takes a single value for --n, --p and --sigma");
  }
}

int cmd_simulate(const CommonFlags& f, std::ostream& out, std::ostream& err) {
  validate_common(f);
  SweepSpec spec;
  spec.n = f.n;
  spec.p = f.p;
  spec.sigma = f.sigma;
  for (const std::string& m : f.methods) {
    try {
      spec.methods.push_back(parse_method(m));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  spec.trials = f.trials;
  spec.seed = f.seed;
  spec.gpm = {.max_iters = f.max_iters, .fixed_point_tol = f.tol, .track_trajectory = false};
  spec.timing = f.timing;

  const std::vector<ExperimentRecord> records = run_sweep(spec, f.threads);
  const std::vector<Summary> summaries = summarize(records);
  Sink sink(f.out, out);
  if (f.format == "json") {
    write_json(sink.stream(), records, summaries);
  } else {
    write_csv(sink.stream(), records, summaries);
  }
  sink.finish();
  if (sink.to_file()) {
    for (const Summary& s : summaries) out << summary_line(s) << '\n';
  }
  (void)err;
  return kExitOk;
}

int cmd_convergence(const CommonFlags& f, std::ostream& out) {
  validate_common(f);
  require_single(f, "convergence");
  const ModelParams params{f.n.front(), f.p.front(), f.sigma.front(), trial_seed(f.seed, 0, 0)};
  const PhaseVector truth = sample_truth(params);
  const Observation obs = sample_observation(truth, params);
  const SpectralOptions spectral{.seed = stream_seed(params.seed, Stream::kEigenStart)};
  const GpmConfig config{.max_iters = f.max_iters, .fixed_point_tol = f.tol, .track_trajectory = true};
  const EstimateResult est = gpm(obs, spectral_init(obs, spectral), config, truth);

  Sink sink(f.out, out);
  if (f.format == "json") {
    nlohmann::ordered_json doc;
    doc["n"] = params.n;
    doc["p"] = params.p;
    doc["sigma"] = params.sigma;
    doc["seed"] = params.seed;
    doc["theory_risk"] = params.theory_risk();
    doc["iterations"] = est.iterations;
    doc["converged"] = est.converged;
    doc["residual"] = est.residual;
    doc["trajectory"] = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < est.trajectory.size(); ++t) {
      doc["trajectory"].push_back({{"t", t}, {"loss", est.trajectory[t]}});
    }
    sink.stream() << doc.dump(2) << '\n';
  } else {
    sink.stream() << "t,loss\n";
    for (std::size_t t = 0; t < est.trajectory.size(); ++t) {
      sink.stream() << t << ',' << format_double(est.trajectory[t]) << '\n';
    }
  }
  sink.finish();
  return kExitOk;
}

int cmd_lowerbound(const CommonFlags& f, int quad_points, double fd_step, std::ostream& out) {
  require_single(f, "lowerbound");
  const ModelParams params{f.n.front(), f.p.front(), f.sigma.front(), f.seed};
  if (params.sigma == 0.0) {
    throw UsageError("sigma = 0: the Fisher information is infinite and the minimax bound is the trivial 0");
  }
  if (params.n < 3) throw UsageError("lowerbound needs --n >= 3");
  if (!(params.p > 0.0 && params.p <= 1.0) || !(params.sigma > 0.0)) {
    throw UsageError("--p must lie in (0, 1] and --sigma must be > 0");
  }
  if (quad_points < 100) throw UsageError("--quad-points must be >= 100");
  if (!(fd_step >= 1e-7 && fd_step <= 1e-4)) throw UsageError("--fd-step must lie in [1e-7, 1e-4]");

  const PriorDensity prior = PriorDensity::mollifier();
  const MinimaxBound bound =
      minimax_lower_bound(params, prior, {.quad_points = quad_points, .fd_step = fd_step});

  Sink sink(f.out, out);
  if (f.format == "csv") {
    sink.stream() << "pair_bound,aggregate_bound,closed_form_target,ratio,quad_points,fd_step\n"
                  << format_double(bound.pair.value) << ',' << format_double(bound.aggregate) << ','
                  << format_double(bound.closed_form_target) << ',' << format_double(bound.ratio)
                  << ',' << quad_points << ',' << format_double(fd_step) << '\n';
  } else {
    nlohmann::ordered_json doc;
    doc["pair_bound"] = bound.pair.value;
    doc["aggregate_bound"] = bound.aggregate;
    doc["closed_form_target"] = bound.closed_form_target;
    doc["ratio"] = bound.ratio;
    doc["quad_points"] = quad_points;
    doc["fd_step"] = fd_step;
    doc["n"] = params.n;
    doc["p"] = params.p;
    doc["sigma"] = params.sigma;
    doc["trace_term"] = bound.pair.trace_term;
    doc["prior_information"] = bound.pair.prior_information;
    doc["regime_warning"] = bound.pair.regime_warning;
    sink.stream() << doc.dump(2) << '\n';
  }
  sink.finish();
  return kExitOk;
}

int cmd_oracle_check(const CommonFlags& f, OracleCheckOptions options, std::ostream& out) {
  if (f.threads < 1) throw UsageError("--threads must be >= 1");
  options.seed = f.seed;
  options.threads = f.threads;
  std::vector<CheckResult> results;
  try {
    results = run_oracle_checks(options);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kGuardViolation || e.kind() == ErrorKind::kInvalidArgument) {
      throw UsageError(e.what());
    }
    throw;
  }
  Sink sink(f.out, out);
  bool all = true;
  for (const CheckResult& r : results) {
    sink.stream() << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  sink.stream() << (all ? "all checks passed" : "some checks failed") << '\n';
  sink.finish();
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase synchronization: estimators, minimax lower bound and Monte Carlo harness",
               "phasync"};
  app.require_subcommand(1);

  CommonFlags flags;
  const std::vector<std::string> formats{"csv", "json"};

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo risk sweep, one CSV row per trial");
  add_model_flags(*simulate, flags);
  add_estimator_flags(*simulate, flags);
  add_threads_flag(*simulate, flags);
  simulate->add_option("--trials", flags.trials, "Trials per grid point");
  simulate->add_option("--method", flags.methods, "spectral, gpm or mle (comma list)")->delimiter(',');
  simulate->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember(formats));
  simulate->add_flag("--timing", flags.timing, "Record wall-clock time per trial (breaks byte-identical output)");

  CLI::App* convergence = app.add_subcommand("convergence", "Per-iteration loss trajectory of one instance");
  add_model_flags(*convergence, flags);
  add_estimator_flags(*convergence, flags);
  convergence->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember(formats));

  int quad_points = 400;
  double fd_step = 1e-5;
  CLI::App* lowerbound = app.add_subcommand("lowerbound", "Numerical van Trees minimax lower bound");
  add_model_flags(*lowerbound, flags);
  lowerbound->add_option("--quad-points", quad_points, "Gauss-Legendre points per axis");
  lowerbound->add_option("--fd-step", fd_step, "Central-difference step for the prior information");
  std::string lb_format = "json";
  lowerbound->add_option("--format", lb_format, "json or csv")->check(CLI::IsMember(formats));

  OracleCheckOptions oracle_options;
  CLI::App* oracle_check = app.add_subcommand("oracle-check", "Cross-check fast paths against oracles");
  oracle_check->add_option("--checks", oracle_options.checks, "grid, jacobi, fisher (comma list)")
      ->delimiter(',');
  oracle_check->add_option("--seed", flags.seed, "Base seed");
  oracle_check->add_option("--out", flags.out, "Output path (default stdout)");
  oracle_check->add_option("--grid-n", oracle_options.grid_n, "Dimension of the grid-search instances");
  oracle_check->add_option("--grid-resolution", oracle_options.grid_resolution, "Phases per coordinate");
  oracle_check->add_option("--samples", oracle_options.fisher_samples, "Monte Carlo Fisher samples");
  add_threads_flag(*oracle_check, flags);
  oracle_check->add_flag("--inject-fault", oracle_options.inject_fault)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == simulate) return cmd_simulate(flags, out, err);
    if (active == convergence) return cmd_convergence(flags, out);
    if (active == lowerbound) {
      flags.format = lb_format;
      return cmd_lowerbound(flags, quad_points, fd_step, out);
    }
    return cmd_oracle_check(flags, oracle_options, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInvalidArgument) {
      err << "error: " << e.what() << "\n\n" << active->help();
      return kExitUsage;
    }
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace phasync::cli
