#include "revive/cli/commands.hpp"

#include <glob.h>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "revive/errors.hpp"
#include "revive/matrix_file.hpp"
#include "revive/perturbation.hpp"
#include "revive/records.hpp"
#include "revive/safe_update.hpp"
#include "revive/simulator.hpp"
#include "revive/spectral_metrics.hpp"

namespace revive::cli {

namespace fs = std::filesystem;

namespace {

/// Raised after partial output has been flushed; carries the exit code.
struct CommandFailed {
  int code;
  std::string message;
};

class RecordSink {
 public:
  explicit RecordSink(const std::string& path) : path_(path), out_(path, std::ios::trunc) {
    if (!out_) throw FormatError(path + ": cannot open for writing");
  }

  void write(const Record& r) {
    out_ << r.to_line() << '\n';
    out_.flush();
    if (!out_) throw FormatError(path_ + ": write failed");
  }

 private:
  std::string path_;
  std::ofstream out_;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_double(const std::string& text, const char* what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw ArgumentError(std::string(what) + ": not a number: " + text);
  return v;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), GLOB_NOSORT, nullptr, &g);
  std::vector<std::string> paths;
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
  }
  ::globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH) throw ArgumentError("glob failed for pattern " + pattern);
  // Lexicographic by file name, full path as tiebreak.
  std::sort(paths.begin(), paths.end(), [](const std::string& a, const std::string& b) {
    const auto fa = fs::path(a).filename().string();
    const auto fb = fs::path(b).filename().string();
    return fa != fb ? fa < fb : a < b;
  });
  return paths;
}

Side parse_side(const std::string& s) {
  if (s == "input") return Side::input;
  if (s == "output") return Side::output;
  throw ArgumentError("--side must be input or output, got " + s);
}

std::pair<std::size_t, std::size_t> parse_group(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw ArgumentError("--group must look like g/G, got " + s);
  std::size_t g = 0, total = 0;
  const auto r1 = std::from_chars(s.data(), s.data() + slash, g);
  const auto r2 = std::from_chars(s.data() + slash + 1, s.data() + s.size(), total);
  if (r1.ec != std::errc() || r1.ptr != s.data() + slash || r2.ec != std::errc() ||
      r2.ptr != s.data() + s.size() || total == 0 || g == 0 || g > total) {
    throw ArgumentError("--group must be g/G with 1 <= g <= G, got " + s);
  }
  return {g, total};
}

// ---------------------------------------------------------------------------

struct FilterArgs {
  std::string base, delta, out, report;
  double tau = kDefaultTau;
};

int cmd_filter(const FilterArgs& a) {
  const Matrix base = read_matrix_file(a.base);
  const Matrix delta = read_matrix_file(a.delta);
  if (!base.same_shape(delta)) {
    throw ArgumentError(a.delta + ": shape " + delta.shape_string() + " does not match base " +
                        base.shape_string());
  }
  const FilterOutcome outcome = filter_update(base, delta, a.tau);
  write_matrix_file(a.out, outcome.safe_delta);
  if (!a.report.empty()) {
    RecordSink sink(a.report);
    Record r("filter", 0);
    r.set("tau", outcome.tau_used)
        .set("k_used", outcome.k_used)
        .set("removed_energy_fraction", outcome.removed_energy_fraction)
        .set("delta_norm", delta.frobenius_norm())
        .set("safe_norm", outcome.safe_delta.frobenius_norm());
    sink.write(r);
  }
  return kSuccess;
}

struct AnalyzeArgs {
  std::string baseline, snapshots, out;
  double energy_fraction = kDefaultEnergyFraction;
  std::size_t tracked = kDefaultTrackedCount;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const auto paths = expand_glob(a.snapshots);
  if (paths.empty()) throw ArgumentError("no snapshots match " + a.snapshots);
  Matrix baseline = read_matrix_file(a.baseline);
  std::vector<Matrix> snaps;
  snaps.reserve(paths.size());
  for (const auto& p : paths) {
    Matrix m = read_matrix_file(p);
    if (!m.same_shape(baseline)) {
      throw ArgumentError(p + ": shape " + m.shape_string() + " does not match baseline " + baseline.shape_string());
    }
    snaps.push_back(std::move(m));
  }
  const TrajectoryAnalyzer analyzer(std::move(baseline), a.energy_fraction, a.tracked);
  RecordSink sink(a.out);
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    Record r = report_record("analysis", analyzer.analyze(snaps[i], i + 1));
    r.set("snapshot", fs::path(paths[i]).filename().string());
    sink.write(r);
  }
  return kSuccess;
}

struct PerturbArgs {
  std::string base, side, group, epsilon, out;
  std::uint64_t seed = 0;
};

int cmd_perturb(const PerturbArgs& a, std::ostream& out) {
  const Side side = parse_side(a.side);
  const auto [g, total] = parse_group(a.group);
  const Matrix base = read_matrix_file(a.base);

  std::string eps_text = a.epsilon;
  const bool relative = !eps_text.empty() && eps_text.back() == '%';
  if (relative) eps_text.pop_back();
  double epsilon = parse_double(eps_text, "--epsilon");
  if (relative) epsilon *= base.frobenius_norm();

  const SvdFactorization basis = svd(base);
  const auto groups = energy_groups(basis, total);
  if (groups[g - 1].empty()) {
    throw ArgumentError("group " + a.group + " holds no singular directions for this spectrum");
  }
  const PerturbationSpec spec{side, groups[g - 1], epsilon, a.seed, g - 1};
  const Matrix delta = generate_perturbation(basis, spec);
  const Matrix perturbed = base + delta;
  write_matrix_file(a.out, perturbed);

  Record r("perturb", 0);
  r.set("side", a.side)
      .set("group", a.group)
      .set("group_size", groups[g - 1].size())
      .set("epsilon", epsilon)
      .set("achieved_norm", delta.frobenius_norm())
      .set("seed", a.seed);
  out << r.to_line() << '\n';
  return kSuccess;
}

struct SimulateArgs {
  std::string config, out, snapshots;
};

int cmd_simulate(const SimulateArgs& a) {
  const SimulationConfig config = parse_simulation_config(read_text(a.config));
  RecordSink sink(a.out);
  SimulationHooks hooks;
  if (!a.snapshots.empty()) {
    fs::create_directories(a.snapshots);
    hooks.on_baseline = [&](const Matrix& w0) { write_matrix_file(fs::path(a.snapshots) / "baseline.sgm", w0); };
  }
  hooks.on_round = [&](const RoundRecord& round, const Matrix& w) {
    sink.write(round_record(round));
    if (!a.snapshots.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "round_%04zu.sgm", round.report.round_index);
      write_matrix_file(fs::path(a.snapshots) / name, w);
    }
  };
  const SimulationResult result = run_simulation(config, hooks);
  if (result.failure) {
    Record r("error", result.failure->round);
    r.set("message", result.failure->message);
    sink.write(r);
    throw CommandFailed{kNumericalError, "numerical failure at round " + std::to_string(result.failure->round) +
                                             ": " + result.failure->message};
  }
  return kSuccess;
}

struct SweepArgs {
  std::string config, out;
  std::vector<double> taus;
  std::size_t threads = 0;
};

int cmd_sweep_tau(const SweepArgs& a, std::ostream& err) {
  const SimulationConfig base = parse_simulation_config(read_text(a.config));
  std::vector<double> taus;
  for (double t : a.taus) {
    if (!(t >= 0.0 && t < 1.0)) throw ArgumentError("tau must lie in [0, 1), got " + format_double(t));
    if (std::find(taus.begin(), taus.end(), t) != taus.end()) {
      err << "revive sweep-tau: warning: duplicate tau " << format_double(t) << " ignored\n";
      continue;
    }
    taus.push_back(t);
  }

  std::vector<SimulationConfig> configs;
  for (double t : taus) {
    SimulationConfig c = base;
    c.tau = t;
    c.filter_enabled = true;
    configs.push_back(c);
  }
  const auto results = run_batch(configs, a.threads);

  RecordSink sink(a.out);
  bool failed = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    Record r("sweep", res.rounds.size());
    r.set("tau", taus[i]);
    if (!res.rounds.empty()) {
      const RoundRecord& last = res.rounds.back();
      r.set("ls", last.report.ls)
          .set("ss_min_max", last.report.ss_min_max())
          .set("ss_output_min_max", last.report.ss_output_min_max())
          .set("probe_fidelity", last.probe_fidelity)
          .set("edit_retention", last.edit_retention)
          .set("k_used", last.k_used)
          .set("frobenius_distance", last.report.frobenius_distance);
    }
    if (res.failure) {
      r.set("error", res.failure->message);
      failed = true;
    }
    sink.write(r);
  }
  if (failed) throw CommandFailed{kNumericalError, "numerical failure in at least one sweep run"};
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dominant-subspace-preserving update filtering and spectral drift analysis", "revive"};
  app.require_subcommand(1);

  FilterArgs filter_args;
  auto* filter = app.add_subcommand("filter", "Remove the dominant-subspace components of an update");
  filter->add_option("--base", filter_args.base, "Current weight matrix (.sgm)")->required();
  filter->add_option("--delta", filter_args.delta, "Raw update matrix (.sgm)")->required();
  filter->add_option("--tau", filter_args.tau, "Energy threshold in [0, 1)")->required();
  filter->add_option("--out", filter_args.out, "Output path for the safe update")->required();
  filter->add_option("--report", filter_args.report, "Optional JSON-lines report");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "LS/SS drift of snapshots against a baseline");
  analyze->add_option("--baseline", analyze_args.baseline, "Baseline matrix W0 (.sgm)")->required();
  analyze->add_option("--snapshots", analyze_args.snapshots, "Glob of snapshot files")->required();
  analyze->add_option("--energy-fraction", analyze_args.energy_fraction, "LS energy fraction in (0, 1]");
  analyze->add_option("--tracked", analyze_args.tracked, "Leading directions tracked by SS");
  analyze->add_option("--out", analyze_args.out, "JSON-lines output")->required();

  PerturbArgs perturb_args;
  auto* perturb = app.add_subcommand("perturb", "Structured perturbation of one spectral energy group");
  perturb->add_option("--base", perturb_args.base, "Matrix to perturb (.sgm)")->required();
  perturb->add_option("--side", perturb_args.side, "input | output")->required();
  perturb->add_option("--group", perturb_args.group, "Energy group g/G, 1-based")->required();
  perturb->add_option("--epsilon", perturb_args.epsilon,
                      "Frobenius norm; a trailing % makes it a fraction of ||W||_F")
      ->required();
  perturb->add_option("--seed", perturb_args.seed, "Random seed")->required();
  perturb->add_option("--out", perturb_args.out, "Output path for W + perturbation")->required();

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand("simulate", "Run the synthetic sequential-editing simulator");
  simulate->add_option("--config", simulate_args.config, "JSON simulation config")->required();
  simulate->add_option("--out", simulate_args.out, "JSON-lines per-round output")->required();
  simulate->add_option("--snapshots", simulate_args.snapshots, "Directory for per-round matrix snapshots");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep-tau", "Run one simulation per energy threshold");
  sweep->add_option("--config", sweep_args.config, "JSON simulation config")->required();
  sweep->add_option("--taus", sweep_args.taus, "Comma-separated thresholds")->required()->delimiter(',');
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)");
  sweep->add_option("--out", sweep_args.out, "JSON-lines summary output")->required();

  std::string command = args.empty() ? std::string("revive") : "revive " + args.front();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << command << ": " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (filter->parsed()) return cmd_filter(filter_args);
    if (analyze->parsed()) return cmd_analyze(analyze_args);
    if (perturb->parsed()) return cmd_perturb(perturb_args, out);
    if (simulate->parsed()) return cmd_simulate(simulate_args);
    if (sweep->parsed()) return cmd_sweep_tau(sweep_args, err);
  } catch (const CommandFailed& f) {
    err << command << ": " << f.message << '\n';
    return f.code;
  } catch (const ArgumentError& e) {
    err << command << ": " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    err << command << ": " << e.what() << '\n';
    return kNumericalError;
  } catch (const fs::filesystem_error& e) {
    err << command << ": " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace revive::cli
