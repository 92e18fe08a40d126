// concav: bound tables, descent traces, step-scale sweeps and oracle
// comparisons for one-hidden-layer ReLU regression.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "concav/error.hpp"
#include "concav/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

// Flags shared by every subcommand. Values stay as text so that they travel
// through the same parser as the file given with --spec.
struct SharedFlags {
  std::string spec_file;
  std::map<std::string, std::string> values;
  bool no_timestamp = false;
};

void add_shared_flags(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--spec", f.spec_file,
                  "key = value file; command-line flags override it");
  const std::vector<std::pair<std::string, std::string>> keyed = {
      {"d", "input dimension"},
      {"k", "hidden units"},
      {"n", "training points"},
      {"seed", "master seed; run r uses seed + r"},
      {"reps", "number of seeds"},
      {"steps", "gradient steps per run"},
      {"scales", "comma-separated step scales c (eta = c / alpha2)"},
      {"bounds", "comma-separated subset of alpha1,alpha2,alpha3,alpha4,oracle"},
      {"alpha4-variant", "standard | unhalved (alias: paper)"},
      {"oracle-strategy", "random-search | pattern-enum"},
      {"oracle-budget", "random-search draws"},
      {"init", "gaussian | teacher"},
      {"out", "directory for delimited output files"},
  };
  for (const auto& [key, help] : keyed) {
    auto* slot = &f.values[key];
    cmd->add_option("--" + key, *slot, help);
  }
  cmd->add_flag("--no-timestamp", f.no_timestamp,
                "omit the '# generated' header line");
}

concav::ExperimentSpec build_spec(CLI::App* cmd, const SharedFlags& f) {
  concav::ExperimentSpec spec;
  if (!f.spec_file.empty()) {
    std::ifstream is(f.spec_file);
    if (!is) throw concav::IoError("cannot open spec file '" + f.spec_file + "'");
    concav::apply_key_values(spec, concav::parse_key_values(is));
  }
  std::map<std::string, std::string> given;
  for (const auto& [key, value] : f.values)
    if (cmd->count("--" + key) > 0) given[key] = value;
  if (f.no_timestamp) given["no-timestamp"] = "true";
  concav::apply_key_values(spec, given);
  spec.validate();
  return spec;
}

// Console display only; files keep the exact round-trip form.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "-"; }

void print_bounds(const concav::BoundsResult& r,
                  const concav::ExperimentSpec& spec) {
  std::printf("%-8s %-20s %12s %12s %12s %12s %12s\n", "row", "seed", "alpha1",
              "alpha2", "alpha3", "alpha4", "oracle");
  auto line = [&](const std::string& row, const std::string& seed,
                  const concav::BoundReport& b) {
    auto cell = [&](concav::BoundKind k, const std::string& s) {
      return spec.wants(k) ? s : std::string("-");
    };
    std::printf("%-8s %-20s %12s %12s %12s %12s %12s\n", row.c_str(),
                seed.c_str(), cell(concav::BoundKind::kAlpha1, fmt(b.alpha1)).c_str(),
                fmt(b.alpha2).c_str(),
                cell(concav::BoundKind::kAlpha3, fmt(b.alpha3)).c_str(),
                cell(concav::BoundKind::kAlpha4, fmt(b.alpha4)).c_str(),
                cell(concav::BoundKind::kOracle, fmt(b.alpha_oracle)).c_str());
  };
  for (std::size_t i = 0; i < r.runs.size(); ++i)
    line(std::to_string(i), std::to_string(r.runs[i].config.seed), r.runs[i]);
  line("mean", "", r.mean);
  line("stddev", "", r.stddev);
}

void print_runs(const std::vector<concav::TrainRun>& runs) {
  std::printf("%-20s %-8s %12s %12s %14s %9s %6s\n", "seed", "label", "alpha",
              "eta", "final_loss", "monotone", "gaps<0");
  for (const auto& r : runs)
    std::printf("%-20llu %-8s %12s %12s %14s %9s %6zu%s\n",
                static_cast<unsigned long long>(r.seed), r.label.c_str(),
                fmt(r.alpha).c_str(), fmt(r.trace.eta).c_str(),
                fmt(r.trace.final_loss()).c_str(),
                r.trace.monotone ? "yes" : "no", r.trace.gap_violations,
                r.trace.diverged ? "  (diverged)" : "");
}

void print_sweep(const concav::SweepResult& r) {
  print_runs(r.runs);
  std::printf("\n%-8s %6s %13s %9s\n", "scale", "runs", "non_monotone",
              "fraction");
  for (const auto& s : r.summary)
    std::printf("%-8s %6zu %13zu %9s\n", fmt(s.scale).c_str(), s.runs,
                s.non_monotone, fmt(s.fraction()).c_str());
}

void print_oracle(const std::vector<concav::OracleRow>& rows) {
  std::printf("%-20s %14s %14s %14s\n", "seed", "oracle", "alpha2",
              "oracle/alpha2");
  for (const auto& r : rows)
    std::printf("%-20llu %14s %14s %14s\n",
                static_cast<unsigned long long>(r.seed),
                fmt(r.report.alpha_oracle).c_str(),
                fmt(r.report.alpha2).c_str(), fmt(r.ratio()).c_str());
}

int exit_code(concav::ErrorKind kind) {
  switch (kind) {
    case concav::ErrorKind::kNumericalFailure: return kExitNumerical;
    case concav::ErrorKind::kIo: return kExitIo;
    default: return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concavifier bounds and fixed-step gradient descent for "
               "one-hidden-layer ReLU regression"};
  app.require_subcommand(1);

  SharedFlags bounds_f, train_f, sweep_f, oracle_f;
  auto* bounds = app.add_subcommand("bounds", "alpha1..alpha4 (and oracle) per seed");
  auto* train = app.add_subcommand("train", "descent with eta = 1/alpha per bound");
  auto* sweep = app.add_subcommand("scale-sweep", "descent with eta = c/alpha2");
  auto* oracle = app.add_subcommand("oracle", "oracle estimate beside the bounds");
  add_shared_flags(bounds, bounds_f);
  add_shared_flags(train, train_f);
  add_shared_flags(sweep, sweep_f);
  add_shared_flags(oracle, oracle_f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (bounds->parsed()) {
      const auto spec = build_spec(bounds, bounds_f);
      print_bounds(concav::cmd_bounds(spec), spec);
    } else if (train->parsed()) {
      print_runs(concav::cmd_train(build_spec(train, train_f)).runs);
    } else if (sweep->parsed()) {
      print_sweep(concav::cmd_scale_sweep(build_spec(sweep, sweep_f)));
    } else if (oracle->parsed()) {
      print_oracle(concav::cmd_oracle(build_spec(oracle, oracle_f)));
    }
  } catch (const concav::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
