#include "concav/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "concav/delimited.hpp"
#include "concav/error.hpp"

namespace concav {

namespace fs = std::filesystem;

std::string_view to_string(BoundKind b) {
  switch (b) {
    case BoundKind::kAlpha1: return "alpha1";
    case BoundKind::kAlpha2: return "alpha2";
    case BoundKind::kAlpha3: return "alpha3";
    case BoundKind::kAlpha4: return "alpha4";
    case BoundKind::kOracle: return "oracle";
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view s) {
  for (auto b : {BoundKind::kAlpha1, BoundKind::kAlpha2, BoundKind::kAlpha3,
                 BoundKind::kAlpha4, BoundKind::kOracle})
    if (s == to_string(b)) return b;
  throw InvalidInput("unknown bound '" + std::string(s) +
                     "' (expected alpha1..alpha4 or oracle)");
}

std::string_view to_string(InitKind i) {
  return i == InitKind::kGaussian ? "gaussian" : "teacher";
}

InitKind parse_init_kind(std::string_view s) {
  if (s == "gaussian") return InitKind::kGaussian;
  if (s == "teacher") return InitKind::kTeacher;
  throw InvalidInput("unknown init '" + std::string(s) +
                     "' (expected gaussian or teacher)");
}

void ExperimentSpec::validate() const {
  config.validate();
  if (scales.empty()) throw InvalidInput("at least one step scale is required");
  for (double c : scales)
    if (!(c > 0.0) || !std::isfinite(c))
      throw InvalidInput("step scales must be positive and finite");
  if (bounds.empty()) throw InvalidInput("at least one bound must be selected");
  if (reps < 1) throw InvalidInput("reps must be >= 1");
  if (steps < 1) throw InvalidInput("steps must be >= 1");
  if (oracle_budget < 1) throw InvalidInput("oracle budget must be >= 1");
}

NetConfig ExperimentSpec::run_config(std::size_t run) const {
  NetConfig c = config;
  c.seed = run_seed(run);
  return c;
}

bool ExperimentSpec::wants(BoundKind b) const {
  return std::find(bounds.begin(), bounds.end(), b) != bounds.end();
}

// ---------------------------------------------------------------------------
// spec file

namespace {

std::string trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_unsigned(std::string_view key, std::string_view s) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InvalidInput("'" + std::string(key) + "' expects a non-negative "
                       "integer, got '" + std::string(s) + "'");
  return v;
}

bool parse_bool(std::string_view key, std::string_view s) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw InvalidInput("'" + std::string(key) + "' expects a boolean, got '" +
                     std::string(s) + "'");
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("spec file line " + std::to_string(lineno) +
                         ": expected key = value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    kv[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return kv;
}

std::vector<double> parse_scale_list(std::string_view s) {
  std::vector<double> out;
  for (const auto& f : split_fields(s)) {
    const std::string t = trim(f);
    if (!t.empty()) out.push_back(parse_double(t));
  }
  if (out.empty()) throw InvalidInput("empty scale list");
  return out;
}

std::vector<BoundKind> parse_bound_list(std::string_view s) {
  std::vector<BoundKind> out;
  for (const auto& f : split_fields(s)) {
    const std::string t = trim(f);
    if (t.empty()) continue;
    const BoundKind b = parse_bound_kind(t);
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
  }
  if (out.empty()) throw InvalidInput("empty bound list");
  return out;
}

void apply_key_values(ExperimentSpec& spec,
                      const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "d") spec.config.d = parse_unsigned<std::size_t>(key, value);
    else if (key == "k") spec.config.k = parse_unsigned<std::size_t>(key, value);
    else if (key == "n") spec.config.n = parse_unsigned<std::size_t>(key, value);
    else if (key == "seed") spec.config.seed = parse_unsigned<std::uint64_t>(key, value);
    else if (key == "reps") spec.reps = parse_unsigned<std::size_t>(key, value);
    else if (key == "steps") spec.steps = parse_unsigned<std::size_t>(key, value);
    else if (key == "scales") spec.scales = parse_scale_list(value);
    else if (key == "bounds") spec.bounds = parse_bound_list(value);
    else if (key == "alpha4-variant") spec.alpha4_variant = parse_cassini_variant(value);
    else if (key == "oracle-strategy") spec.oracle_strategy = parse_oracle_strategy(value);
    else if (key == "oracle-budget") spec.oracle_budget = parse_unsigned<std::size_t>(key, value);
    else if (key == "init") spec.init = parse_init_kind(value);
    else if (key == "out") spec.out_dir = fs::path(value);
    else if (key == "no-timestamp") spec.timestamp = !parse_bool(key, value);
    else throw InvalidInput("unknown spec key '" + key + "'");
  }
}

// ---------------------------------------------------------------------------
// output helpers

namespace {

void write_timestamp(std::ostream& os, const ExperimentSpec& spec) {
  if (!spec.timestamp) return;
  const auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  os << "# generated " << buf << '\n';
}

fs::path prepare_out_dir(const ExperimentSpec& spec) {
  const fs::path dir = *spec.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create output directory '" + dir.string() +
                  "': " + ec.message());
  return dir;
}

template <class Fn>
void write_file(const fs::path& path, Fn&& body) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  body(os);
  os.flush();
  if (!os) throw IoError("write failed for '" + path.string() + "'");
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

// Empty for NaN (bound not computed).
void optional_field(CsvWriter& csv, double v) {
  if (std::isnan(v)) csv.field(std::string_view{});
  else csv.field(v);
}

void optional_field(CsvWriter& csv, const std::optional<double>& v) {
  if (v) optional_field(csv, *v);
  else csv.field(std::string_view{});
}

double read_optional(const std::string& s) {
  return s.empty() ? nan() : parse_double(s);
}

std::string scale_tag(double c) { return "c" + format_double(c); }

}  // namespace

// ---------------------------------------------------------------------------
// bounds

namespace {

BoundReport bounds_for_run(const ExperimentSpec& spec, std::size_t run) {
  const NetConfig cfg = spec.run_config(run);
  const ReluDataset data = generate_dataset(cfg);

  BoundReport r;
  r.config = cfg;
  r.alpha4_variant = spec.alpha4_variant;
  r.alpha1 = spec.wants(BoundKind::kAlpha1) ? bound_alpha1(data, cfg.k) : nan();
  // alpha2 is the reference every other bound is compared with; always
  // computed.
  r.alpha2 = bound_alpha2(data, cfg.k);
  const bool need_m = spec.wants(BoundKind::kAlpha3) ||
                      spec.wants(BoundKind::kAlpha4);
  r.alpha3 = nan();
  if (need_m) {
    const SymMatrix m = abar_gram(data, cfg.k);
    if (spec.wants(BoundKind::kAlpha3)) r.alpha3 = gershgorin_upper(m);
    if (spec.wants(BoundKind::kAlpha4) && m.size() >= 2)
      r.alpha4 = brauer_cassini_upper(m, spec.alpha4_variant);
  }
  if (spec.wants(BoundKind::kOracle)) {
    OracleOptions o;
    o.strategy = spec.oracle_strategy;
    o.budget = spec.oracle_budget;
    o.seed = cfg.seed;
    r.alpha_oracle = alpha_oracle(data, cfg.k, o);
  }
  return r;
}

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

template <class Get>
Moments moments(const std::vector<BoundReport>& runs, Get get) {
  std::vector<double> xs;
  for (const auto& r : runs) {
    const std::optional<double> v = get(r);
    if (v && !std::isnan(*v)) xs.push_back(*v);
  }
  if (xs.empty()) return {nan(), nan()};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd =
      xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
  return {mean, sd};
}

}  // namespace

BoundsResult cmd_bounds(const ExperimentSpec& spec) {
  spec.validate();
  BoundsResult res;
  for (std::size_t r = 0; r < spec.reps; ++r)
    res.runs.push_back(bounds_for_run(spec, r));

  res.mean.config = res.stddev.config = spec.config;
  res.mean.alpha4_variant = res.stddev.alpha4_variant = spec.alpha4_variant;
  auto fill = [&](auto get, auto set) {
    const Moments m = moments(res.runs, get);
    set(res.mean, m.mean);
    set(res.stddev, m.stddev);
  };
  fill([](const BoundReport& b) -> std::optional<double> { return b.alpha1; },
       [](BoundReport& b, double v) { b.alpha1 = v; });
  fill([](const BoundReport& b) -> std::optional<double> { return b.alpha2; },
       [](BoundReport& b, double v) { b.alpha2 = v; });
  fill([](const BoundReport& b) -> std::optional<double> { return b.alpha3; },
       [](BoundReport& b, double v) { b.alpha3 = v; });
  fill([](const BoundReport& b) { return b.alpha4; },
       [](BoundReport& b, double v) {
         if (!std::isnan(v)) b.alpha4 = v;
       });
  fill([](const BoundReport& b) { return b.alpha_oracle; },
       [](BoundReport& b, double v) {
         if (!std::isnan(v)) b.alpha_oracle = v;
       });

  if (spec.out_dir) {
    const fs::path dir = prepare_out_dir(spec);
    write_file(dir / "bounds.csv",
               [&](std::ostream& os) { write_bound_table(os, spec, res); });
  }
  return res;
}

void write_bound_table(std::ostream& os, const ExperimentSpec& spec,
                       const BoundsResult& result) {
  write_timestamp(os, spec);
  CsvWriter csv(os);
  for (auto h : {"row", "seed", "d", "k", "n", "alpha1", "alpha2", "alpha3",
                 "alpha4", "alpha4_variant", "oracle"})
    csv.field(std::string_view(h));
  csv.end_row();

  auto row = [&](std::string_view label, const BoundReport& r, bool with_seed) {
    csv.field(label);
    if (with_seed) csv.field(static_cast<unsigned long long>(r.config.seed));
    else csv.field(std::string_view{});
    csv.field(static_cast<unsigned long long>(r.config.d))
        .field(static_cast<unsigned long long>(r.config.k))
        .field(static_cast<unsigned long long>(r.config.n));
    optional_field(csv, r.alpha1);
    optional_field(csv, r.alpha2);
    optional_field(csv, r.alpha3);
    optional_field(csv, r.alpha4);
    csv.field(to_string(r.alpha4_variant));
    optional_field(csv, r.alpha_oracle);
    csv.end_row();
  };
  for (std::size_t i = 0; i < result.runs.size(); ++i)
    row(std::to_string(i), result.runs[i], true);
  row("mean", result.mean, false);
  row("stddev", result.stddev, false);
}

std::vector<BoundReport> read_bound_table(std::istream& is) {
  std::string line;
  if (!next_data_line(is, line)) throw InvalidInput("bound table: no header");
  if (line != "row,seed,d,k,n,alpha1,alpha2,alpha3,alpha4,alpha4_variant,oracle")
    throw InvalidInput("bound table: unexpected header '" + line + "'");
  std::vector<BoundReport> out;
  while (next_data_line(is, line)) {
    const auto f = split_fields(line);
    if (f.size() != 11) throw InvalidInput("bound table: malformed row");
    if (f[0] == "mean" || f[0] == "stddev") continue;
    BoundReport r;
    r.config.seed = std::stoull(f[1]);
    r.config.d = std::stoull(f[2]);
    r.config.k = std::stoull(f[3]);
    r.config.n = std::stoull(f[4]);
    r.alpha1 = read_optional(f[5]);
    r.alpha2 = read_optional(f[6]);
    r.alpha3 = read_optional(f[7]);
    if (!f[8].empty()) r.alpha4 = parse_double(f[8]);
    r.alpha4_variant = parse_cassini_variant(f[9]);
    if (!f[10].empty()) r.alpha_oracle = parse_double(f[10]);
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// train / scale-sweep

namespace {

Weights starting_point(const ExperimentSpec& spec, const NetConfig& cfg,
                       const ReluDataset& data) {
  return spec.init == InitKind::kTeacher ? data.teacher()
                                         : initial_student(cfg);
}

TrainRun descend(const ReluDataset& data, const NetConfig& cfg,
                 const Weights& w0, std::size_t steps, std::string label,
                 double alpha, double scale) {
  if (!(alpha > 0.0))
    throw NumericalFailure("concavifier '" + label +
                           "' is not positive; cannot derive a step size");
  const ReluLoss f(data, cfg.k);
  DescentConfig dc;
  dc.eta = scale / alpha;
  dc.max_steps = steps;
  dc.initial.assign(w0.flat().begin(), w0.flat().end());

  TrainRun run;
  run.seed = cfg.seed;
  run.label = std::move(label);
  run.alpha = alpha;
  run.scale = scale;
  run.trace = run_descent(f, dc);
  return run;
}

void write_traces(const fs::path& dir, const std::string& prefix,
                  const std::vector<TrainRun>& runs) {
  for (const auto& run : runs) {
    const fs::path p = dir / (prefix + "_seed" + std::to_string(run.seed) +
                              "_" + run.label + ".csv");
    write_file(p, [&](std::ostream& os) { write_trace(os, run.trace); });
  }
}

}  // namespace

TrainResult cmd_train(const ExperimentSpec& spec) {
  spec.validate();
  TrainResult res;
  for (std::size_t r = 0; r < spec.reps; ++r) {
    const NetConfig cfg = spec.run_config(r);
    const ReluDataset data = generate_dataset(cfg);
    const Weights w0 = starting_point(spec, cfg, data);

    std::optional<SymMatrix> m;
    for (BoundKind b : spec.bounds) {
      double alpha = 0.0;
      switch (b) {
        case BoundKind::kAlpha1: alpha = bound_alpha1(data, cfg.k); break;
        case BoundKind::kAlpha2: alpha = bound_alpha2(data, cfg.k); break;
        case BoundKind::kAlpha3:
          if (!m) m = abar_gram(data, cfg.k);
          alpha = gershgorin_upper(*m);
          break;
        case BoundKind::kAlpha4:
          if (!m) m = abar_gram(data, cfg.k);
          if (m->size() < 2) continue;
          alpha = brauer_cassini_upper(*m, spec.alpha4_variant);
          break;
        case BoundKind::kOracle: {
          OracleOptions o;
          o.strategy = spec.oracle_strategy;
          o.budget = spec.oracle_budget;
          o.seed = cfg.seed;
          alpha = alpha_oracle(data, cfg.k, o);
          break;
        }
      }
      res.runs.push_back(descend(data, cfg, w0, spec.steps,
                                 std::string(to_string(b)), alpha, 1.0));
    }
  }

  if (spec.out_dir) {
    const fs::path dir = prepare_out_dir(spec);
    write_traces(dir, "train", res.runs);
    write_file(dir / "train_summary.csv",
               [&](std::ostream& os) { write_run_summary(os, spec, res.runs); });
  }
  return res;
}

SweepResult cmd_scale_sweep(const ExperimentSpec& spec) {
  spec.validate();
  SweepResult res;
  for (double c : spec.scales) res.summary.push_back({c, 0, 0});

  for (std::size_t r = 0; r < spec.reps; ++r) {
    const NetConfig cfg = spec.run_config(r);
    const ReluDataset data = generate_dataset(cfg);
    const Weights w0 = starting_point(spec, cfg, data);
    const double a2 = bound_alpha2(data, cfg.k);
    for (std::size_t s = 0; s < spec.scales.size(); ++s) {
      const double c = spec.scales[s];
      TrainRun run = descend(data, cfg, w0, spec.steps, scale_tag(c), a2, c);
      auto& row = res.summary[s];
      ++row.runs;
      if (!run.trace.monotone) ++row.non_monotone;
      res.runs.push_back(std::move(run));
    }
  }

  if (spec.out_dir) {
    const fs::path dir = prepare_out_dir(spec);
    write_traces(dir, "sweep", res.runs);
    write_file(dir / "sweep_runs.csv",
               [&](std::ostream& os) { write_run_summary(os, spec, res.runs); });
    write_file(dir / "sweep_summary.csv", [&](std::ostream& os) {
      write_sweep_summary(os, spec, res.summary);
    });
  }
  return res;
}

void write_run_summary(std::ostream& os, const ExperimentSpec& spec,
                       const std::vector<TrainRun>& runs) {
  write_timestamp(os, spec);
  CsvWriter csv(os);
  for (auto h : {"seed", "label", "alpha", "scale", "eta", "final_loss",
                 "monotone", "gap_violations", "min_descent_gap", "diverged"})
    csv.field(std::string_view(h));
  csv.end_row();
  for (const auto& r : runs) {
    csv.field(static_cast<unsigned long long>(r.seed))
        .field(r.label)
        .field(r.alpha)
        .field(r.scale)
        .field(r.trace.eta)
        .field(r.trace.final_loss())
        .field(r.trace.monotone)
        .field(static_cast<unsigned long long>(r.trace.gap_violations))
        .field(r.trace.min_descent_gap)
        .field(r.trace.diverged);
    csv.end_row();
  }
}

void write_sweep_summary(std::ostream& os, const ExperimentSpec& spec,
                         const std::vector<SweepSummaryRow>& rows) {
  write_timestamp(os, spec);
  CsvWriter csv(os);
  csv.field("scale").field("runs").field("non_monotone").field("fraction");
  csv.end_row();
  for (const auto& r : rows) {
    csv.field(r.scale)
        .field(static_cast<unsigned long long>(r.runs))
        .field(static_cast<unsigned long long>(r.non_monotone))
        .field(r.fraction());
    csv.end_row();
  }
}

// ---------------------------------------------------------------------------
// oracle

std::vector<OracleRow> cmd_oracle(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<OracleRow> rows;
  for (std::size_t r = 0; r < spec.reps; ++r) {
    const NetConfig cfg = spec.run_config(r);
    const ReluDataset data = generate_dataset(cfg);
    OracleOptions o;
    o.strategy = spec.oracle_strategy;
    o.budget = spec.oracle_budget;
    o.seed = cfg.seed;
    OracleRow row;
    row.seed = cfg.seed;
    row.report = compute_bounds(data, cfg, spec.alpha4_variant, o);
    rows.push_back(std::move(row));
  }

  if (spec.out_dir) {
    const fs::path dir = prepare_out_dir(spec);
    write_file(dir / "oracle.csv",
               [&](std::ostream& os) { write_oracle_table(os, spec, rows); });
  }
  return rows;
}

void write_oracle_table(std::ostream& os, const ExperimentSpec& spec,
                        const std::vector<OracleRow>& rows) {
  write_timestamp(os, spec);
  CsvWriter csv(os);
  for (auto h : {"row", "seed", "d", "k", "n", "strategy", "oracle", "alpha1",
                 "alpha2", "alpha3", "alpha4", "oracle_over_alpha2"})
    csv.field(std::string_view(h));
  csv.end_row();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].report;
    csv.field(static_cast<unsigned long long>(i))
        .field(static_cast<unsigned long long>(rows[i].seed))
        .field(static_cast<unsigned long long>(r.config.d))
        .field(static_cast<unsigned long long>(r.config.k))
        .field(static_cast<unsigned long long>(r.config.n))
        .field(to_string(spec.oracle_strategy))
        .field(*r.alpha_oracle)
        .field(r.alpha1)
        .field(r.alpha2)
        .field(r.alpha3);
    optional_field(csv, r.alpha4);
    csv.field(rows[i].ratio());
    csv.end_row();
  }
}

}  // namespace concav
