#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "concav/descent.hpp"
#include "concav/relu_bounds.hpp"

namespace concav {

enum class BoundKind { kAlpha1, kAlpha2, kAlpha3, kAlpha4, kOracle };

std::string_view to_string(BoundKind b);
BoundKind parse_bound_kind(std::string_view s);

enum class InitKind { kGaussian, kTeacher };

std::string_view to_string(InitKind i);
InitKind parse_init_kind(std::string_view s);

/// One experiment grid. Run r uses seed `config.seed + r`.
struct ExperimentSpec {
  NetConfig config{10, 5, 1000, 0};
  std::vector<double> scales{0.5, 1.0, 2.0, 4.0};
  std::vector<BoundKind> bounds{BoundKind::kAlpha1, BoundKind::kAlpha2,
                                BoundKind::kAlpha3, BoundKind::kAlpha4};
  std::size_t reps = 1;
  std::size_t steps = 100;
  CassiniVariant alpha4_variant = CassiniVariant::kStandard;
  OracleStrategy oracle_strategy = OracleStrategy::kRandomSearch;
  std::size_t oracle_budget = 10000;
  InitKind init = InitKind::kGaussian;
  std::optional<std::filesystem::path> out_dir;
  bool timestamp = true;

  void validate() const;
  std::uint64_t run_seed(std::size_t run) const { return config.seed + run; }
  NetConfig run_config(std::size_t run) const;
  bool wants(BoundKind b) const;
};

/// Parses a flat "key = value" file ('#' comments, blank lines allowed).
/// Keys mirror the long CLI flags without dashes: d, k, n, seed, reps, steps,
/// scales, bounds, alpha4-variant, oracle-strategy, oracle-budget, init, out,
/// no-timestamp.
std::map<std::string, std::string> parse_key_values(std::istream& is);

/// Applies parsed keys onto `spec`. Unknown keys throw InvalidInput.
void apply_key_values(ExperimentSpec& spec,
                      const std::map<std::string, std::string>& kv);

std::vector<double> parse_scale_list(std::string_view s);
std::vector<BoundKind> parse_bound_list(std::string_view s);

// ---------------------------------------------------------------------------
// bounds

struct BoundsResult {
  std::vector<BoundReport> runs;
  BoundReport mean;
  BoundReport stddev;
};

BoundsResult cmd_bounds(const ExperimentSpec& spec);

/// Bound table: header "row,seed,d,k,n,alpha1,alpha2,alpha3,alpha4,
/// alpha4_variant,oracle"; "row" is the run index, "mean" or "stddev".
/// Unselected bounds are written as empty fields.
void write_bound_table(std::ostream& os, const ExperimentSpec& spec,
                       const BoundsResult& result);
/// Returns the per-run rows (summary rows are skipped).
std::vector<BoundReport> read_bound_table(std::istream& is);

// ---------------------------------------------------------------------------
// train / scale-sweep

struct TrainRun {
  std::uint64_t seed = 0;
  std::string label;  // bound name or scale tag
  double alpha = 0.0; // concavifier used to set the step
  double scale = 1.0; // eta = scale / alpha
  DescentTrace trace;
};

struct TrainResult {
  std::vector<TrainRun> runs;
};

/// For each seed and each selected bound b, descent with eta = 1 / alpha_b.
TrainResult cmd_train(const ExperimentSpec& spec);

struct SweepSummaryRow {
  double scale = 0.0;
  std::size_t runs = 0;
  std::size_t non_monotone = 0;
  double fraction() const {
    return runs == 0 ? 0.0 : static_cast<double>(non_monotone) / runs;
  }
};

struct SweepResult {
  std::vector<TrainRun> runs;
  std::vector<SweepSummaryRow> summary;
};

/// For each seed and scale c, descent with eta = c / alpha_2.
SweepResult cmd_scale_sweep(const ExperimentSpec& spec);

void write_run_summary(std::ostream& os, const ExperimentSpec& spec,
                       const std::vector<TrainRun>& runs);
void write_sweep_summary(std::ostream& os, const ExperimentSpec& spec,
                         const std::vector<SweepSummaryRow>& rows);

// ---------------------------------------------------------------------------
// oracle

struct OracleRow {
  std::uint64_t seed = 0;
  BoundReport report;  // alpha_oracle always set
  double ratio() const { return *report.alpha_oracle / report.alpha2; }
};

std::vector<OracleRow> cmd_oracle(const ExperimentSpec& spec);

void write_oracle_table(std::ostream& os, const ExperimentSpec& spec,
                        const std::vector<OracleRow>& rows);

}  // namespace concav
