#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "concav/objective.hpp"

namespace concav {

struct DescentConfig {
  double eta = 1.0;             // fixed step size
  std::size_t max_steps = 100;  // T
  Vector initial;
  // Descent-gap tolerance is gap_rel_tol * max(1, |f(x_t)|).
  double gap_rel_tol = 1e-9;
  // Stop once ||grad f|| drops to this value; nullopt runs all T steps.
  std::optional<double> grad_norm_stop;
  bool record_iterates = false;

  void validate() const;
};

struct DescentStep {
  std::size_t step = 0;
  double loss = 0.0;
  double grad_norm = 0.0;
  // f(x_t) - f(x_{t+1}) - eta/2 ||grad f(x_t)||^2; NaN on the last row.
  double descent_gap = 0.0;
  bool monotone_so_far = true;
};

struct DescentTrace {
  double eta = 0.0;
  std::vector<DescentStep> steps;  // at most T + 1 rows
  Vector final_point;
  std::vector<Vector> iterates;    // only when record_iterates
  bool monotone = true;            // f(x_{t+1}) <= f(x_t) for every t
  bool diverged = false;
  std::size_t gap_violations = 0;  // steps with gap < -tolerance
  double min_descent_gap = 0.0;    // min gap / max(1, |f(x_t)|)

  double final_loss() const { return steps.empty() ? 0.0 : steps.back().loss; }
};

/// x - eta * grad. Throws NumericalFailure on non-finite gradient entries.
Vector gd_step(std::span<const double> x, std::span<const double> grad,
               double eta);

/// Fixed-step gradient descent recording every quantity of the descent
/// inequality f(x_{t+1}) <= f(x_t) - eta/2 ||grad f(x_t)||^2. A non-finite
/// objective truncates the trace and sets `diverged`.
DescentTrace run_descent(const Objective& f, const DescentConfig& config);

/// Runs upper_quadratic_check at level alpha on every consecutive pair of
/// recorded iterates. Returns the number of failing pairs. Requires a trace
/// produced with record_iterates.
std::size_t count_certificate_failures(const Objective& f,
                                       const DescentTrace& trace,
                                       double alpha);

/// Delimited-text trace: header "step,loss,grad_norm,descent_gap,
/// monotone_so_far" then one row per step. Doubles are written in shortest
/// round-trip form.
void write_trace(std::ostream& os, const DescentTrace& trace);
/// Reads the step rows back; lines starting with '#' are ignored.
std::vector<DescentStep> read_trace(std::istream& is);

}  // namespace concav
