#include "concav/descent.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "concav/concavifier.hpp"
#include "concav/delimited.hpp"
#include "concav/error.hpp"

namespace concav {

void DescentConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw InvalidInput("DescentConfig: step size must be positive and finite");
  if (max_steps < 1) throw InvalidInput("DescentConfig: max_steps must be >= 1");
  if (initial.empty()) throw InvalidInput("DescentConfig: empty initial point");
}

Vector gd_step(std::span<const double> x, std::span<const double> grad,
               double eta) {
  require_same_size(x, grad, "gd_step: point and gradient differ in size");
  if (!(eta > 0.0)) throw InvalidInput("gd_step: step size must be positive");
  if (!all_finite(grad))
    throw NumericalFailure("gd_step: gradient has non-finite entries");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - eta * grad[i];
  return out;
}

DescentTrace run_descent(const Objective& f, const DescentConfig& config) {
  config.validate();
  if (config.initial.size() != f.dimension())
    throw InvalidInput("run_descent: initial point has wrong dimension");

  DescentTrace trace;
  trace.eta = config.eta;
  trace.min_descent_gap = std::numeric_limits<double>::infinity();
  trace.steps.reserve(config.max_steps + 1);

  Vector x = config.initial;
  double fx = f.value(x);
  if (!std::isfinite(fx))
    throw NumericalFailure("run_descent: objective is not finite at x0");
  if (config.record_iterates) trace.iterates.push_back(x);

  for (std::size_t t = 0;; ++t) {
    const Vector g = f.gradient(x);
    const double gnorm = norm(g);

    DescentStep row;
    row.step = t;
    row.loss = fx;
    row.grad_norm = gnorm;
    row.descent_gap = std::numeric_limits<double>::quiet_NaN();
    row.monotone_so_far = trace.monotone;

    const bool last = t == config.max_steps ||
                      (config.grad_norm_stop && gnorm <= *config.grad_norm_stop);
    if (last || !all_finite(g)) {
      if (!all_finite(g)) trace.diverged = true;
      trace.steps.push_back(row);
      break;
    }

    Vector next = gd_step(x, g, config.eta);
    const double fnext = f.value(next);
    if (!std::isfinite(fnext)) {
      trace.diverged = true;
      trace.monotone = false;
      trace.steps.push_back(row);
      break;
    }

    const double gap = fx - fnext - 0.5 * config.eta * gnorm * gnorm;
    const double scale = std::max(1.0, std::abs(fx));
    row.descent_gap = gap;
    if (gap < -config.gap_rel_tol * scale) ++trace.gap_violations;
    trace.min_descent_gap = std::min(trace.min_descent_gap, gap / scale);
    trace.steps.push_back(row);

    if (fnext > fx) trace.monotone = false;
    x = std::move(next);
    fx = fnext;
    if (config.record_iterates) trace.iterates.push_back(x);
    // The next row's monotone_so_far reflects every step taken so far.
  }

  if (!std::isfinite(trace.min_descent_gap)) trace.min_descent_gap = 0.0;
  trace.final_point = std::move(x);
  return trace;
}

std::size_t count_certificate_failures(const Objective& f,
                                       const DescentTrace& trace,
                                       double alpha) {
  if (trace.iterates.size() < 2 && trace.steps.size() > 1)
    throw InvalidInput(
        "count_certificate_failures: trace has no recorded iterates");
  std::size_t failures = 0;
  for (std::size_t t = 0; t + 1 < trace.iterates.size(); ++t)
    if (!upper_quadratic_check(f, trace.iterates[t], trace.iterates[t + 1],
                               alpha)
             .holds)
      ++failures;
  return failures;
}

void write_trace(std::ostream& os, const DescentTrace& trace) {
  CsvWriter csv(os);
  csv.field("step").field("loss").field("grad_norm").field("descent_gap")
      .field("monotone_so_far");
  csv.end_row();
  for (const auto& s : trace.steps) {
    csv.field(static_cast<unsigned long long>(s.step))
        .field(s.loss)
        .field(s.grad_norm)
        .field(s.descent_gap)
        .field(s.monotone_so_far);
    csv.end_row();
  }
}

std::vector<DescentStep> read_trace(std::istream& is) {
  std::string line;
  if (!next_data_line(is, line)) throw InvalidInput("trace: missing header");
  if (line != "step,loss,grad_norm,descent_gap,monotone_so_far")
    throw InvalidInput("trace: unexpected header '" + line + "'");
  std::vector<DescentStep> out;
  while (next_data_line(is, line)) {
    const auto f = split_fields(line);
    if (f.size() != 5) throw InvalidInput("trace: malformed row '" + line + "'");
    DescentStep s;
    s.step = std::stoull(f[0]);
    s.loss = parse_double(f[1]);
    s.grad_norm = parse_double(f[2]);
    s.descent_gap = parse_double(f[3]);
    if (f[4] != "0" && f[4] != "1")
      throw InvalidInput("trace: monotone flag must be 0 or 1");
    s.monotone_so_far = f[4] == "1";
    out.push_back(s);
  }
  return out;
}

}  // namespace concav
