#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "concav/descent.hpp"
#include "concav/error.hpp"
#include "concav/relu_bounds.hpp"
#include "oracles.hpp"

using concav::DescentConfig;
using concav::QuadraticObjective;
using concav::SymMatrix;
using concav::Vector;
namespace ct = concav::testing;

namespace {

DescentConfig config(double eta, std::size_t steps, Vector x0) {
  DescentConfig c;
  c.eta = eta;
  c.max_steps = steps;
  c.initial = std::move(x0);
  return c;
}

}  // namespace

TEST(GdStep, Examples) {
  EXPECT_EQ(concav::gd_step(Vector{1.0, 1.0}, Vector{1.0, 0.0}, 0.5), (Vector{0.5, 1.0}));
  EXPECT_EQ(concav::gd_step(Vector{2.0, -3.0}, Vector{0.0, 0.0}, 7.0), (Vector{2.0, -3.0}));
  const QuadraticObjective f(SymMatrix::identity(3));
  const Vector x{1.5, -2.0, 0.25};
  EXPECT_EQ(concav::gd_step(x, f.gradient(x), 1.0), (Vector{0.0, 0.0, 0.0}));
}

TEST(GdStep, Errors) {
  EXPECT_THROW(concav::gd_step(Vector{1.0}, Vector{1.0, 2.0}, 1.0), concav::InvalidInput);
  EXPECT_THROW(concav::gd_step(Vector{1.0}, Vector{1.0}, 0.0), concav::InvalidInput);
  EXPECT_THROW(concav::gd_step(Vector{1.0}, Vector{std::nan("")}, 1.0),
               concav::NumericalFailure);
}

TEST(RunDescent, HalfSquaredNormOneShot) {
  const QuadraticObjective f(SymMatrix::identity(2));
  const auto trace = concav::run_descent(f, config(1.0, 5, {3.0, 4.0}));
  ASSERT_EQ(trace.steps.size(), 6u);
  EXPECT_DOUBLE_EQ(trace.steps[0].loss, 12.5);
  for (std::size_t t = 1; t < 6; ++t) EXPECT_EQ(trace.steps[t].loss, 0.0);
  for (std::size_t t = 0; t < 5; ++t) EXPECT_GE(trace.steps[t].descent_gap, 0.0);
  EXPECT_TRUE(std::isnan(trace.steps.back().descent_gap));
  EXPECT_TRUE(trace.monotone);
  EXPECT_FALSE(trace.diverged);
  EXPECT_EQ(trace.gap_violations, 0u);
  EXPECT_EQ(trace.final_point, (Vector{0.0, 0.0}));
}

TEST(RunDescent, OversizedStepIsNonMonotone) {
  const QuadraticObjective f(SymMatrix::identity(1));
  const auto trace = concav::run_descent(f, config(3.0, 4, {1.0}));
  EXPECT_FALSE(trace.monotone);
  EXPECT_GT(trace.gap_violations, 0u);
  EXPECT_TRUE(trace.steps[0].monotone_so_far);
  EXPECT_FALSE(trace.steps[1].monotone_so_far);
}

TEST(RunDescent, DivergenceTruncatesTrace) {
  const concav::LambdaObjective f(
      1, [](std::span<const double> x) { return std::exp(x[0] * x[0]); },
      [](std::span<const double> x) {
        return Vector{2.0 * x[0] * std::exp(x[0] * x[0])};
      });
  const auto trace = concav::run_descent(f, config(10.0, 50, {2.0}));
  EXPECT_TRUE(trace.diverged);
  EXPECT_FALSE(trace.monotone);
  EXPECT_LT(trace.steps.size(), 51u);
}

TEST(RunDescent, GradientNormStop) {
  const QuadraticObjective f(SymMatrix::identity(2));
  auto c = config(0.5, 100, {1.0, 1.0});
  c.grad_norm_stop = 1e-3;
  const auto trace = concav::run_descent(f, c);
  EXPECT_LT(trace.steps.size(), 101u);
  EXPECT_LE(trace.steps.back().grad_norm, 1e-3);
}

TEST(RunDescent, ConfigValidation) {
  const QuadraticObjective f(SymMatrix::identity(2));
  EXPECT_THROW(concav::run_descent(f, config(0.0, 5, {1.0, 1.0})), concav::InvalidInput);
  EXPECT_THROW(concav::run_descent(f, config(1.0, 0, {1.0, 1.0})), concav::InvalidInput);
  EXPECT_THROW(concav::run_descent(f, config(1.0, 5, {1.0})), concav::InvalidInput);
  EXPECT_THROW(concav::run_descent(f, config(1.0, 5, {})), concav::InvalidInput);
}

TEST(RunDescent, Deterministic) {
  const concav::NetConfig cfg{4, 3, 50, 2};
  const auto data = concav::generate_dataset(cfg);
  const concav::ReluLoss f(data, cfg.k);
  const auto w0 = concav::initial_student(cfg);
  const auto c = config(1.0 / concav::bound_alpha2(data, cfg.k), 30,
                        Vector(w0.flat().begin(), w0.flat().end()));
  const auto a = concav::run_descent(f, c);
  const auto b = concav::run_descent(f, c);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t t = 0; t < a.steps.size(); ++t) {
    EXPECT_EQ(a.steps[t].loss, b.steps[t].loss);
    EXPECT_EQ(a.steps[t].grad_norm, b.steps[t].grad_norm);
  }
  EXPECT_EQ(a.final_point, b.final_point);
}

TEST(RunDescent, PsdQuadraticContractionBound) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t % 5;
    const SymMatrix a = ct::random_psd(n, rng, 0.5);
    const double lmax = ct::lambda_max(a);
    const double lmin = ct::lambda_min(a);
    const QuadraticObjective f(a);
    std::normal_distribution<double> g;
    Vector x0(n);
    for (double& v : x0) v = g(rng);
    const auto trace = concav::run_descent(f, config(1.0 / lmax, 1000, x0));
    EXPECT_TRUE(trace.monotone);
    const double bound =
        trace.steps[0].loss * std::pow(1.0 - lmin / lmax, 2.0 * 1000) + 1e-12;
    EXPECT_LE(trace.final_loss(), bound);
  }
}

TEST(CertificateFailures, VerifiedConcavifierGivesNonNegativeGaps) {
  const concav::NetConfig cfg{3, 2, 40, 8};
  const auto data = concav::generate_dataset(cfg);
  const concav::ReluLoss f(data, cfg.k);
  const double a2 = concav::bound_alpha2(data, cfg.k);
  const auto w0 = concav::initial_student(cfg);
  auto c = config(1.0 / a2, 60, Vector(w0.flat().begin(), w0.flat().end()));
  c.record_iterates = true;
  const auto trace = concav::run_descent(f, c);
  ASSERT_EQ(trace.iterates.size(), trace.steps.size());
  if (concav::count_certificate_failures(f, trace, a2) == 0)
    EXPECT_EQ(trace.gap_violations, 0u);
  EXPECT_TRUE(trace.monotone);
}

TEST(CertificateFailures, NeedsRecordedIterates) {
  const QuadraticObjective f(SymMatrix::identity(1));
  const auto trace = concav::run_descent(f, config(0.5, 3, {1.0}));
  EXPECT_THROW(concav::count_certificate_failures(f, trace, 1.0), concav::InvalidInput);
}

TEST(TraceIo, RoundTripIsExact) {
  const QuadraticObjective f(SymMatrix::from_rows({{2.0, 0.3}, {0.3, 1.0 / 3.0}}));
  const auto trace = concav::run_descent(f, config(0.37, 25, {1.0 / 7.0, -2.0}));
  std::stringstream ss;
  concav::write_trace(ss, trace);
  const auto back = concav::read_trace(ss);
  ASSERT_EQ(back.size(), trace.steps.size());
  for (std::size_t t = 0; t < back.size(); ++t) {
    EXPECT_EQ(back[t].step, trace.steps[t].step);
    EXPECT_EQ(back[t].loss, trace.steps[t].loss);
    EXPECT_EQ(back[t].grad_norm, trace.steps[t].grad_norm);
    if (std::isnan(trace.steps[t].descent_gap))
      EXPECT_TRUE(std::isnan(back[t].descent_gap));
    else
      EXPECT_EQ(back[t].descent_gap, trace.steps[t].descent_gap);
    EXPECT_EQ(back[t].monotone_so_far, trace.steps[t].monotone_so_far);
  }
}

TEST(TraceIo, RejectsBadHeaderAndRows) {
  std::stringstream bad_header("step,loss\n0,1\n");
  EXPECT_THROW(concav::read_trace(bad_header), concav::InvalidInput);
  std::stringstream bad_row(
      "step,loss,grad_norm,descent_gap,monotone_so_far\n0,abc,1,1,1\n");
  EXPECT_THROW(concav::read_trace(bad_row), concav::InvalidInput);
}
