#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <span>

#include "concav/sym_matrix.hpp"
#include "concav/vector_ops.hpp"

namespace concav {

/// A scalar field over R^d with an analytic gradient and, optionally, an
/// analytic Hessian.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  virtual Vector gradient(std::span<const double> x) const = 0;

  virtual bool has_hessian() const { return false; }
  /// Throws UnsupportedOperation unless has_hessian().
  virtual SymMatrix hessian(std::span<const double> x) const;
};

/// Objective assembled from callables; handy for tests and one-off functions.
class LambdaObjective final : public Objective {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradientFn = std::function<Vector(std::span<const double>)>;
  using HessianFn = std::function<SymMatrix(std::span<const double>)>;

  LambdaObjective(std::size_t dim, ValueFn value, GradientFn gradient,
                  HessianFn hessian = nullptr);

  std::size_t dimension() const override { return dim_; }
  double value(std::span<const double> x) const override { return value_(x); }
  Vector gradient(std::span<const double> x) const override {
    return gradient_(x);
  }
  bool has_hessian() const override { return static_cast<bool>(hessian_); }
  SymMatrix hessian(std::span<const double> x) const override;

 private:
  std::size_t dim_;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
};

/// f(x) = 1/2 x^T A x + b^T x
class QuadraticObjective final : public Objective {
 public:
  explicit QuadraticObjective(SymMatrix a);
  QuadraticObjective(SymMatrix a, Vector b);

  std::size_t dimension() const override { return a_.size(); }
  double value(std::span<const double> x) const override;
  Vector gradient(std::span<const double> x) const override;
  bool has_hessian() const override { return true; }
  SymMatrix hessian(std::span<const double>) const override { return a_; }

  const SymMatrix& matrix() const noexcept { return a_; }

 private:
  SymMatrix a_;
  Vector b_;
};

/// Axis-aligned box with a sampling budget.
class BoxDomain {
 public:
  BoxDomain(Vector lower, Vector upper, std::size_t budget);

  /// [lo, hi]^dim
  static BoxDomain cube(std::size_t dim, double lo, double hi,
                        std::size_t budget);

  std::size_t dimension() const noexcept { return lower_.size(); }
  std::size_t budget() const noexcept { return budget_; }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }

  double diameter() const;
  bool contains(std::span<const double> x, double slack = 0.0) const;
  Vector center() const;
  Vector sample(std::mt19937_64& rng) const;

 private:
  Vector lower_;
  Vector upper_;
  std::size_t budget_;
};

/// Central-difference step used for gradient verification.
double finite_difference_step(std::span<const double> x);

/// Central differences of f.value at x with step finite_difference_step(x).
Vector central_difference_gradient(const Objective& f,
                                   std::span<const double> x);

/// ||g_fd - g|| / max(||g||, ||g_fd||, 1e-12)
double gradient_relative_error(const Objective& f, std::span<const double> x);

}  // namespace concav
