#include "concav/objective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "concav/error.hpp"

namespace concav {

SymMatrix Objective::hessian(std::span<const double>) const {
  throw UnsupportedOperation("objective does not provide a Hessian");
}

LambdaObjective::LambdaObjective(std::size_t dim, ValueFn value,
                                 GradientFn gradient, HessianFn hessian)
    : dim_(dim),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)) {
  if (dim_ == 0) throw InvalidInput("LambdaObjective: dimension must be >= 1");
  if (!value_ || !gradient_)
    throw InvalidInput("LambdaObjective: value and gradient are required");
}

SymMatrix LambdaObjective::hessian(std::span<const double> x) const {
  if (!hessian_) return Objective::hessian(x);
  return hessian_(x);
}

QuadraticObjective::QuadraticObjective(SymMatrix a)
    : a_(std::move(a)), b_(a_.size(), 0.0) {
  if (a_.size() == 0) throw InvalidInput("QuadraticObjective: empty matrix");
}

QuadraticObjective::QuadraticObjective(SymMatrix a, Vector b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() == 0) throw InvalidInput("QuadraticObjective: empty matrix");
  if (b_.size() != a_.size())
    throw InvalidInput("QuadraticObjective: linear term has wrong size");
}

double QuadraticObjective::value(std::span<const double> x) const {
  if (x.size() != a_.size())
    throw InvalidInput("QuadraticObjective: dimension mismatch");
  const Vector ax = a_.multiply(x);
  return 0.5 * dot(x, ax) + dot(b_, x);
}

Vector QuadraticObjective::gradient(std::span<const double> x) const {
  if (x.size() != a_.size())
    throw InvalidInput("QuadraticObjective: dimension mismatch");
  Vector g = a_.multiply(x);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += b_[i];
  return g;
}

BoxDomain::BoxDomain(Vector lower, Vector upper, std::size_t budget)
    : lower_(std::move(lower)), upper_(std::move(upper)), budget_(budget) {
  if (lower_.empty() || lower_.size() != upper_.size())
    throw InvalidInput("BoxDomain: bounds must be non-empty and equal length");
  for (std::size_t i = 0; i < lower_.size(); ++i)
    if (!(lower_[i] <= upper_[i]) || !std::isfinite(lower_[i]) ||
        !std::isfinite(upper_[i]))
      throw InvalidInput("BoxDomain: need finite lower <= upper in coordinate " +
                         std::to_string(i));
  if (budget_ < 1) throw InvalidInput("BoxDomain: budget must be >= 1");
}

BoxDomain BoxDomain::cube(std::size_t dim, double lo, double hi,
                          std::size_t budget) {
  return BoxDomain(Vector(dim, lo), Vector(dim, hi), budget);
}

double BoxDomain::diameter() const { return std::sqrt(squared_distance(lower_, upper_)); }

bool BoxDomain::contains(std::span<const double> x, double slack) const {
  if (x.size() != lower_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower_[i] - slack || x[i] > upper_[i] + slack) return false;
  return true;
}

Vector BoxDomain::center() const {
  Vector c(lower_.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = 0.5 * (lower_[i] + upper_[i]);
  return c;
}

Vector BoxDomain::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector x(lower_.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = lower_[i] + unit(rng) * (upper_[i] - lower_[i]);
  return x;
}

double finite_difference_step(std::span<const double> x) {
  return 1e-6 * std::max(1.0, norm(x));
}

Vector central_difference_gradient(const Objective& f,
                                   std::span<const double> x) {
  if (x.size() != f.dimension())
    throw InvalidInput("central_difference_gradient: dimension mismatch");
  const double h = finite_difference_step(x);
  Vector probe(x.begin(), x.end());
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = probe[i];
    probe[i] = orig + h;
    const double fp = f.value(probe);
    probe[i] = orig - h;
    const double fm = f.value(probe);
    probe[i] = orig;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double gradient_relative_error(const Objective& f, std::span<const double> x) {
  const Vector analytic = f.gradient(x);
  const Vector numeric = central_difference_gradient(f, x);
  const double denom = std::max({norm(analytic), norm(numeric), 1e-12});
  return std::sqrt(squared_distance(analytic, numeric)) / denom;
}

}  // namespace concav
